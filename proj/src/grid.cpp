#include "d2d/grid.hpp"

#include <string>

namespace d2d {

Int mod_inverse(Int a, Int q) {
  if (q <= 0) throw ValidationError("modulus must be positive");
  a = mod_reduce(a, q);
  // extended Euclid on (a, q)
  Int r0 = a, r1 = q;
  Int s0 = 1, s1 = 0;
  while (r1 != 0) {
    Int quot = r0 / r1;
    Int r2 = r0 - quot * r1;
    Int s2 = s0 - quot * s1;
    r0 = r1;
    r1 = r2;
    s0 = s1;
    s1 = s2;
  }
  if (r0 != 1)
    throw ValidationError("no modular inverse: " + std::to_string(a) +
                          " is not coprime to " + std::to_string(q));
  return mod_reduce(s0, q);
}

void validate_shape(const GridShape& s) {
  if (s.m < 1) throw ValidationError("m must be positive");
  if (s.n < 1) throw ValidationError("n must be positive");
  if (s.m > kMaxDim || s.n > kMaxDim)
    throw ValidationError("grid dimension exceeds supported maximum " +
                          std::to_string(kMaxDim));
}

}  // namespace d2d
