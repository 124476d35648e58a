#pragma once

#include <compare>
#include <cstdint>
#include <numeric>
#include <stdexcept>

namespace d2d {

using Int = std::int64_t;

// Largest accepted grid dimension. Keeps every invariant polynomial
// (degree 2 in i, j with coefficients below n) inside int64.
inline constexpr Int kMaxDim = 1 << 15;

struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NoInvariantError : std::runtime_error {
  NoInvariantError() : std::runtime_error("pattern has no hopping invariant") {}
};

struct FrameDependentError : std::runtime_error {
  FrameDependentError()
      : std::runtime_error(
            "per-frame map depends on the frame number; use position_at") {}
};

// Canonical residue in [0, q), correct for negative x.
inline Int mod_reduce(Int x, Int q) {
  if (q <= 0) throw ValidationError("modulus must be positive");
  Int r = x % q;
  return r < 0 ? r + q : r;
}

inline Int gcd(Int a, Int b) { return std::gcd(a, b); }

// Inverse of a modulo q. Throws ValidationError if gcd(a, q) != 1.
Int mod_inverse(Int a, Int q);

// Discovery frame dimensions: m frequency channels x n subframes.
struct GridShape {
  Int m = 0;
  Int n = 0;
  bool operator==(const GridShape&) const = default;
};

// Throws ValidationError unless 1 <= m, n <= kMaxDim.
void validate_shape(const GridShape& s);

// One time-frequency coordinate: channel i, subframe j.
struct Resource {
  Int i = 0;
  Int j = 0;
  bool operator==(const Resource&) const = default;
  auto operator<=>(const Resource&) const = default;  // lexicographic (i, j)
};

// Integer residue carried along a trajectory, with its modulus.
struct InvariantValue {
  Int value = 0;
  Int modulus = 1;
  bool operator==(const InvariantValue&) const = default;
  auto operator<=>(const InvariantValue&) const = default;
};

}  // namespace d2d
