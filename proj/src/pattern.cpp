#include "d2d/pattern.hpp"

#include <algorithm>
#include <cctype>

namespace d2d {

std::string_view family_name(Family f) {
  switch (f) {
    case Family::QC: return "qc";
    case Family::A1: return "a1";
    case Family::A2: return "a2";
    case Family::B1: return "b1";
    case Family::B2: return "b2";
  }
  return "?";
}

std::optional<Family> family_from_name(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
  if (lower == "qc") return Family::QC;
  if (lower == "a1") return Family::A1;
  if (lower == "a2") return Family::A2;
  if (lower == "b1") return Family::B1;
  if (lower == "b2") return Family::B2;
  return std::nullopt;
}

Pattern Pattern::make(PatternSpec spec) {
  validate_shape(spec.shape);
  const Int m = spec.shape.m;
  const Int n = spec.shape.n;

  switch (spec.family) {
    case Family::QC:
      if (m > n) throw ValidationError("m must not exceed n");
      if (spec.c < 0 || spec.c >= m)
        throw ValidationError("c out of range [0, m)");
      break;
    case Family::A1:
      if (m % 2 == 0) throw ValidationError("m must be odd");
      if (m < 3) throw ValidationError("m must be at least 3");
      if (n % m != 0) throw ValidationError("m must divide n");
      // m | n, so reducing v mod n preserves its residue mod m and the map.
      spec.u = mod_reduce(spec.u, m);
      spec.v = mod_reduce(spec.v, n);
      if (gcd(spec.u, m) != 1) throw ValidationError("u not coprime to m");
      if (gcd(mod_reduce(spec.u - 1, m), m) != 1)
        throw ValidationError("u-1 not coprime to m");
      if (gcd(mod_reduce(spec.v, m), m) != 1)
        throw ValidationError("v not coprime to m");
      break;
    case Family::A2:
      if (m % 2 == 0) throw ValidationError("m must be odd");
      if (m < 3) throw ValidationError("m must be at least 3");
      if (n < m) throw ValidationError("n must be at least m");
      break;
    case Family::B1:
    case Family::B2:
      if (m % 2 == 0) throw ValidationError("m must be odd");
      if (m < 3) throw ValidationError("m must be at least 3");
      if (n % m != 0) throw ValidationError("m must divide n");
      spec.c = mod_reduce(spec.c, n);
      spec.e = mod_reduce(spec.e, m);
      spec.f = mod_reduce(spec.f, n);
      if (spec.e == 0) throw ValidationError("e must not be divisible by m");
      if (gcd(mod_reduce(spec.c, m), m) != 1)
        throw ValidationError("c not coprime to m");
      break;
  }

  Pattern p(std::move(spec));
  if (p.spec_.family == Family::A1)
    p.u_inv_ = mod_inverse(p.spec_.u, m);
  if (p.spec_.family == Family::A2)
    p.two_inv_ = mod_inverse(2, m);
  return p;
}

bool Pattern::frame_independent() const {
  return !(spec_.family == Family::QC && spec_.c != 0);
}

bool Pattern::has_invariant() const { return frame_independent(); }

bool Pattern::in_domain(Resource r) const {
  const Int lo = (spec_.family == Family::A1 || spec_.family == Family::A2) ? 1 : 0;
  return r.i >= lo && r.i < spec_.shape.m && r.j >= 0 && r.j < spec_.shape.n;
}

void Pattern::require_in_domain(Resource r) const {
  if (!in_domain(r))
    throw ValidationError("resource (" + std::to_string(r.i) + "," +
                          std::to_string(r.j) + ") outside pattern domain");
}

std::vector<Resource> Pattern::domain() const {
  const Int lo = (spec_.family == Family::A1 || spec_.family == Family::A2) ? 1 : 0;
  std::vector<Resource> out;
  out.reserve(static_cast<std::size_t>((spec_.shape.m - lo) * spec_.shape.n));
  for (Int i = lo; i < spec_.shape.m; ++i)
    for (Int j = 0; j < spec_.shape.n; ++j) out.push_back({i, j});
  return out;
}

Int Pattern::domain_size() const {
  const Int lo = (spec_.family == Family::A1 || spec_.family == Family::A2) ? 1 : 0;
  return (spec_.shape.m - lo) * spec_.shape.n;
}

Resource Pattern::step(Resource r) const {
  if (!frame_independent()) throw FrameDependentError();
  require_in_domain(r);
  const Int m = spec_.shape.m, n = spec_.shape.n;
  switch (spec_.family) {
    case Family::QC:  // c == 0 here
      return {r.i, mod_reduce(r.j + r.i, n)};
    case Family::A1: {
      const Int i2 = mod_reduce(spec_.u * r.i, m);
      return {i2, mod_reduce(r.j - spec_.v * r.i + spec_.v * i2, n)};
    }
    case Family::A2: {
      const Int i2 = mod_reduce(2 * r.i, m);
      return {i2, mod_reduce(r.j - r.i + i2, n)};
    }
    case Family::B1:
      return {mod_reduce(r.i + spec_.e, m),
              mod_reduce(spec_.c * r.i + r.j + spec_.f, n)};
    case Family::B2:
      return {mod_reduce(r.i + spec_.e, m),
              mod_reduce(spec_.c * r.i - r.j + spec_.f, n)};
  }
  throw std::logic_error("unreachable");
}

Resource Pattern::step_back(Resource r) const {
  if (!frame_independent()) throw FrameDependentError();
  require_in_domain(r);
  const Int m = spec_.shape.m, n = spec_.shape.n;
  switch (spec_.family) {
    case Family::QC:
      return {r.i, mod_reduce(r.j - r.i, n)};
    case Family::A1: {
      const Int i0 = mod_reduce(u_inv_ * r.i, m);
      return {i0, mod_reduce(r.j + spec_.v * i0 - spec_.v * r.i, n)};
    }
    case Family::A2: {
      const Int i0 = mod_reduce(two_inv_ * r.i, m);
      return {i0, mod_reduce(r.j + i0 - r.i, n)};
    }
    case Family::B1: {
      const Int i0 = mod_reduce(r.i - spec_.e, m);
      return {i0, mod_reduce(r.j - spec_.c * i0 - spec_.f, n)};
    }
    case Family::B2: {
      const Int i0 = mod_reduce(r.i - spec_.e, m);
      return {i0, mod_reduce(spec_.c * i0 - r.j + spec_.f, n)};
    }
  }
  throw std::logic_error("unreachable");
}

Resource Pattern::frame_map(Resource r, Int t) const {
  if (frame_independent()) return step(r);
  require_in_domain(r);
  const Int m = spec_.shape.m, n = spec_.shape.n;
  const Int ct = mod_reduce(spec_.c * mod_reduce(t, n), n);
  return {mod_reduce(r.i + spec_.c, m), mod_reduce(r.j + r.i - ct, n)};
}

Resource Pattern::position_at(Resource r0, Int t) const {
  require_in_domain(r0);
  if (t < 0) throw ValidationError("frame index must be non-negative");
  Resource r = r0;
  if (frame_independent()) {
    // step has period <= |domain|; fold t to avoid long walks
    if (t > domain_size()) t %= period(r0);
    for (Int k = 0; k < t; ++k) r = step(r);
  } else {
    for (Int k = 0; k < t; ++k) r = frame_map(r, k);
  }
  return r;
}

Int Pattern::invariant_modulus() const {
  if (!has_invariant()) throw NoInvariantError();
  switch (spec_.family) {
    case Family::A1:
    case Family::A2: return spec_.shape.n;
    default: return spec_.shape.m;
  }
}

Int Pattern::invariant_raw(Resource r) const {
  if (!has_invariant()) throw NoInvariantError();
  require_in_domain(r);
  const Int i = r.i, j = r.j;
  const Int c = spec_.c, e = spec_.e, f = spec_.f;
  switch (spec_.family) {
    case Family::QC: return i;  // c == 0
    case Family::A1: return j - spec_.v * i;
    case Family::A2: return j - i;
    case Family::B1: return c * i * i + (2 * f - c * e) * i - 2 * e * j;
    case Family::B2:
      return c * c * i * i + 4 * j * j - 4 * c * i * j +
             c * (2 * f - c * e) * i + 2 * (c * e - 2 * f) * j;
  }
  throw std::logic_error("unreachable");
}

InvariantValue Pattern::invariant(Resource r) const {
  const Int q = invariant_modulus();
  return {mod_reduce(invariant_raw(r), q), q};
}

std::map<InvariantValue, std::vector<Resource>> Pattern::invariant_partition() const {
  std::map<InvariantValue, std::vector<Resource>> classes;
  for (const Resource& r : domain()) classes[invariant(r)].push_back(r);
  return classes;
}

Int Pattern::period(Resource r) const {
  if (!frame_independent()) throw FrameDependentError();
  require_in_domain(r);
  Resource cur = step(r);
  Int t = 1;
  while (cur != r) {
    cur = step(cur);
    ++t;
  }
  return t;
}

}  // namespace d2d
