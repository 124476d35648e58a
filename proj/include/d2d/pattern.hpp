#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "d2d/grid.hpp"

namespace d2d {

enum class Family { QC, A1, A2, B1, B2 };

std::string_view family_name(Family f);  // "qc", "a1", "a2", "b1", "b2"
std::optional<Family> family_from_name(std::string_view name);

// Family parameters. Only the fields a family uses are read:
//   QC: c    A1: u, v    A2: none    B1/B2: c, e, f
struct PatternSpec {
  Family family = Family::QC;
  GridShape shape;
  Int c = 0;
  Int u = 0;
  Int v = 0;
  Int e = 0;
  Int f = 0;
  bool operator==(const PatternSpec&) const = default;
};

struct TrajectoryPoint {
  Int frame = 0;
  Resource resource;
  std::optional<InvariantValue> invariant;
};

// A validated pattern family instance bound to a shape.
//
// Domain is {1..m-1} x {0..n-1} for A1/A2 (channel 0 excluded, a capacity
// cost of n resources), the full {0..m-1} x {0..n-1} for QC/B1/B2.
//
// All families except QC with c != 0 are frame-independent: the next-frame
// map is the same bijection `step` in every discovery frame. QC with c != 0
// only has per-frame maps (frame_map) and closed-form trajectories.
class Pattern {
 public:
  // Validates the spec; throws ValidationError naming the violated rule.
  // Parameters are reduced to canonical residues before the checks
  // (u mod m; v, c, f mod n; e mod m), which leaves the maps unchanged.
  static Pattern make(PatternSpec spec);

  const PatternSpec& spec() const { return spec_; }
  Family family() const { return spec_.family; }
  const GridShape& shape() const { return spec_.shape; }

  bool frame_independent() const;
  bool has_invariant() const;  // false only for QC with c != 0

  bool in_domain(Resource r) const;
  std::vector<Resource> domain() const;  // lexicographic (i, j)
  Int domain_size() const;

  // Next-frame position. Frame-independent families only.
  Resource step(Resource r) const;
  // Two-sided inverse of step on the domain.
  Resource step_back(Resource r) const;

  // Per-frame transition map M_t. Equal to step for frame-independent
  // families; for QC it is (i, j) -> ((i+c) mod m, (j + i - c*t) mod n).
  Resource frame_map(Resource r, Int t) const;

  // Position in discovery frame t of the resource at r0 in frame 0.
  Resource position_at(Resource r0, Int t) const;

  // Hopping invariant of r; constant along trajectories.
  // Modulus is n for A1/A2, m for B1/B2 and QC(c=0).
  InvariantValue invariant(Resource r) const;
  Int invariant_modulus() const;
  // The invariant expression before reduction (verifier evaluates it under
  // alternative moduli).
  Int invariant_raw(Resource r) const;

  std::map<InvariantValue, std::vector<Resource>> invariant_partition() const;

  // Smallest t > 0 with position_at(r, t) == r.
  Int period(Resource r) const;

 private:
  explicit Pattern(PatternSpec spec) : spec_(std::move(spec)) {}
  void require_in_domain(Resource r) const;

  PatternSpec spec_;
  Int u_inv_ = 0;    // A1: u^-1 mod m
  Int two_inv_ = 0;  // A2: 2^-1 mod m
};

}  // namespace d2d
