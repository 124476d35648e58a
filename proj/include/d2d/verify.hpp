#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "d2d/pattern.hpp"

namespace d2d {

enum class CheckStatus { Pass, Fail, NotApplicable };

struct Counterexample {
  std::vector<Resource> resources;  // offending resource(s), then image(s)
  std::optional<Int> frame;
  std::vector<Int> values;  // property-specific observations
  std::string detail;       // human-readable rendering
};

// Every pass is backed by full enumeration; `checked` is the enumeration size.
struct PropertyReport {
  std::string property;
  CheckStatus status = CheckStatus::Pass;
  Int checked = 0;
  std::optional<double> fraction;  // time hopping: share of moving resources
  std::optional<Counterexample> counterexample;

  bool passed() const { return status == CheckStatus::Pass; }
  bool applicable() const { return status != CheckStatus::NotApplicable; }
};

std::string_view check_status_name(CheckStatus s);

// Frames examined for frame-dependent patterns; 2*lcm(m, n) is enough to
// expose the QC t-dependence.
Int default_frames_to_check(const Pattern& p);

using StepFn = std::function<Resource(Resource)>;

// Generic single-map checks over an explicit domain. The pattern-level
// checks below are wrappers; tests also aim these at corrupted maps.
PropertyReport check_bijection_fn(const std::vector<Resource>& domain,
                                  const StepFn& fn);
PropertyReport check_half_duplex_fn(const std::vector<Resource>& domain,
                                    const StepFn& fn);
PropertyReport check_frequency_hopping_fn(const std::vector<Resource>& domain,
                                          const StepFn& fn);
PropertyReport check_time_hopping_fn(const std::vector<Resource>& domain,
                                     const StepFn& fn);

// For frame-dependent patterns each check runs over every per-frame map M_t,
// t < frames (frames <= 0 selects default_frames_to_check).
PropertyReport check_bijection(const Pattern& p, Int frames = 0);
PropertyReport check_half_duplex(const Pattern& p, Int frames = 0);
PropertyReport check_frequency_hopping(const Pattern& p, Int frames = 0);
PropertyReport check_time_hopping(const Pattern& p, Int frames = 0);

// Invariant preservation under step, evaluated modulo modulus_override
// (default: the family's modulus). NotApplicable for QC with c != 0.
PropertyReport check_invariant(const Pattern& p,
                               std::optional<Int> modulus_override = {});

// Compares the per-frame maps M_0..M_{frames-1} pointwise.
PropertyReport check_frame_independence(const Pattern& p, Int frames_to_check);

std::vector<PropertyReport> verify_all(const Pattern& p, Int frames_to_check = 0);
bool all_pass(const std::vector<PropertyReport>& reports);

// One row of the pattern comparison table.
struct FeatureRow {
  std::string label;
  bool applicable = true;
  bool time_hopping = false;
  bool frequency_hopping = false;
  bool frame_independent = false;
  bool has_invariant = false;
};

struct TableParams {
  Int qc_c = 1;  // the c != 0 row
  Int a1_u = 2, a1_v = 1;
  Int b_c = 1, b_e = 1, b_f = 0;
};

// The six rows QC(c=0), QC(c!=0), A1, A2, B1, B2 with flags computed by
// running the checks above. Requires m odd >= 3 and m | n for all rows to
// be applicable.
std::vector<FeatureRow> feature_table(const GridShape& shape,
                                      const TableParams& params = {});

}  // namespace d2d
