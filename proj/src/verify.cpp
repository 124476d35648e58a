#include "d2d/verify.hpp"

#include <map>
#include <numeric>
#include <sstream>

namespace d2d {

namespace {

std::string res_str(Resource r) {
  std::ostringstream os;
  os << "(" << r.i << "," << r.j << ")";
  return os.str();
}

PropertyReport pass_report(std::string name, Int checked) {
  PropertyReport rep;
  rep.property = std::move(name);
  rep.status = CheckStatus::Pass;
  rep.checked = checked;
  return rep;
}

}  // namespace

std::string_view check_status_name(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    case CheckStatus::NotApplicable: return "not-applicable";
  }
  return "?";
}

Int default_frames_to_check(const Pattern& p) {
  const Int m = p.shape().m, n = p.shape().n;
  return 2 * (m / std::gcd(m, n)) * n;
}

PropertyReport check_bijection_fn(const std::vector<Resource>& domain,
                                  const StepFn& fn) {
  PropertyReport rep = pass_report("bijection", static_cast<Int>(domain.size()));
  std::map<Resource, Resource> preimage;
  for (const Resource& r : domain) {
    const Resource img = fn(r);
    auto [it, inserted] = preimage.emplace(img, r);
    if (!inserted) {
      rep.status = CheckStatus::Fail;
      Counterexample ce;
      ce.resources = {it->second, r, img};
      ce.detail = "duplicate image: " + res_str(it->second) + " and " +
                  res_str(r) + " both map to " + res_str(img);
      rep.counterexample = ce;
      return rep;
    }
  }
  return rep;
}

PropertyReport check_half_duplex_fn(const std::vector<Resource>& domain,
                                    const StepFn& fn) {
  PropertyReport rep = pass_report("half_duplex", static_cast<Int>(domain.size()));
  // subframe -> (next subframe -> source resource)
  std::map<Int, std::map<Int, Resource>> seen;
  for (const Resource& r : domain) {
    const Resource img = fn(r);
    auto [it, inserted] = seen[r.j].emplace(img.j, r);
    if (!inserted) {
      rep.status = CheckStatus::Fail;
      Counterexample ce;
      ce.resources = {it->second, r};
      ce.values = {img.j};
      ce.detail = res_str(it->second) + " and " + res_str(r) +
                  " hop to the same subframe " + std::to_string(img.j);
      rep.counterexample = ce;
      return rep;
    }
  }
  return rep;
}

PropertyReport check_frequency_hopping_fn(const std::vector<Resource>& domain,
                                          const StepFn& fn) {
  PropertyReport rep =
      pass_report("frequency_hopping", static_cast<Int>(domain.size()));
  for (const Resource& r : domain) {
    const Resource img = fn(r);
    if (img.i == r.i) {
      rep.status = CheckStatus::Fail;
      Counterexample ce;
      ce.resources = {r, img};
      ce.values = {r.i};
      ce.detail = res_str(r) + " keeps channel " + std::to_string(r.i);
      rep.counterexample = ce;
      return rep;
    }
  }
  return rep;
}

PropertyReport check_time_hopping_fn(const std::vector<Resource>& domain,
                                     const StepFn& fn) {
  PropertyReport rep =
      pass_report("time_hopping", static_cast<Int>(domain.size()));
  Int moved = 0;
  for (const Resource& r : domain)
    if (fn(r).j != r.j) ++moved;
  rep.fraction = domain.empty()
                     ? 0.0
                     : static_cast<double>(moved) / static_cast<double>(domain.size());
  if (moved == 0) {
    rep.status = CheckStatus::Fail;
    Counterexample ce;
    ce.detail = "no resource ever changes subframe";
    rep.counterexample = ce;
  }
  return rep;
}

namespace {

// Runs a single-map check over step, or over every per-frame map M_t for
// frame-dependent patterns. Accumulates checked counts and fractions.
PropertyReport run_per_frame(
    const Pattern& p, Int frames,
    PropertyReport (*check)(const std::vector<Resource>&, const StepFn&)) {
  const std::vector<Resource> dom = p.domain();
  if (p.frame_independent())
    return check(dom, [&p](Resource r) { return p.step(r); });

  if (frames <= 0) frames = default_frames_to_check(p);
  PropertyReport total;
  double fraction_sum = 0.0;
  bool any_moved = false;
  for (Int t = 0; t < frames; ++t) {
    PropertyReport rep =
        check(dom, [&p, t](Resource r) { return p.frame_map(r, t); });
    total.property = rep.property;
    total.checked += rep.checked;
    if (rep.fraction) {
      fraction_sum += *rep.fraction;
      if (*rep.fraction > 0.0) any_moved = true;
    }
    if (!rep.passed() && rep.property != "time_hopping") {
      rep.checked = total.checked;
      if (rep.counterexample) rep.counterexample->frame = t;
      return rep;
    }
  }
  total.status = CheckStatus::Pass;
  if (total.property == "time_hopping") {
    total.fraction = fraction_sum / static_cast<double>(frames);
    if (!any_moved) {
      total.status = CheckStatus::Fail;
      Counterexample ce;
      ce.detail = "no resource ever changes subframe";
      total.counterexample = ce;
    }
  }
  return total;
}

}  // namespace

PropertyReport check_bijection(const Pattern& p, Int frames) {
  return run_per_frame(p, frames, &check_bijection_fn);
}

PropertyReport check_half_duplex(const Pattern& p, Int frames) {
  return run_per_frame(p, frames, &check_half_duplex_fn);
}

PropertyReport check_frequency_hopping(const Pattern& p, Int frames) {
  return run_per_frame(p, frames, &check_frequency_hopping_fn);
}

PropertyReport check_time_hopping(const Pattern& p, Int frames) {
  return run_per_frame(p, frames, &check_time_hopping_fn);
}

PropertyReport check_invariant(const Pattern& p,
                               std::optional<Int> modulus_override) {
  PropertyReport rep;
  rep.property = "invariant";
  if (!p.has_invariant()) {
    rep.status = CheckStatus::NotApplicable;
    return rep;
  }
  const Int q = modulus_override.value_or(p.invariant_modulus());
  if (q <= 0) throw ValidationError("modulus must be positive");
  rep.status = CheckStatus::Pass;
  for (const Resource& r : p.domain()) {
    ++rep.checked;
    const Resource img = p.step(r);
    const Int a = mod_reduce(p.invariant_raw(r), q);
    const Int b = mod_reduce(p.invariant_raw(img), q);
    if (a != b) {
      rep.status = CheckStatus::Fail;
      Counterexample ce;
      ce.resources = {r, img};
      ce.values = {a, b};
      ce.detail = "invariant mod " + std::to_string(q) + " changes: " +
                  res_str(r) + " -> " + std::to_string(a) + ", " +
                  res_str(img) + " -> " + std::to_string(b);
      rep.counterexample = ce;
      return rep;
    }
  }
  return rep;
}

PropertyReport check_frame_independence(const Pattern& p, Int frames_to_check) {
  if (frames_to_check <= 0) frames_to_check = default_frames_to_check(p);
  PropertyReport rep;
  rep.property = "frame_independence";
  rep.status = CheckStatus::Pass;
  const std::vector<Resource> dom = p.domain();
  for (Int t = 1; t < frames_to_check; ++t) {
    for (const Resource& r : dom) {
      ++rep.checked;
      const Resource a = p.frame_map(r, 0);
      const Resource b = p.frame_map(r, t);
      if (a != b) {
        rep.status = CheckStatus::Fail;
        Counterexample ce;
        ce.resources = {r, a, b};
        ce.frame = t;
        ce.detail = "M_0" + res_str(r) + "=" + res_str(a) + " but M_" +
                    std::to_string(t) + res_str(r) + "=" + res_str(b);
        rep.counterexample = ce;
        return rep;
      }
    }
  }
  if (rep.checked == 0) rep.checked = static_cast<Int>(dom.size());
  return rep;
}

std::vector<PropertyReport> verify_all(const Pattern& p, Int frames_to_check) {
  std::vector<PropertyReport> out;
  out.push_back(check_bijection(p, frames_to_check));
  out.push_back(check_half_duplex(p, frames_to_check));
  out.push_back(check_frequency_hopping(p, frames_to_check));
  out.push_back(check_time_hopping(p, frames_to_check));
  out.push_back(check_invariant(p));
  out.push_back(check_frame_independence(p, frames_to_check));
  return out;
}

bool all_pass(const std::vector<PropertyReport>& reports) {
  for (const PropertyReport& r : reports)
    if (r.applicable() && !r.passed()) return false;
  return true;
}

std::vector<FeatureRow> feature_table(const GridShape& shape,
                                      const TableParams& params) {
  struct RowSpec {
    std::string label;
    PatternSpec spec;
  };
  const std::vector<RowSpec> rows = {
      {"QC(c=0 mod m)", {Family::QC, shape, 0, 0, 0, 0, 0}},
      {"QC(c!=0 mod m)", {Family::QC, shape, params.qc_c, 0, 0, 0, 0}},
      {"type A1", {Family::A1, shape, 0, params.a1_u, params.a1_v, 0, 0}},
      {"type A2", {Family::A2, shape, 0, 0, 0, 0, 0}},
      {"type B1", {Family::B1, shape, params.b_c, 0, 0, params.b_e, params.b_f}},
      {"type B2", {Family::B2, shape, params.b_c, 0, 0, params.b_e, params.b_f}},
  };
  std::vector<FeatureRow> out;
  for (const RowSpec& rs : rows) {
    FeatureRow row;
    row.label = rs.label;
    try {
      const Pattern p = Pattern::make(rs.spec);
      row.time_hopping = check_time_hopping(p).passed();
      row.frequency_hopping = check_frequency_hopping(p).passed();
      row.frame_independent = check_frame_independence(p, 0).passed();
      row.has_invariant = check_invariant(p).passed();
    } catch (const ValidationError&) {
      row.applicable = false;
    }
    out.push_back(row);
  }
  return out;
}

}  // namespace d2d
