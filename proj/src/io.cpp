#include "d2d/io.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

namespace d2d::io {

namespace {

std::string joined(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

const json& require(const json& obj, const std::string& key,
                    const std::string& path) {
  if (!obj.is_object())
    throw ValidationError("config key '" + path + "': expected an object");
  auto it = obj.find(key);
  if (it == obj.end())
    throw ValidationError("config key '" + joined(path, key) + "': missing");
  return *it;
}

Int get_int(const json& v, const std::string& path) {
  if (!v.is_number_integer())
    throw ValidationError("config key '" + path + "': expected an integer, got " +
                          v.dump());
  return v.get<Int>();
}

double get_double(const json& v, const std::string& path) {
  if (!v.is_number())
    throw ValidationError("config key '" + path + "': expected a number, got " +
                          v.dump());
  return v.get<double>();
}

Int key_to_int(const std::string& key, const std::string& path) {
  try {
    std::size_t used = 0;
    Int value = std::stoll(key, &used);
    if (used != key.size()) throw std::invalid_argument(key);
    return value;
  } catch (const std::exception&) {
    throw ValidationError("config key '" + path + "': non-integer map key '" +
                          key + "'");
  }
}

std::map<Int, std::set<Int>> get_int_set_map(const json& v,
                                             const std::string& path) {
  if (!v.is_object())
    throw ValidationError("config key '" + path + "': expected an object");
  std::map<Int, std::set<Int>> out;
  for (const auto& [key, arr] : v.items()) {
    const std::string sub = joined(path, key);
    if (!arr.is_array())
      throw ValidationError("config key '" + sub + "': expected an array");
    std::set<Int> values;
    for (const json& x : arr) values.insert(get_int(x, sub));
    out[key_to_int(key, path)] = std::move(values);
  }
  return out;
}

PatternSpec pattern_from_json(const json& doc) {
  PatternSpec spec;
  const json& shape = require(doc, "shape", "");
  spec.shape.m = get_int(require(shape, "m", "shape"), "shape.m");
  spec.shape.n = get_int(require(shape, "n", "shape"), "shape.n");

  const json& pat = require(doc, "pattern", "");
  const json& fam = require(pat, "family", "pattern");
  if (!fam.is_string())
    throw ValidationError("config key 'pattern.family': expected a string");
  auto family = family_from_name(fam.get<std::string>());
  if (!family)
    throw ValidationError("config key 'pattern.family': unknown family '" +
                          fam.get<std::string>() + "'");
  spec.family = *family;

  const json empty = json::object();
  const json& params = pat.contains("params") ? pat.at("params") : empty;
  auto param = [&params](const char* name) {
    return get_int(require(params, name, "pattern.params"),
                   joined("pattern.params", name));
  };
  switch (spec.family) {
    case Family::QC: spec.c = param("c"); break;
    case Family::A1:
      spec.u = param("u");
      spec.v = param("v");
      break;
    case Family::A2: break;
    case Family::B1:
    case Family::B2:
      spec.c = param("c");
      spec.e = param("e");
      spec.f = param("f");
      break;
  }
  return spec;
}

json pattern_to_json(const PatternSpec& spec) {
  json params = json::object();
  switch (spec.family) {
    case Family::QC: params["c"] = spec.c; break;
    case Family::A1:
      params["u"] = spec.u;
      params["v"] = spec.v;
      break;
    case Family::A2: break;
    case Family::B1:
    case Family::B2:
      params["c"] = spec.c;
      params["e"] = spec.e;
      params["f"] = spec.f;
      break;
  }
  return {{"family", std::string(family_name(spec.family))},
          {"params", params}};
}

json resource_to_json(const Resource& r) { return json::array({r.i, r.j}); }

}  // namespace

Scenario scenario_from_json(const json& doc) {
  Scenario s;
  s.pattern = pattern_from_json(doc);

  const json& ues = require(doc, "ues", "");
  if (!ues.is_array())
    throw ValidationError("config key 'ues': expected an array");
  Int idx = 0;
  for (const json& u : ues) {
    const std::string path = "ues[" + std::to_string(idx++) + "]";
    UEConfig ue;
    ue.id = get_int(require(u, "id", path), joined(path, "id"));
    const json& start = require(u, "start", path);
    if (!start.is_array() || start.size() != 2)
      throw ValidationError("config key '" + joined(path, "start") +
                            "': expected [i, j]");
    ue.start.i = get_int(start[0], joined(path, "start"));
    ue.start.j = get_int(start[1], joined(path, "start"));
    if (u.contains("service_type"))
      ue.service_type = get_int(u.at("service_type"), joined(path, "service_type"));
    s.ues.push_back(ue);
  }

  if (doc.contains("channel")) {
    const json& ch = doc.at("channel");
    const json& kind = require(ch, "kind", "channel");
    if (!kind.is_string())
      throw ValidationError("config key 'channel.kind': expected a string");
    const std::string k = kind.get<std::string>();
    if (k == "ideal") {
      s.channel.kind = ChannelKind::Ideal;
    } else if (k == "erasure") {
      s.channel.kind = ChannelKind::Erasure;
    } else {
      throw ValidationError("config key 'channel.kind': unknown kind '" + k +
                            "'");
    }
    if (ch.contains("p_rx")) s.channel.p_rx = get_double(ch.at("p_rx"), "channel.p_rx");
    if (ch.contains("seed")) {
      if (!ch.at("seed").is_number_unsigned() && !ch.at("seed").is_number_integer())
        throw ValidationError("config key 'channel.seed': expected an integer");
      s.channel.seed = ch.at("seed").get<std::uint64_t>();
    }
  }

  if (doc.contains("horizon"))
    s.horizon = get_int(doc.at("horizon"), "horizon");

  if (doc.contains("filtering")) {
    const json& f = doc.at("filtering");
    if (f.contains("enabled")) {
      if (!f.at("enabled").is_boolean())
        throw ValidationError("config key 'filtering.enabled': expected a bool");
      s.filtering.enabled = f.at("enabled").get<bool>();
    }
    if (f.contains("service_map"))
      s.filtering.service_map =
          get_int_set_map(f.at("service_map"), "filtering.service_map");
    if (f.contains("interest"))
      s.filtering.interest =
          get_int_set_map(f.at("interest"), "filtering.interest");
  }
  return s;
}

json scenario_to_json(const Scenario& s) {
  json doc;
  doc["shape"] = {{"m", s.pattern.shape.m}, {"n", s.pattern.shape.n}};
  doc["pattern"] = pattern_to_json(s.pattern);
  json ues = json::array();
  for (const UEConfig& ue : s.ues)
    ues.push_back({{"id", ue.id},
                   {"start", resource_to_json(ue.start)},
                   {"service_type", ue.service_type}});
  doc["ues"] = ues;
  doc["channel"] = {
      {"kind", s.channel.kind == ChannelKind::Ideal ? "ideal" : "erasure"},
      {"p_rx", s.channel.p_rx},
      {"seed", s.channel.seed}};
  doc["horizon"] = s.horizon;
  json service_map = json::object();
  for (const auto& [k, vals] : s.filtering.service_map)
    service_map[std::to_string(k)] = vals;
  json interest = json::object();
  for (const auto& [k, vals] : s.filtering.interest)
    interest[std::to_string(k)] = vals;
  doc["filtering"] = {{"enabled", s.filtering.enabled},
                      {"service_map", service_map},
                      {"interest", interest}};
  return doc;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open config file '" + path + "'");
  json doc;
  try {
    in >> doc;
  } catch (const json::parse_error& e) {
    throw ValidationError("config file '" + path + "': " + e.what());
  }
  return scenario_from_json(doc);
}

json report_to_json(const PropertyReport& rep) {
  json doc;
  doc["property"] = rep.property;
  doc["status"] = std::string(check_status_name(rep.status));
  doc["checked"] = rep.checked;
  if (rep.fraction) doc["fraction"] = *rep.fraction;
  if (rep.counterexample) {
    const Counterexample& ce = *rep.counterexample;
    json c;
    json resources = json::array();
    for (const Resource& r : ce.resources) resources.push_back(resource_to_json(r));
    c["resources"] = resources;
    if (ce.frame) c["frame"] = *ce.frame;
    c["values"] = ce.values;
    c["detail"] = ce.detail;
    doc["counterexample"] = c;
  }
  return doc;
}

std::string report_to_text(const PropertyReport& rep) {
  std::ostringstream os;
  os << rep.property << ": ";
  switch (rep.status) {
    case CheckStatus::Pass: os << "PASS"; break;
    case CheckStatus::Fail: os << "FAIL"; break;
    case CheckStatus::NotApplicable: os << "NOT APPLICABLE"; break;
  }
  if (rep.applicable()) {
    os << " (checked " << rep.checked;
    if (rep.fraction)
      os << ", moving fraction " << std::setprecision(4) << *rep.fraction;
    os << ")";
  }
  if (rep.counterexample) os << ": " << rep.counterexample->detail;
  return os.str();
}

json table_to_json(const std::vector<FeatureRow>& rows) {
  json arr = json::array();
  for (const FeatureRow& row : rows) {
    json r;
    r["pattern"] = row.label;
    if (!row.applicable) {
      r["applicable"] = false;
    } else {
      r["time_hopping"] = row.time_hopping ? "Y" : "N";
      r["frequency_hopping"] = row.frequency_hopping ? "Y" : "N";
      r["independent_of_t"] = row.frame_independent ? "Y" : "N";
      r["hopping_invariant"] = row.has_invariant ? "Y" : "N";
    }
    arr.push_back(r);
  }
  return arr;
}

std::string table_to_text(const std::vector<FeatureRow>& rows) {
  std::ostringstream os;
  os << std::left << std::setw(16) << "pattern" << std::setw(14)
     << "time hopping" << std::setw(19) << "frequency hopping" << std::setw(18)
     << "independent of t" << "hopping invariant\n";
  for (const FeatureRow& row : rows) {
    os << std::left << std::setw(16) << row.label;
    if (!row.applicable) {
      os << "n/a\n";
      continue;
    }
    os << std::setw(14) << (row.time_hopping ? "Y" : "N") << std::setw(19)
       << (row.frequency_hopping ? "Y" : "N") << std::setw(18)
       << (row.frame_independent ? "Y" : "N")
       << (row.has_invariant ? "Y" : "N") << "\n";
  }
  return os.str();
}

std::vector<TrajectoryPoint> build_trace(const Pattern& pattern, Resource start,
                                         Int frames) {
  if (!pattern.in_domain(start))
    throw ValidationError("start resource outside pattern domain");
  if (frames < 0) throw ValidationError("frames must be non-negative");
  std::vector<TrajectoryPoint> trace;
  Resource r = start;
  for (Int t = 0; t <= frames; ++t) {
    TrajectoryPoint pt;
    pt.frame = t;
    pt.resource = r;
    if (pattern.has_invariant()) pt.invariant = pattern.invariant(r);
    trace.push_back(pt);
    r = pattern.frame_map(r, t);
  }
  return trace;
}

json trace_to_json(const std::vector<TrajectoryPoint>& trace) {
  json arr = json::array();
  for (const TrajectoryPoint& pt : trace) {
    json row;
    row["frame"] = pt.frame;
    row["i"] = pt.resource.i;
    row["j"] = pt.resource.j;
    if (pt.invariant) {
      row["invariant"] = pt.invariant->value;
      row["modulus"] = pt.invariant->modulus;
    }
    arr.push_back(row);
  }
  return arr;
}

std::string trace_to_csv(const std::vector<TrajectoryPoint>& trace) {
  std::ostringstream os;
  os << "frame,i,j,invariant\n";
  for (const TrajectoryPoint& pt : trace) {
    os << pt.frame << "," << pt.resource.i << "," << pt.resource.j << ",";
    if (pt.invariant) os << pt.invariant->value;
    os << "\n";
  }
  return os.str();
}

json partition_to_json(const Pattern& pattern) {
  json arr = json::array();
  for (const auto& [value, members] : pattern.invariant_partition()) {
    json row;
    row["value"] = value.value;
    row["modulus"] = value.modulus;
    row["size"] = static_cast<Int>(members.size());
    json ms = json::array();
    for (const Resource& r : members) ms.push_back(resource_to_json(r));
    row["members"] = ms;
    arr.push_back(row);
  }
  return arr;
}

std::string partition_to_text(const Pattern& pattern) {
  std::ostringstream os;
  for (const auto& [value, members] : pattern.invariant_partition()) {
    os << "value " << value.value << " (mod " << value.modulus << "), size "
       << members.size() << ":";
    for (const Resource& r : members) os << " (" << r.i << "," << r.j << ")";
    os << "\n";
  }
  return os.str();
}

json result_to_json(const Scenario& scenario, const SimResult& result) {
  json doc;
  json pairs = json::array();
  for (const PairResult& pr : result.pairs) {
    json row;
    row["rx"] = pr.rx;
    row["tx"] = pr.tx;
    if (pr.first_frame == kNever)
      row["first_frame"] = nullptr;
    else
      row["first_frame"] = pr.first_frame;
    pairs.push_back(row);
  }
  doc["pairs"] = pairs;

  json agg;
  agg["mean_discovery_frame"] = result.mean_discovery_frame;
  if (result.max_discovery_frame == kNever)
    agg["max_discovery_frame"] = nullptr;
  else
    agg["max_discovery_frame"] = result.max_discovery_frame;
  agg["undiscovered_pairs"] = result.undiscovered_pairs;
  agg["discovery_cdf"] = result.discovery_cdf;
  doc["aggregate"] = agg;

  json attempts = json::object();
  for (const auto& [ue, counts] : result.attempts_unfiltered) {
    attempts[std::to_string(ue)] = {
        {"unfiltered", counts},
        {"filtered", result.attempts_filtered.at(ue)}};
  }
  doc["attempts"] = attempts;

  json costs = json::array();
  for (const DecodeCost& dc : decode_cost(scenario, result))
    costs.push_back({{"ue", dc.ue},
                     {"attempts_unfiltered", dc.attempts_unfiltered},
                     {"attempts_filtered", dc.attempts_filtered},
                     {"ratio", dc.ratio}});
  doc["decode_cost"] = costs;
  return doc;
}

}  // namespace d2d::io
