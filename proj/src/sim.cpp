#include "d2d/sim.hpp"

#include <algorithm>
#include <optional>
#include <string>
#include <tuple>

namespace d2d {

namespace {

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

bool erasure_success(std::uint64_t seed, Int frame, Int rx, Int tx, double p_rx) {
  std::uint64_t h = mix64(seed);
  h = mix64(h ^ static_cast<std::uint64_t>(frame));
  h = mix64(h ^ static_cast<std::uint64_t>(rx));
  h = mix64(h ^ static_cast<std::uint64_t>(tx));
  const double u = static_cast<double>(h >> 11) * 0x1.0p-53;  // [0, 1)
  return u < p_rx;
}

Int pairwise_first_hear(const Pattern& p, Resource rA, Resource rB, Int horizon) {
  if (rA == rB) throw ValidationError("invalid pair: identical resources");
  if (!p.in_domain(rA) || !p.in_domain(rB))
    throw ValidationError("resource outside pattern domain");
  Resource a = rA, b = rB;
  for (Int t = 0; t < horizon; ++t) {
    if (a.j != b.j) return t;
    a = p.frame_map(a, t);
    b = p.frame_map(b, t);
  }
  return kNever;
}

SimResult run(const Scenario& scenario) {
  const Pattern pattern = Pattern::make(scenario.pattern);
  if (scenario.horizon < 1) throw ValidationError("horizon must be at least 1");
  if (scenario.channel.kind == ChannelKind::Erasure &&
      (scenario.channel.p_rx < 0.0 || scenario.channel.p_rx > 1.0))
    throw ValidationError("p_rx must lie in [0, 1]");

  const auto& ues = scenario.ues;
  const std::size_t count = ues.size();
  {
    std::set<Int> ids;
    std::set<Resource> starts;
    for (const UEConfig& ue : ues) {
      if (ue.id < 0) throw ValidationError("ue id must be non-negative");
      if (!ids.insert(ue.id).second)
        throw ValidationError("duplicate ue id " + std::to_string(ue.id));
      if (!pattern.in_domain(ue.start))
        throw ValidationError("ue " + std::to_string(ue.id) +
                              " start resource outside pattern domain");
      if (!starts.insert(ue.start).second)
        throw ValidationError("duplicate start resource for ue " +
                              std::to_string(ue.id));
    }
  }

  // Resolve filtering: the invariant each UE advertises, and each receiver's
  // accepted invariant set (nullopt = accept all).
  std::vector<Int> advertised(count, 0);
  std::vector<std::optional<std::set<Int>>> accepted(count);
  const bool filtering = scenario.filtering.enabled;
  if (filtering) {
    if (!pattern.has_invariant()) throw NoInvariantError();
    const Int q = pattern.invariant_modulus();
    std::map<Int, std::set<Int>> service_map = scenario.filtering.service_map;
    if (service_map.empty()) {
      for (const UEConfig& ue : ues) {
        if (ue.service_type >= q)
          throw ValidationError(
              "service type " + std::to_string(ue.service_type) +
              " exceeds invariant modulus under identity service_map");
        service_map[ue.service_type] = {ue.service_type};
      }
    }
    for (std::size_t k = 0; k < count; ++k) {
      advertised[k] = pattern.invariant(ues[k].start).value;
      auto it = service_map.find(ues[k].service_type);
      if (it == service_map.end())
        throw ValidationError("service type " +
                              std::to_string(ues[k].service_type) +
                              " missing from service_map");
      if (!it->second.contains(advertised[k]))
        throw ValidationError(
            "ue " + std::to_string(ues[k].id) + " start invariant " +
            std::to_string(advertised[k]) + " not in service_map of type " +
            std::to_string(ues[k].service_type));
    }
    for (std::size_t k = 0; k < count; ++k) {
      auto it = scenario.filtering.interest.find(ues[k].id);
      if (it == scenario.filtering.interest.end()) continue;
      std::set<Int> values;
      for (Int type : it->second) {
        auto sm = service_map.find(type);
        if (sm == service_map.end())
          throw ValidationError("interest of ue " + std::to_string(ues[k].id) +
                                " names unknown service type " +
                                std::to_string(type));
        values.insert(sm->second.begin(), sm->second.end());
      }
      accepted[k] = std::move(values);
    }
  } else if (pattern.has_invariant()) {
    for (std::size_t k = 0; k < count; ++k)
      advertised[k] = pattern.invariant(ues[k].start).value;
  }

  SimResult result;
  for (const UEConfig& ue : ues) {
    result.attempts_unfiltered[ue.id] = {};
    result.attempts_filtered[ue.id] = {};
  }

  std::vector<Resource> pos(count);
  for (std::size_t k = 0; k < count; ++k) pos[k] = ues[k].start;

  std::map<std::pair<Int, Int>, Int> first_hear;  // (rx id, tx id) -> frame
  const Int total_pairs = static_cast<Int>(count) * (static_cast<Int>(count) - 1);
  result.discovery_cdf.assign(static_cast<std::size_t>(scenario.horizon), 0.0);
  Int discovered = 0;

  for (Int t = 0; t < scenario.horizon; ++t) {
    for (std::size_t rx = 0; rx < count; ++rx) {
      Int unfiltered = 0, filtered = 0;
      for (std::size_t tx = 0; tx < count; ++tx) {
        if (tx == rx || pos[tx].j == pos[rx].j) continue;  // half duplex
        ++unfiltered;
        const bool wanted =
            !filtering || !accepted[rx] || accepted[rx]->contains(advertised[tx]);
        if (!wanted) continue;
        ++filtered;
        const bool ok = scenario.channel.kind == ChannelKind::Ideal ||
                        erasure_success(scenario.channel.seed, t, ues[rx].id,
                                        ues[tx].id, scenario.channel.p_rx);
        if (ok) {
          auto key = std::make_pair(ues[rx].id, ues[tx].id);
          if (!first_hear.contains(key)) {
            first_hear.emplace(key, t);
            ++discovered;
          }
        }
      }
      result.attempts_unfiltered[ues[rx].id].push_back(unfiltered);
      result.attempts_filtered[ues[rx].id].push_back(filtering ? filtered
                                                               : unfiltered);
    }
    result.discovery_cdf[static_cast<std::size_t>(t)] =
        total_pairs == 0 ? 1.0
                         : static_cast<double>(discovered) /
                               static_cast<double>(total_pairs);
    for (std::size_t k = 0; k < count; ++k) pos[k] = pattern.frame_map(pos[k], t);
  }

  double frame_sum = 0.0;
  for (std::size_t rx = 0; rx < count; ++rx) {
    for (std::size_t tx = 0; tx < count; ++tx) {
      if (tx == rx) continue;
      PairResult pr{ues[rx].id, ues[tx].id, kNever};
      auto it = first_hear.find({ues[rx].id, ues[tx].id});
      if (it != first_hear.end()) {
        pr.first_frame = it->second;
        frame_sum += static_cast<double>(it->second);
        result.max_discovery_frame =
            std::max(result.max_discovery_frame, it->second);
      } else {
        ++result.undiscovered_pairs;
      }
      result.pairs.push_back(pr);
    }
  }
  std::sort(result.pairs.begin(), result.pairs.end(),
            [](const PairResult& a, const PairResult& b) {
              return std::tie(a.rx, a.tx) < std::tie(b.rx, b.tx);
            });
  const Int found = total_pairs - result.undiscovered_pairs;
  result.mean_discovery_frame =
      found > 0 ? frame_sum / static_cast<double>(found) : 0.0;
  return result;
}

std::vector<DecodeCost> decode_cost(const Scenario& scenario,
                                    const SimResult& result) {
  std::vector<DecodeCost> out;
  for (const UEConfig& ue : scenario.ues) {
    DecodeCost dc;
    dc.ue = ue.id;
    for (Int a : result.attempts_unfiltered.at(ue.id)) dc.attempts_unfiltered += a;
    for (Int a : result.attempts_filtered.at(ue.id)) dc.attempts_filtered += a;
    dc.ratio = dc.attempts_unfiltered > 0
                   ? static_cast<double>(dc.attempts_filtered) /
                         static_cast<double>(dc.attempts_unfiltered)
                   : 0.0;
    out.push_back(dc);
  }
  return out;
}

}  // namespace d2d
