#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include "d2d/pattern.hpp"

namespace d2d {

struct UEConfig {
  Int id = 0;
  Resource start;        // frame-0 position, identifies the logical resource
  Int service_type = 0;
  bool operator==(const UEConfig&) const = default;
};

enum class ChannelKind { Ideal, Erasure };

struct ChannelModel {
  ChannelKind kind = ChannelKind::Ideal;
  double p_rx = 1.0;  // erasure only
  std::uint64_t seed = 0;
  bool operator==(const ChannelModel&) const = default;
};

// Invariant-based decode filtering. service_map sends a service type to the
// set of invariant values carrying it (empty map = identity assignment,
// type k <-> value k). interest lists the service types each receiver cares
// about; receivers without an entry decode everything.
struct Filtering {
  bool enabled = false;
  std::map<Int, std::set<Int>> service_map;
  std::map<Int, std::set<Int>> interest;  // ue id -> service types
  bool operator==(const Filtering&) const = default;
};

struct Scenario {
  PatternSpec pattern;
  std::vector<UEConfig> ues;
  ChannelModel channel;
  Int horizon = 32;  // discovery frames simulated
  Filtering filtering;
  bool operator==(const Scenario&) const = default;
};

inline constexpr Int kNever = -1;

struct PairResult {
  Int rx = 0;
  Int tx = 0;
  Int first_frame = kNever;  // first frame rx successfully received tx
  bool operator==(const PairResult&) const = default;
};

struct SimResult {
  std::vector<PairResult> pairs;  // ordered pairs, sorted by (rx, tx)
  // per UE, per frame decode-attempt counts
  std::map<Int, std::vector<Int>> attempts_unfiltered;
  std::map<Int, std::vector<Int>> attempts_filtered;
  double mean_discovery_frame = 0.0;  // over discovered pairs
  Int max_discovery_frame = kNever;
  Int undiscovered_pairs = 0;
  std::vector<double> discovery_cdf;  // fraction of pairs discovered by frame t
};

// Deterministic slotted discovery simulation under the half-duplex rule:
// A can receive B in frame t iff their subframes differ; reception then
// succeeds per the channel model. With filtering, A only attempts decode on
// resources whose observed invariant is in A's interest set.
SimResult run(const Scenario& scenario);

// Ideal-channel oracle: smallest t < horizon with differing subframes,
// kNever otherwise. Throws on rA == rB.
Int pairwise_first_hear(const Pattern& p, Resource rA, Resource rB, Int horizon);

struct DecodeCost {
  Int ue = 0;
  Int attempts_unfiltered = 0;
  Int attempts_filtered = 0;
  double ratio = 0.0;  // filtered / unfiltered
};

std::vector<DecodeCost> decode_cost(const Scenario& scenario,
                                    const SimResult& result);

// Per (seed, frame, rx, tx) reception draw; order-independent determinism.
bool erasure_success(std::uint64_t seed, Int frame, Int rx, Int tx, double p_rx);

}  // namespace d2d
