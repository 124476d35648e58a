#include <doctest.h>

#include <algorithm>

#include "d2d/sim.hpp"

using namespace d2d;

namespace {

Scenario full_occupancy(const PatternSpec& spec, Int horizon) {
  const Pattern p = Pattern::make(spec);
  Scenario s;
  s.pattern = spec;
  s.horizon = horizon;
  Int id = 0;
  for (const Resource& r : p.domain()) s.ues.push_back({id++, r, 0});
  return s;
}

Int first_frame(const SimResult& result, Int rx, Int tx) {
  for (const PairResult& pr : result.pairs)
    if (pr.rx == rx && pr.tx == tx) return pr.first_frame;
  FAIL("pair not found");
  return kNever;
}

}  // namespace

TEST_CASE("two-UE discovery under half duplex") {
  Scenario s;
  s.pattern = {Family::B1, {3, 6}, 1, 0, 0, 1, 0};
  s.ues = {{0, {0, 0}, 0}, {1, {1, 0}, 0}};
  s.horizon = 4;
  const SimResult result = run(s);
  // same subframe at t=0, subframes 0 vs 1 at t=1
  CHECK(first_frame(result, 0, 1) == 1);
  CHECK(first_frame(result, 1, 0) == 1);
  CHECK(result.max_discovery_frame == 1);
  CHECK(result.undiscovered_pairs == 0);
}

TEST_CASE("different start subframes discover immediately") {
  Scenario s;
  s.pattern = {Family::A1, {3, 6}, 0, 2, 1, 0, 0};
  s.ues = {{0, {1, 0}, 0}, {1, {2, 3}, 0}};
  s.horizon = 2;
  const SimResult result = run(s);
  CHECK(first_frame(result, 0, 1) == 0);
  CHECK(first_frame(result, 1, 0) == 0);
}

TEST_CASE("full occupancy discovers every pair by frame 1") {
  const SimResult result =
      run(full_occupancy({Family::A1, {5, 10}, 0, 2, 1, 0, 0}, 4));
  CHECK(result.undiscovered_pairs == 0);
  CHECK(result.max_discovery_frame <= 1);
}

TEST_CASE("pairwise_first_hear") {
  const Pattern b1 = Pattern::make({Family::B1, {3, 6}, 1, 0, 0, 1, 0});
  CHECK(pairwise_first_hear(b1, {0, 0}, {1, 0}, 8) == 1);
  CHECK(pairwise_first_hear(b1, {0, 0}, {1, 3}, 8) == 0);
  CHECK_THROWS_AS(pairwise_first_hear(b1, {0, 0}, {0, 0}, 8), ValidationError);

  // patterns satisfying the half-duplex condition resolve within one frame
  const Pattern fixtures[] = {
      Pattern::make({Family::A1, {5, 10}, 0, 2, 1, 0, 0}),
      Pattern::make({Family::A2, {5, 10}, 0, 0, 0, 0, 0}),
      Pattern::make({Family::B1, {5, 10}, 1, 0, 0, 1, 0}),
      Pattern::make({Family::B2, {5, 10}, 1, 0, 0, 1, 0}),
  };
  for (const Pattern& p : fixtures) {
    const auto dom = p.domain();
    for (const Resource& a : dom)
      for (const Resource& b : dom) {
        if (a == b) continue;
        const Int t = pairwise_first_hear(p, a, b, 8);
        CHECK(t >= 0);
        CHECK(t <= 1);
      }
  }
}

TEST_CASE("half duplex is never violated") {
  Scenario s = full_occupancy({Family::B2, {3, 6}, 1, 0, 0, 2, 0}, 6);
  const Pattern p = Pattern::make(s.pattern);
  const SimResult result = run(s);
  for (const PairResult& pr : result.pairs) {
    if (pr.first_frame == kNever) continue;
    const Resource rx = p.position_at(s.ues[pr.rx].start, pr.first_frame);
    const Resource tx = p.position_at(s.ues[pr.tx].start, pr.first_frame);
    CHECK(rx.j != tx.j);
  }
}

TEST_CASE("configuration errors") {
  Scenario s;
  s.pattern = {Family::B1, {3, 6}, 1, 0, 0, 1, 0};
  s.ues = {{0, {0, 0}, 0}, {1, {0, 0}, 0}};
  CHECK_THROWS_AS(run(s), ValidationError);

  s.ues = {{0, {0, 0}, 0}, {0, {1, 0}, 0}};
  CHECK_THROWS_AS(run(s), ValidationError);

  s.pattern = {Family::QC, {3, 6}, 1, 0, 0, 0, 0};
  s.ues = {{0, {0, 0}, 0}, {1, {1, 0}, 0}};
  s.filtering.enabled = true;
  CHECK_THROWS_AS(run(s), NoInvariantError);
}

TEST_CASE("filtering soundness and completeness") {
  Scenario unfiltered = full_occupancy({Family::A1, {5, 10}, 0, 2, 1, 0, 0}, 4);
  const Pattern p = Pattern::make(unfiltered.pattern);
  for (UEConfig& ue : unfiltered.ues)
    ue.service_type = p.invariant(ue.start).value;

  Scenario filtered = unfiltered;
  filtered.filtering.enabled = true;
  filtered.filtering.interest[0] = {3};  // ue 0 only wants invariant class 3

  const SimResult base = run(unfiltered);
  const SimResult result = run(filtered);
  for (const PairResult& pr : result.pairs) {
    const Int base_frame = first_frame(base, pr.rx, pr.tx);
    const Int tx_inv = p.invariant(filtered.ues[pr.tx].start).value;
    if (pr.rx != 0) {
      CHECK(pr.first_frame == base_frame);  // no interest entry: decode all
    } else if (tx_inv == 3) {
      CHECK(pr.first_frame == base_frame);
    } else {
      CHECK(pr.first_frame == kNever);
    }
  }
  // filtered attempt counts never exceed unfiltered
  for (const auto& [ue, counts] : result.attempts_filtered) {
    const auto& plain = result.attempts_unfiltered.at(ue);
    for (std::size_t k = 0; k < counts.size(); ++k) CHECK(counts[k] <= plain[k]);
  }
}

TEST_CASE("decode cost extremes") {
  Scenario s = full_occupancy({Family::A1, {5, 10}, 0, 2, 1, 0, 0}, 4);
  const Pattern p = Pattern::make(s.pattern);
  for (UEConfig& ue : s.ues) ue.service_type = p.invariant(ue.start).value;
  s.filtering.enabled = true;

  SUBCASE("interest covering all classes leaves ratio 1") {
    std::set<Int> all;
    for (Int k = 0; k < 10; ++k) all.insert(k);
    s.filtering.interest[0] = all;
    const auto costs = decode_cost(s, run(s));
    CHECK(costs[0].ratio == doctest::Approx(1.0));
  }
  SUBCASE("empty interest set means zero filtered attempts") {
    s.filtering.interest[0] = {};
    const auto costs = decode_cost(s, run(s));
    CHECK(costs[0].attempts_filtered == 0);
  }
  SUBCASE("single class of size 4 out of 40") {
    s.filtering.interest[0] = {5};
    const auto costs = decode_cost(s, run(s));
    CHECK(costs[0].attempts_filtered <= 4 * s.horizon);
    CHECK(static_cast<double>(costs[0].attempts_filtered) /
              static_cast<double>(costs[0].attempts_unfiltered) ==
          doctest::Approx(0.1).epsilon(0.25));
  }
}

TEST_CASE("determinism and channel models") {
  Scenario s = full_occupancy({Family::B1, {3, 6}, 1, 0, 0, 1, 0}, 12);
  s.channel = {ChannelKind::Erasure, 0.5, 1234};
  const SimResult a = run(s);
  const SimResult b = run(s);
  CHECK(a.pairs == b.pairs);
  CHECK(a.attempts_filtered == b.attempts_filtered);
  CHECK(a.discovery_cdf == b.discovery_cdf);

  // p_rx = 1 reproduces the ideal channel exactly
  Scenario sure = s;
  sure.channel = {ChannelKind::Erasure, 1.0, 99};
  Scenario ideal = s;
  ideal.channel = {};
  CHECK(run(sure).pairs == run(ideal).pairs);

  // CDF is non-decreasing
  const SimResult result = run(s);
  for (std::size_t t = 1; t < result.discovery_cdf.size(); ++t)
    CHECK(result.discovery_cdf[t] >= result.discovery_cdf[t - 1]);
}
