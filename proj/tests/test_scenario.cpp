#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <set>

#include "mosaic/errors.hpp"
#include "mosaic/scenario.hpp"

using namespace mosaic;

namespace {

std::vector<NodeId> iota_nodes(std::size_t n) {
  std::vector<NodeId> v(n);
  std::iota(v.begin(), v.end(), NodeId{0});
  return v;
}

// Sorted size multiset of a grouping.
std::vector<std::size_t> sizes_of(const std::vector<std::vector<NodeId>>& groups) {
  std::vector<std::size_t> s;
  for (const auto& g : groups) s.push_back(g.size());
  std::sort(s.begin(), s.end());
  return s;
}

// Every size multiset reachable by the chunking rule: chunks drawn from
// [min, remaining], a short tail merged into the last chunk.
void feasible_multisets(std::size_t remaining, std::size_t min, std::vector<std::size_t> prefix,
                        std::set<std::vector<std::size_t>>& out) {
  if (remaining == 0) {
    std::sort(prefix.begin(), prefix.end());
    out.insert(prefix);
    return;
  }
  if (remaining < min) {
    prefix.back() += remaining;
    feasible_multisets(0, min, prefix, out);
    return;
  }
  for (std::size_t s = min; s <= remaining; ++s) {
    auto next = prefix;
    next.push_back(s);
    feasible_multisets(remaining - s, min, next, out);
  }
}

}  // namespace

TEST(ExperimentalScenario, BuildsGivenMosaics) {
  auto p = experimental_scenario({{{0, 1}, {0, 5}}, {{0, 1}, {5, 10}}}, 2, {0, 10});
  ASSERT_EQ(p.size(), 2u);
  EXPECT_EQ(p.mosaics()[0].id, 0);
  EXPECT_EQ(p.mosaics()[1].id, 1);
  EXPECT_TRUE(validate_partition(p).ok());
}

TEST(ExperimentalScenario, EmptySpecListIsAllEmptyCommunity) {
  auto p = experimental_scenario({}, 2, {0, 10});
  EXPECT_TRUE(p.empty());
  EXPECT_EQ(membership(p, 1, 3.0), kEmptyMosaic);
}

TEST(ExperimentalScenario, RejectsOverlapAndOutOfDomain) {
  EXPECT_THROW(experimental_scenario({{{0}, {0, 5}}, {{0}, {3, 8}}}, 2, {0, 10}), ValidationError);
  EXPECT_THROW(experimental_scenario({{{0, 1}, {0, 12}}}, 2, {0, 10}), DomainError);
  EXPECT_THROW(experimental_scenario({{{0, 2}, {0, 5}}}, 2, {0, 10}), DomainError);
}

TEST(RandomNodePartition, TwoNodesGiveOnePair) {
  Rng rng(1);
  auto groups = random_node_partition(iota_nodes(2), 2, rng);
  ASSERT_EQ(groups.size(), 1u);
  EXPECT_EQ(groups[0].size(), 2u);
}

TEST(RandomNodePartition, FiveNodesOnlyFeasibleSizes) {
  std::set<std::vector<std::size_t>> feasible;
  feasible_multisets(5, 2, {}, feasible);
  EXPECT_EQ(feasible, (std::set<std::vector<std::size_t>>{{2, 3}, {5}}));
  std::set<std::vector<std::size_t>> seen;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    Rng rng(seed);
    auto s = sizes_of(random_node_partition(iota_nodes(5), 2, rng));
    EXPECT_TRUE(feasible.contains(s));
    seen.insert(s);
  }
  EXPECT_EQ(seen, feasible);
}

TEST(RandomNodePartition, CoversAndIsDisjoint) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Rng rng(seed);
    auto groups = random_node_partition(iota_nodes(100), 2, rng);
    std::vector<int> count(100, 0);
    for (const auto& g : groups) {
      EXPECT_GE(g.size(), 2u);
      for (NodeId v : g) ++count[v];
    }
    EXPECT_TRUE(std::all_of(count.begin(), count.end(), [](int c) { return c == 1; }));
  }
}

TEST(RandomNodePartition, TooFewNodes) {
  Rng rng(0);
  EXPECT_THROW(random_node_partition(iota_nodes(1), 2, rng), ParameterError);
}

TEST(SnapshotScenario, FixedSegmentsOfEqualLength) {
  Rng rng(3);
  auto p = snapshot_scenario(100, {0, 100}, 5, WindowMode::kFixed, rng);
  std::set<double> starts;
  for (const auto& m : p.mosaics()) {
    starts.insert(m.interval.start);
    EXPECT_DOUBLE_EQ(m.interval.length(), 20.0);
  }
  EXPECT_EQ(starts, (std::set<double>{0, 20, 40, 60, 80}));
  EXPECT_EQ(time_breakpoints(p), (std::vector<double>{0, 20, 40, 60, 80, 100}));
}

TEST(SnapshotScenario, SingleSegmentCoversAllNodes) {
  Rng rng(4);
  auto p = snapshot_scenario(30, {0, 10}, 1, WindowMode::kFixed, rng);
  std::size_t total = 0;
  for (const auto& m : p.mosaics()) {
    EXPECT_EQ(m.interval, (TimeInterval{0, 10}));
    total += m.size();
  }
  EXPECT_EQ(total, 30u);
  EXPECT_TRUE(validate_partition(p).ok());
}

TEST(SnapshotScenario, VaryingSegmentsPartitionNodesEverywhere) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Rng rng(seed);
    auto p = snapshot_scenario(40, {0, 100}, 3, WindowMode::kVarying, rng);
    std::map<double, std::pair<double, std::size_t>> segments;  // start -> (end, nodes)
    for (const auto& m : p.mosaics()) {
      EXPECT_GE(m.size(), 2u);
      auto& s = segments[m.interval.start];
      s.first = m.interval.end;
      s.second += m.size();
    }
    ASSERT_EQ(segments.size(), 3u);
    double length = 0.0;
    for (const auto& [start, s] : segments) {
      length += s.first - start;
      EXPECT_EQ(s.second, 40u);
    }
    EXPECT_NEAR(length, 100.0, 1e-9);
    EXPECT_TRUE(validate_partition(p).ok());
  }
}

TEST(SnapshotScenario, ParameterErrors) {
  Rng rng(0);
  EXPECT_THROW(snapshot_scenario(10, {0, 10}, 0, WindowMode::kFixed, rng), ParameterError);
  EXPECT_THROW(snapshot_scenario(1, {0, 10}, 2, WindowMode::kFixed, rng), ParameterError);
}

TEST(SplitMosaic, FourNodesSplitTwoAndTwo) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    Rng rng(seed);
    Mosaic m{0, {0, 1, 2, 3}, {0, 10}};
    auto parts = split_mosaic(m, 2, 1.0, rng);
    double cut = parts[0].interval.end;
    EXPECT_GE(cut, 1.0);
    EXPECT_LT(cut, 9.0);
    EXPECT_EQ(parts[0].size(), 2u);
    EXPECT_EQ(parts[2].size(), 2u);
    EXPECT_EQ(parts[0].members, parts[1].members);
    EXPECT_EQ(parts[0].interval, parts[2].interval);
    EXPECT_EQ(parts[1].interval, parts[3].interval);
  }
}

TEST(SplitMosaic, SubCellsTileTheParent) {
  Rng rng(9);
  for (int trial = 0; trial < 100; ++trial) {
    auto n = uniform_int<std::size_t>(rng, 4, 40);
    Mosaic m{0, iota_nodes(n), {0, 20}};
    auto parts = split_mosaic(m, 2, 2.0, rng);
    MosaicPartition p{n, {0, 20}, {}};
    std::vector<Mosaic> ms(parts.begin(), parts.end());
    for (std::size_t i = 0; i < ms.size(); ++i) ms[i].id = static_cast<MosaicId>(i);
    p = MosaicPartition{n, {0, 20}, ms};
    EXPECT_TRUE(validate_partition(p).ok());
    double area = 0.0;
    for (const auto& s : ms) {
      EXPECT_GE(s.size(), 2u);
      EXPECT_GE(s.interval.length(), 2.0);
      area += static_cast<double>(s.size()) * s.interval.length();
    }
    EXPECT_NEAR(area, static_cast<double>(n) * 20.0, 1e-9);
  }
}

TEST(SplitMosaic, UnsplittableIsAPreconditionError) {
  Rng rng(0);
  EXPECT_THROW(split_mosaic(Mosaic{0, {0, 1, 2}, {0, 10}}, 2, 1.0, rng), ParameterError);
  EXPECT_THROW(split_mosaic(Mosaic{0, {0, 1, 2, 3}, {0, 1}}, 2, 1.0, rng), ParameterError);
}

TEST(RandomScenario, ZeroSplitsIsTheRoot) {
  Rng rng(0);
  auto r = random_scenario(10, {0, 10}, 0, 2, 0.5, rng);
  ASSERT_EQ(r.partition.size(), 1u);
  EXPECT_EQ(r.partition.mosaics()[0].size(), 10u);
  EXPECT_EQ(r.partition.mosaics()[0].interval, (TimeInterval{0, 10}));
}

TEST(RandomScenario, ThirtySplitsGiveNinetyOneLeaves) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Rng rng(seed);
    auto r = random_scenario(100, {0, 100}, 30, 2, 5.0, rng);
    EXPECT_EQ(r.splits, 30u);
    EXPECT_EQ(r.leaves, 91u);
    EXPECT_EQ(r.pruned, 0u);
    EXPECT_EQ(r.partition.size(), 91u);
    EXPECT_TRUE(validate_partition(r.partition).ok());
  }
}

TEST(RandomScenario, LeafCountIsThreeSplitsPlusOne) {
  Rng rng(21);
  for (int trial = 0; trial < 100; ++trial) {
    auto n = uniform_int<std::size_t>(rng, 2, 60);
    auto k = uniform_int<std::size_t>(rng, 0, 40);
    auto r = random_scenario(n, {0, 10}, k, 2, 0.5, rng);
    EXPECT_LE(r.splits, k);
    EXPECT_EQ(r.leaves, 3 * r.splits + 1);
    EXPECT_EQ(r.splits < k, !r.warnings.empty());
  }
}

TEST(RandomScenario, PrunesLeavesUnderTheMinimums) {
  Rng rng(0);
  // root already too short: pruned to the empty community
  auto r = random_scenario(10, {0, 1}, 3, 2, 2.0, rng);
  EXPECT_EQ(r.splits, 0u);
  EXPECT_EQ(r.pruned, 1u);
  EXPECT_TRUE(r.partition.empty());
}

TEST(RandomScenario, ReferenceInstanceStatistics) {
  // |V|=100, T=[0,100), k=30, gamma=0.2: 61 communities, 11.7 nodes and
  // 10.2 time units on average in the reported instance
  double count = 0.0;
  double size = 0.0;
  double duration = 0.0;
  constexpr int kSeeds = 20;
  for (int s = 0; s < kSeeds; ++s) {
    ScenarioParams sp;
    sp.kind = ScenarioKind::kRandom;
    sp.k = 30;
    sp.gamma = 0.2;
    sp.seed = static_cast<std::uint64_t>(s);
    auto p = generate_scenario(sp, 100, {0, 100});
    count += static_cast<double>(p.size());
    double sz = 0.0;
    double du = 0.0;
    for (const auto& m : p.mosaics()) {
      sz += static_cast<double>(m.size());
      du += m.interval.length();
    }
    size += sz / static_cast<double>(p.size());
    duration += du / static_cast<double>(p.size());
  }
  count /= kSeeds;
  size /= kSeeds;
  duration /= kSeeds;
  EXPECT_NEAR(count, 61.0, 0.3 * 61.0);
  EXPECT_NEAR(size, 11.7, 0.3 * 11.7);
  EXPECT_NEAR(duration, 10.2, 0.3 * 10.2);
}

TEST(EmptyMosaics, GammaExtremes) {
  Rng rng(2);
  auto base = random_scenario(50, {0, 50}, 10, 2, 1.0, rng).partition;
  EXPECT_EQ(empty_mosaics(base, 0.0, rng), base);
  EXPECT_TRUE(empty_mosaics(base, 1.0, rng).empty());
  EXPECT_THROW(empty_mosaics(base, 1.5, rng), ParameterError);
}

TEST(EmptyMosaics, SurvivorsUntouchedAndMeanMatchesBinomial) {
  Rng gen(8);
  auto base = random_scenario(100, {0, 100}, 30, 2, 5.0, gen).partition;
  ASSERT_EQ(base.size(), 91u);
  std::vector<int> removed(base.size(), 0);
  double survivors = 0.0;
  constexpr int kSeeds = 1000;
  for (int s = 0; s < kSeeds; ++s) {
    Rng rng(static_cast<std::uint64_t>(s));
    auto p = empty_mosaics(base, 0.2, rng);
    survivors += static_cast<double>(p.size());
    std::set<MosaicId> kept;
    for (const auto& m : p.mosaics()) {
      kept.insert(m.id);
      EXPECT_EQ(m, *base.find(m.id));
    }
    for (std::size_t i = 0; i < base.size(); ++i) removed[i] += !kept.contains(base.mosaics()[i].id);
  }
  EXPECT_NEAR(survivors / kSeeds, 91 * 0.8, 0.01 * 91 * 0.8);

  // removal rate homogeneous across positions: chi-square, 91 cells, p = 0.001
  double chi2 = 0.0;
  double expect = kSeeds * 0.2;
  for (int r : removed) chi2 += (r - expect) * (r - expect) / (kSeeds * 0.2 * 0.8);
  EXPECT_LT(chi2, 138.44);
}

TEST(GenerateScenario, FuzzedOutputsAreValid) {
  Rng rng(99);
  for (int trial = 0; trial < 100; ++trial) {
    ScenarioParams sp;
    sp.kind = trial % 2 ? ScenarioKind::kRandom : ScenarioKind::kSnapshots;
    sp.k = uniform_int<std::size_t>(rng, 1, 40);
    sp.window_mode = trial % 4 < 2 ? WindowMode::kFixed : WindowMode::kVarying;
    sp.gamma = uniform_real(rng, 0, 1);
    sp.seed = trial;
    auto n = uniform_int<std::size_t>(rng, 4, 120);
    auto p = generate_scenario(sp, n, {0, 100});
    EXPECT_TRUE(validate_partition(p).ok()) << validate_partition(p).summary();
  }
}

TEST(GenerateScenario, SameSeedSamePartition) {
  ScenarioParams sp;
  sp.k = 20;
  sp.gamma = 0.3;
  sp.seed = 1234;
  EXPECT_EQ(generate_scenario(sp, 60, {0, 100}), generate_scenario(sp, 60, {0, 100}));
}
