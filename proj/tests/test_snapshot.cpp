#include <gtest/gtest.h>

#include <map>

#include "mosaic/errors.hpp"
#include "mosaic/scenario.hpp"
#include "mosaic/snapshot.hpp"

using namespace mosaic;

TEST(WindowBoundaries, EvenAndRaggedSplits) {
  EXPECT_EQ(window_boundaries({0, 10}, 2.0), (std::vector<double>{0, 2, 4, 6, 8, 10}));
  EXPECT_EQ(window_boundaries({0, 10}, 3.0), (std::vector<double>{0, 3, 6, 9, 10}));
  EXPECT_EQ(window_boundaries({0, 10}, 20.0), (std::vector<double>{0, 10}));
  EXPECT_EQ(window_boundaries({0, 100}, 2.0).size(), 51u);
  EXPECT_THROW(window_boundaries({0, 10}, 0.0), ParameterError);
}

TEST(WindowIndex, HalfOpenWindows) {
  std::vector<double> b{0, 2, 4, 6};
  EXPECT_EQ(window_index(b, 0.0), 0u);
  EXPECT_EQ(window_index(b, 1.999), 0u);
  EXPECT_EQ(window_index(b, 2.0), 1u);
  EXPECT_EQ(window_index(b, 5.9), 2u);
}

TEST(WeightedGraph, FromEntriesMergesAndDrops) {
  auto g = WeightedGraph::from_entries(4, {{1, 0, 1.0}, {0, 1, 2.0}, {2, 2, 5.0}, {2, 3, 0.0}, {3, 1, 1.5}});
  ASSERT_EQ(g.edges.size(), 2u);
  EXPECT_EQ(g.edges[0], (WeightedEdge{0, 1, 3.0}));
  EXPECT_EQ(g.edges[1], (WeightedEdge{1, 3, 1.5}));
  EXPECT_DOUBLE_EQ(g.total_weight(), 4.5);
  EXPECT_EQ(g.strengths(), (std::vector<double>{3.0, 4.5, 0.0, 1.5}));
  EXPECT_THROW(WeightedGraph::from_entries(2, {{0, 2, 1.0}}), DomainError);
}

TEST(Aggregate, CountsEdgesPerWindow) {
  LinkStream ls{3, {0, 6}, {{0, 1, 0.5}, {0, 1, 1.5}, {1, 2, 2.0}, {0, 1, 3.9}, {0, 2, 5.99}}};
  auto s = aggregate(ls, 2.0);
  ASSERT_EQ(s.window_count(), 3u);
  EXPECT_EQ(s.graphs[0].edges, (std::vector<WeightedEdge>{{0, 1, 2.0}}));
  EXPECT_EQ(s.graphs[1].edges, (std::vector<WeightedEdge>{{0, 1, 1.0}, {1, 2, 1.0}}));
  EXPECT_EQ(s.graphs[2].edges, (std::vector<WeightedEdge>{{0, 2, 1.0}}));
  EXPECT_EQ(s.window(1), (TimeInterval{2, 4}));
}

TEST(Aggregate, TotalWeightIsEdgeCount) {
  Rng rng(3);
  std::vector<TemporalEdge> edges;
  for (int i = 0; i < 2000; ++i) {
    auto u = uniform_int<NodeId>(rng, 0, 9);
    auto v = uniform_int<NodeId>(rng, 0, 9);
    if (u != v) edges.emplace_back(u, v, uniform_real(rng, 0, 25));
  }
  LinkStream ls{10, {0, 25}, edges};
  auto s = aggregate(ls, 3.0);
  double total = 0.0;
  for (const auto& g : s.graphs) total += g.total_weight();
  EXPECT_DOUBLE_EQ(total, static_cast<double>(ls.size()));
}

TEST(ProjectGroundTruth, MajorityShare) {
  MosaicPartition p{3, {0, 4}, {Mosaic{5, {0, 1}, {0, 1.5}}, Mosaic{7, {0, 2}, {1.5, 4}}}};
  auto d = project_ground_truth(p, std::vector<double>{0, 2, 4});
  // window [0,2): node 0 is 1.5 in mosaic 5 and 0.5 in 7
  EXPECT_EQ(d.labels[0], (std::vector<Label>{5, 5, kEmptyMosaic}));
  EXPECT_EQ(d.labels[1], (std::vector<Label>{7, kEmptyMosaic, 7}));
}

TEST(ProjectGroundTruth, TiesGoToEarliestThenSmallestId) {
  MosaicPartition p{2, {0, 2}, {Mosaic{9, {0, 1}, {0, 1}}, Mosaic{4, {0, 1}, {1, 2}}}};
  auto d = project_ground_truth(p, std::vector<double>{0, 2});
  EXPECT_EQ(d.labels[0], (std::vector<Label>{9, 9}));

  // node 1: empty community on [0,1), mosaic 3 on [1,2): the gap starts first
  MosaicPartition q{2, {0, 2}, {Mosaic{3, {1}, {1, 2}}}};
  EXPECT_EQ(project_ground_truth(q, std::vector<double>{0, 2}).labels[0][1], kEmptyMosaic);
  MosaicPartition r{2, {0, 2}, {Mosaic{3, {1}, {0, 1}}}};
  EXPECT_EQ(project_ground_truth(r, std::vector<double>{0, 2}).labels[0][1], 3);
}

TEST(ProjectGroundTruth, AlignedMosaicsProjectExactly) {
  Rng rng(4);
  for (int trial = 0; trial < 20; ++trial) {
    auto p = snapshot_scenario(30, {0, 20}, 5, WindowMode::kFixed, rng);
    auto d = project_ground_truth(p, window_boundaries({0, 20}, 2.0));
    for (std::size_t w = 0; w < d.window_count(); ++w)
      for (NodeId v = 0; v < 30; ++v) EXPECT_EQ(d.labels[w][v], membership(p, v, 2.0 * w + 1.0));
  }
}
