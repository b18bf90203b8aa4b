#pragma once

// Experiment pipeline: scenario -> emptying -> edges -> rewiring, window
// aggregation, detection, scoring, and the phi sweep.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "mosaic/core.hpp"
#include "mosaic/detect.hpp"
#include "mosaic/edgegen.hpp"
#include "mosaic/metrics.hpp"
#include "mosaic/scenario.hpp"

namespace mosaic {

struct SweepSpec {
  std::vector<double> phis{0.0, 0.1, 0.2, 0.3, 0.4, 0.5};
  std::size_t seeds = 10;
};

struct RunConfig {
  std::size_t nodes = 100;
  TimeInterval domain{0.0, 100.0};
  ScenarioParams scenario;
  EdgeGenParams edges;
  double window = 2.0;
  std::vector<DetectorConfig> detectors;
  std::optional<SweepSpec> sweep;
  std::string out_dir = ".";
  std::uint64_t seed = 0;
  unsigned threads = 1;

  /// |V| = 100, T = [0, 100), random scenario k = 30 with gamma = 0.2,
  /// alpha = 0.9, beta = 0.1, lambda_in = 0.4, lambda_ext = 0.1, no
  /// rewiring, window 2, all four detectors with theta = 0.3.
  static RunConfig defaults();

  /// Throws ParameterError on an inconsistent configuration.
  void validate() const;

  /// Everything that determines generated data (threads and out_dir are
  /// left out so outputs do not depend on them).
  nlohmann::json to_json() const;
  /// Missing keys keep their defaults(). Throws ParseError / ParameterError.
  static RunConfig from_json(const nlohmann::json& j);
};

struct InstanceSummary {
  std::size_t community_count = 0;
  double mean_size = 0.0;
  double mean_duration = 0.0;
  std::size_t edge_count = 0;
  std::size_t internal_edges = 0;
  std::size_t external_edges = 0;
  std::size_t empty_edges = 0;

  nlohmann::json to_json() const;
};

InstanceSummary summarize(const MosaicPartition& truth, const LinkStream& stream);

struct Instance {
  MosaicPartition truth;
  LinkStream stream;
  InstanceSummary summary;
};

/// Runs the five generation steps with substreams of `seed`. The scenario
/// depends only on `seed`, so instances differing only in edge parameters
/// share their ground truth.
Instance generate_instance(const RunConfig& config, std::uint64_t seed);

nlohmann::json manifest(const RunConfig& config, const Instance& instance);

struct EvalRow {
  std::string method;
  ScoreReport report;
};

/// Aggregates, projects the truth, and scores every detector. With
/// `truth_passthrough` an extra "truth" row scores the projection itself.
std::vector<EvalRow> evaluate(const MosaicPartition& truth, const LinkStream& stream, double window,
                              const std::vector<DetectorConfig>& detectors, bool truth_passthrough = false);

std::string report_csv(const std::vector<EvalRow>& rows);

struct SweepRow {
  double phi;
  std::size_t seed_index;
  Method method;
  double mean_nmi;
  double sm_p;
  double sm_n;
  double sm_l;
};

struct SweepResult {
  std::vector<SweepRow> rows;  // ordered by (phi, seed, method)
};

/// For each phi (alpha = 1 - phi, beta = phi) and each seed index: generate,
/// aggregate, detect, score. Points run on config.threads workers.
SweepResult run_sweep(const RunConfig& config);

std::string sweep_csv(const SweepResult& r);
/// Mean of each score per (phi, method).
std::string sweep_summary_csv(const SweepResult& r);

/// Seed of the i-th sweep instance.
std::uint64_t instance_seed(std::uint64_t master, std::size_t index);

}  // namespace mosaic
