#pragma once

// Partition comparison (NMI) and smoothness scores of dynamic partitions.

#include <span>
#include <vector>

#include "mosaic/core.hpp"
#include "mosaic/snapshot.hpp"

namespace mosaic {

struct ScoreReport {
  std::vector<double> per_window_nmi;
  double mean_nmi = 0.0;
  double mosaic_nmi = 0.0;
  double sm_p = 0.0;
  double sm_n = 0.0;
  double sm_l = 0.0;
};

/// NMI with sum normalization 2 I / (H_a + H_b); 1 when both entropies
/// vanish. Throws ParameterError when the labelings differ in length.
double nmi(std::span<const Label> a, std::span<const Label> b);

/// Same measure over weighted items: item i carries weight[i] >= 0.
double weighted_nmi(std::span<const Label> a, std::span<const Label> b, std::span<const double> weight);

/// Exact NMI over V x T under the product of counting and Lebesgue measure;
/// the empty community is one label. Throws ParameterError when the node
/// sets or domains differ.
double mosaic_nmi(const MosaicPartition& p1, const MosaicPartition& p2);

/// Time-weighted NMI between a ground-truth partition and a dynamic
/// partition laid on the window grid `boundaries`.
double mosaic_nmi(const MosaicPartition& truth, const DynamicPartition& d, std::span<const double> boundaries);

/// Mean NMI between consecutive windows (labels ignored). Needs >= 2 windows.
double sm_p(const DynamicPartition& d);

/// 1 - mean fraction of nodes changing label between consecutive windows.
/// Needs >= 2 windows.
double sm_n(const DynamicPartition& d);

/// Mean over nodes of 1 / (number of constant-label runs). Needs >= 1 window.
double sm_l(const DynamicPartition& d);

/// Scores `detected` against `truth` projected on the same windows.
ScoreReport score(const DynamicPartition& detected, const DynamicPartition& projected_truth,
                  const MosaicPartition& truth, std::span<const double> boundaries);

}  // namespace mosaic
