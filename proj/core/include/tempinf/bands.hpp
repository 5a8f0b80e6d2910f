#pragma once

#include <array>
#include <filesystem>
#include <span>
#include <vector>

#include "tempinf/network.hpp"
#include "tempinf/score_table.hpp"

namespace tempinf {

struct ClusterResult {
  std::vector<BandId> bands;  // per node
  int elbow_k = 0;            // cluster count picked by the elbow rule
  bool degenerate = false;    // fewer than 3 distinct scores
};

/// 1-D complete-linkage clustering into three bands (band 1 = highest mean).
ClusterResult cluster_bands(std::span<const double> scores);

using FlowMatrix = std::array<std::array<long, kNumBands>, kNumBands>;

struct BandAssignment {
  BandSeries bands;  // [slice-1][node]
  std::vector<bool> degenerate;  // per slice

  int num_slices() const noexcept { return static_cast<int>(bands.size()); }
  std::size_t num_nodes() const noexcept { return bands.empty() ? 0 : bands.front().size(); }
  std::array<long, kNumBands> populations(int t) const;
};

/// Clusters each slice column of `table` independently.
BandAssignment assign_bands(const ScoreTable& table);

/// Bands of the marginal node centrality (single pseudo-slice).
BandAssignment assign_mnc_bands(const ScoreTable& table);

/// flows[t-1][i][j] counts nodes in band i+1 at slice t and band j+1 at t+1.
std::vector<FlowMatrix> band_flow(const BandAssignment& assign);

struct AccuracyReport {
  std::vector<double> per_slice;
  double overall = 0.0;
  /// (slice, band) pairs whose reference band was empty.
  std::vector<std::pair<int, BandId>> empty_reference_bands;
};

/// Mean per-band recall per slice; overall is the mean over slices.
AccuracyReport balanced_accuracy(const BandAssignment& predicted,
                                 const BandAssignment& truth);

/// balanced_accuracy with `reference` as truth. Not symmetric.
AccuracyReport method_agreement(const BandAssignment& a, const BandAssignment& reference);

BandAssignment truth_assignment(const TemporalNetwork& net);

void write_band_assignment(const BandAssignment& assign, const TemporalNetwork& net,
                           const std::filesystem::path& csv);
BandAssignment read_band_assignment(const TemporalNetwork& net,
                                    const std::filesystem::path& csv);
/// Long format `t,from_band,to_band,count`.
void write_band_flow(const std::vector<FlowMatrix>& flows, const std::filesystem::path& csv);

}  // namespace tempinf
