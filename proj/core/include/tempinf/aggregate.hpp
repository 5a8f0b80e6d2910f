#pragma once

#include <filesystem>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "tempinf/bands.hpp"
#include "tempinf/network.hpp"
#include "tempinf/score_table.hpp"

namespace tempinf {

struct CommunityCentrality {
  std::vector<double> raw;    // mean MNC per community
  std::vector<double> share;  // raw / sum(raw); uniform when the sum is 0
};

/// Marginal community centrality. Throws InputError on an empty community.
CommunityCentrality marginal_community_centrality(std::span<const double> mnc,
                                                  const TemporalNetwork& net);
CommunityCentrality marginal_community_centrality(const ScoreTable& scores,
                                                  const TemporalNetwork& net);

struct CommunityTimeTable {
  Method method = Method::Degree;
  Eigen::MatrixXd cells;    // communities x slices, sums to 1
  std::vector<double> mlc;  // column sums of `cells`
  CommunityCentrality mcc;
};

/// cell(c, t) = mean joint score of c's members in slice t, then the whole
/// table is scaled to sum 1 (left all-zero when every score is zero).
CommunityTimeTable community_time(const ScoreTable& scores, const TemporalNetwork& net);

struct Band1Membership {
  Eigen::MatrixXi counts;       // communities x slices
  std::vector<bool> empty_band;  // per slice: no band-1 nodes at all
};

Band1Membership band1_membership(const BandAssignment& assign, const TemporalNetwork& net);

void write_community_time(const CommunityTimeTable& table, const TemporalNetwork& net,
                          const std::filesystem::path& csv);
void write_band1_membership(const Band1Membership& m, const TemporalNetwork& net,
                            const std::filesystem::path& csv);

}  // namespace tempinf
