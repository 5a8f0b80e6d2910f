#pragma once

#include <array>
#include <filesystem>
#include <optional>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "tempinf/network.hpp"

namespace tempinf {

enum class Method { TICM, Degree, Closeness, Eigenvector, PageRank, Katz };

inline constexpr std::array<Method, 6> kAllMethods = {
    Method::TICM,        Method::Degree,   Method::Closeness,
    Method::Eigenvector, Method::PageRank, Method::Katz};

std::string_view method_name(Method m) noexcept;
/// Accepts the names produced by method_name (case-insensitive).
std::optional<Method> parse_method(std::string_view name);

/// Joint node x slice scores for one method plus their marginals.
///   mnc[v] = sum_t joint(v, t)
///   mlc[t] = sum_v joint(v, t)
///   mcc[c] = mean of mnc over the members of community c
struct ScoreTable {
  Method method = Method::Degree;
  Eigen::MatrixXd joint;  // N x T, column t-1 holds slice t
  std::vector<double> mnc;
  std::vector<double> mlc;
  std::vector<double> mcc;  // indexed by CommunityId

  /// Fills the marginals from `joint`. Throws InputError on negative or
  /// non-finite entries or on a shape mismatch with `net`.
  static ScoreTable from_joint(Method method, Eigen::MatrixXd joint,
                               const TemporalNetwork& net);

  std::size_t num_nodes() const noexcept { return static_cast<std::size_t>(joint.rows()); }
  int num_slices() const noexcept { return static_cast<int>(joint.cols()); }

  /// Scores of every node in slice t (1-based).
  std::vector<double> slice_scores(int t) const;
};

/// CSV `node,community,t1..tT,mnc` plus a side file holding the `mlc` row
/// and one `mcc` row per community.
void write_score_table(const ScoreTable& table, const TemporalNetwork& net,
                       const std::filesystem::path& csv,
                       const std::filesystem::path& summary_csv);

/// Reads the main CSV back; node order follows `net`.
ScoreTable read_score_table(Method method, const TemporalNetwork& net,
                            const std::filesystem::path& csv);

}  // namespace tempinf
