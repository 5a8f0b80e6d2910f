#pragma once

#include <optional>
#include <vector>

#include "tempinf/network.hpp"
#include "tempinf/score_table.hpp"
#include "tempinf/supra.hpp"

namespace tempinf {

struct CentralityConfig {
  double epsilon = 1.0;
  double pagerank_p = 0.85;
  double katz_alpha_margin = 1e-2;
  /// Overrides the alpha derived from the spectral radius when set.
  std::optional<double> katz_alpha;
  double power_iter_tol = 1e-10;
  long power_iter_max = 100000;

  /// Throws ConfigError when a field is out of range.
  void validate() const;
};

/// (in + out degree of v in slice t) / (2 (N - 1)).
ScoreTable temporal_degree(const TemporalNetwork& net);

/// joint(v, t) = sum over u != v of 1 / distance, where the distance counts
/// slice transitions of the earliest time-respecting path leaving v in
/// slice t. Unreachable nodes contribute nothing.
ScoreTable temporal_closeness(const TemporalNetwork& net);

/// Closeness over the interval [first, last): sum of joint(v, t) for
/// first <= t < last.
std::vector<double> closeness_interval(const ScoreTable& closeness, int first, int last);

/// Right leading eigenvector of the supra-centrality matrix built from the
/// slice adjacencies; normalised to sum 1.
ScoreTable temporal_eigenvector(const TemporalNetwork& net, const CentralityConfig& cfg);

/// Column-stochastic PageRank matrix for slice t:
///   p A^T D^-1 + (1 - p)/N 1 1^T, with a self-edge on dangling nodes.
SliceOperator pagerank_slice_matrix(const TemporalNetwork& net, int t, double p);

ScoreTable temporal_pagerank(const TemporalNetwork& net, const CentralityConfig& cfg);

struct KatzResult {
  ScoreTable table;
  /// Row sums of the full resolvent product.
  std::vector<double> aggregate;
  double alpha = 0.0;
  double spectral_radius = 0.0;  // max over slices
};

/// Row sums of prod_t (I - alpha A^(t))^-1 via sparse LU solves; joint
/// scores telescope the partial products so that sum_t joint = Q - 1.
KatzResult temporal_katz(const TemporalNetwork& net, const CentralityConfig& cfg);

// --- spectral helpers --------------------------------------------------

struct PowerIterationResult {
  Eigen::VectorXd vector;  // nonnegative, sums to 1
  double eigenvalue = 0.0;  // of the unshifted matrix
  long iterations = 0;
  double residual = 0.0;
};

/// Power iteration on S + c I with c = max row sum of S, uniform start.
/// Throws NumericalError carrying the last residual on non-convergence.
PowerIterationResult leading_eigenvector(const SupraMatrix& supra, double tol,
                                         long max_iter);

/// Spectral radius of a nonnegative 0/1 adjacency matrix. Returns exactly
/// 0 for acyclic (nilpotent) slices.
double spectral_radius(const SparseMatrix& adjacency, double tol = 1e-8,
                       long max_iter = 200000);

}  // namespace tempinf
