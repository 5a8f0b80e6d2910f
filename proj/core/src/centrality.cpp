#include "tempinf/centrality.hpp"

#include <cmath>

#include <fmt/format.h>

#include "tempinf/errors.hpp"

namespace tempinf {

void CentralityConfig::validate() const {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw ConfigError(fmt::format("epsilon must be positive, got {}", epsilon));
  }
  if (!(pagerank_p >= 0.0 && pagerank_p <= 1.0)) {
    throw ConfigError(fmt::format("pagerank p must lie in [0, 1], got {}", pagerank_p));
  }
  if (!(katz_alpha_margin > 0.0)) throw ConfigError("katz alpha margin must be positive");
  if (katz_alpha && !(*katz_alpha > 0.0)) throw ConfigError("katz alpha must be positive");
  if (!(power_iter_tol > 0.0)) throw ConfigError("power iteration tolerance must be positive");
  if (power_iter_max < 1) throw ConfigError("power iteration cap must be at least 1");
}

ScoreTable temporal_degree(const TemporalNetwork& net) {
  const std::size_t n = net.num_nodes();
  const int slices = net.num_slices();
  Eigen::MatrixXd joint = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), slices);
  if (n > 1) {
    const double norm = 2.0 * static_cast<double>(n - 1);
    for (int t = 1; t <= slices; ++t) {
      for (const Edge& e : net.slice(t)) {
        joint(e.src, t - 1) += 1.0;
        joint(e.dst, t - 1) += 1.0;
      }
    }
    joint /= norm;
  }
  return ScoreTable::from_joint(Method::Degree, std::move(joint), net);
}

std::vector<double> closeness_interval(const ScoreTable& closeness, int first, int last) {
  if (first < 1 || last > closeness.num_slices() + 1 || first > last) {
    throw InputError(fmt::format("interval [{}, {}) outside the network", first, last));
  }
  std::vector<double> out(closeness.num_nodes(), 0.0);
  for (std::size_t v = 0; v < out.size(); ++v) {
    for (int t = first; t < last; ++t) out[v] += closeness.joint(static_cast<Eigen::Index>(v), t - 1);
  }
  return out;
}

namespace {

ScoreTable eigen_scores(Method method, const TemporalNetwork& net,
                        const std::vector<SliceOperator>& per_slice,
                        const CentralityConfig& cfg) {
  const SupraMatrix supra = build_taylor(net, per_slice, cfg.epsilon);
  const auto power = leading_eigenvector(supra, cfg.power_iter_tol, cfg.power_iter_max);
  const auto n = static_cast<Eigen::Index>(net.num_nodes());
  Eigen::MatrixXd joint(n, net.num_slices());
  for (int t = 0; t < net.num_slices(); ++t) {
    // Round-off can leave components a hair below zero on zero-score nodes.
    joint.col(t) = power.vector.segment(t * n, n).cwiseMax(0.0);
  }
  const double total = joint.sum();
  if (total > 0.0) joint /= total;
  return ScoreTable::from_joint(method, std::move(joint), net);
}

}  // namespace

ScoreTable temporal_eigenvector(const TemporalNetwork& net, const CentralityConfig& cfg) {
  cfg.validate();
  std::vector<SliceOperator> per_slice;
  for (int t = 1; t <= net.num_slices(); ++t) per_slice.push_back({slice_adjacency(net, t), 0.0});
  return eigen_scores(Method::Eigenvector, net, per_slice, cfg);
}

SliceOperator pagerank_slice_matrix(const TemporalNetwork& net, int t, double p) {
  const std::size_t n = net.num_nodes();
  const auto edges = net.slice(t);
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(edges.size() + n);
  for (NodeId v = 0; v < n; ++v) {
    const auto out = net.out_neighbors(t, v);
    if (out.empty()) {
      triplets.emplace_back(v, v, p);  // dangling node keeps a self-edge
      continue;
    }
    const double w = p / static_cast<double>(out.size());
    for (NodeId u : out) triplets.emplace_back(u, v, w);
  }
  SliceOperator op;
  op.sparse.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  op.sparse.setFromTriplets(triplets.begin(), triplets.end());
  op.dense_fill = n == 0 ? 0.0 : (1.0 - p) / static_cast<double>(n);
  return op;
}

ScoreTable temporal_pagerank(const TemporalNetwork& net, const CentralityConfig& cfg) {
  cfg.validate();
  std::vector<SliceOperator> per_slice;
  for (int t = 1; t <= net.num_slices(); ++t) {
    per_slice.push_back(pagerank_slice_matrix(net, t, cfg.pagerank_p));
  }
  return eigen_scores(Method::PageRank, net, per_slice, cfg);
}

}  // namespace tempinf
