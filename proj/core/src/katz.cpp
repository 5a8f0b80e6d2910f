#include <algorithm>
#include <cmath>
#include <memory>

#include <Eigen/SparseLU>
#include <fmt/format.h>

#include "tempinf/centrality.hpp"
#include "tempinf/errors.hpp"

namespace tempinf {

KatzResult temporal_katz(const TemporalNetwork& net, const CentralityConfig& cfg) {
  cfg.validate();
  const int slices = net.num_slices();
  const auto n = static_cast<Eigen::Index>(net.num_nodes());

  std::vector<SparseMatrix> adjacency;
  double zeta_max = 0.0;
  for (int t = 1; t <= slices; ++t) {
    adjacency.push_back(slice_adjacency(net, t));
    zeta_max = std::max(zeta_max, spectral_radius(adjacency.back()));
  }

  KatzResult result;
  result.spectral_radius = zeta_max;
  if (cfg.katz_alpha) {
    result.alpha = *cfg.katz_alpha;
  } else {
    // Acyclic slices put no bound on alpha; fall back to a unit radius.
    const double limit = zeta_max > 0.0 ? 1.0 / zeta_max : 1.0;
    result.alpha = limit - cfg.katz_alpha_margin;
    if (result.alpha <= 0.0) {
      throw ConfigError(fmt::format("margin exceeds 1/zeta: 1/{} - {} <= 0", zeta_max,
                                    cfg.katz_alpha_margin));
    }
  }
  if (zeta_max * result.alpha >= 1.0) {
    throw NumericalError(
        fmt::format("resolvent divergence: alpha {} * zeta {} >= 1", result.alpha, zeta_max),
        zeta_max * result.alpha);
  }

  using ColMajor = Eigen::SparseMatrix<double, Eigen::ColMajor>;
  std::vector<std::unique_ptr<Eigen::SparseLU<ColMajor>>> solvers;
  for (const auto& a : adjacency) {
    ColMajor system(n, n);
    system.setIdentity();
    system -= result.alpha * ColMajor(a);
    auto lu = std::make_unique<Eigen::SparseLU<ColMajor>>();
    lu->compute(system);
    if (lu->info() != Eigen::Success) {
      throw NumericalError("sparse LU failed on I - alpha A");
    }
    solvers.push_back(std::move(lu));
  }

  // row_sums[t] = (I - aA1)^-1 ... (I - aAt)^-1 1, evaluated right to left.
  std::vector<Eigen::VectorXd> row_sums(static_cast<std::size_t>(slices) + 1);
  row_sums[0] = Eigen::VectorXd::Ones(n);
  for (int t = 1; t <= slices; ++t) {
    Eigen::VectorXd y = Eigen::VectorXd::Ones(n);
    for (int s = t; s >= 1; --s) y = solvers[static_cast<std::size_t>(s - 1)]->solve(y);
    if (!y.allFinite()) throw NumericalError("non-finite Katz row sums");
    row_sums[static_cast<std::size_t>(t)] = std::move(y);
  }

  Eigen::MatrixXd joint(n, slices);
  for (int t = 1; t <= slices; ++t) {
    joint.col(t - 1) = (row_sums[static_cast<std::size_t>(t)] -
                        row_sums[static_cast<std::size_t>(t - 1)])
                           .cwiseMax(0.0);
  }
  const auto& q = row_sums.back();
  result.aggregate.assign(q.data(), q.data() + q.size());
  result.table = ScoreTable::from_joint(Method::Katz, std::move(joint), net);
  return result;
}

}  // namespace tempinf
