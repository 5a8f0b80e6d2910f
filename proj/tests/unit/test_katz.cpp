#include <Eigen/Eigenvalues>
#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "tempinf/centrality.hpp"
#include "tempinf/errors.hpp"

using namespace tempinf;
using tempinf::testing::single_community;

namespace {

// Random DAG slices: edges only from lower to higher index, so every
// adjacency is nilpotent and its Neumann series terminates.
TemporalNetwork random_dag(std::size_t n, int slices, double p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(p);
  std::vector<std::vector<Edge>> edges(static_cast<std::size_t>(slices));
  for (auto& s : edges) {
    for (NodeId u = 0; u < n; ++u) {
      for (NodeId v = u + 1; v < n; ++v) {
        if (coin(rng)) s.push_back({u, v});
      }
    }
  }
  return single_community(n, std::move(edges));
}

// Product of truncated series sum_{k < N} alpha^k A^k over slices.
Eigen::MatrixXd series_product(const TemporalNetwork& net, double alpha, int upto) {
  const auto n = static_cast<Eigen::Index>(net.num_nodes());
  Eigen::MatrixXd product = Eigen::MatrixXd::Identity(n, n);
  for (int t = 1; t <= upto; ++t) {
    const Eigen::MatrixXd a = Eigen::MatrixXd(slice_adjacency(net, t));
    Eigen::MatrixXd term = Eigen::MatrixXd::Identity(n, n);
    Eigen::MatrixXd sum = term;
    for (Eigen::Index k = 1; k < n; ++k) {
      term = alpha * term * a;
      sum += term;
    }
    product = product * sum;
  }
  return product;
}

CentralityConfig with_alpha(double alpha) {
  CentralityConfig cfg;
  cfg.katz_alpha = alpha;
  return cfg;
}

}  // namespace

TEST(Katz, EdgelessNetworkHasUnitAggregate) {
  const auto k = temporal_katz(single_community(4, {{}, {}, {}}), {});
  for (double q : k.aggregate) EXPECT_DOUBLE_EQ(q, 1.0);
  EXPECT_EQ(k.table.joint.cwiseAbs().maxCoeff(), 0.0);
  EXPECT_EQ(k.spectral_radius, 0.0);
}

TEST(Katz, TwoNodeHandExample) {
  const auto k = temporal_katz(single_community(2, {{{0, 1}}}), with_alpha(0.5));
  EXPECT_DOUBLE_EQ(k.aggregate[0], 1.5);
  EXPECT_DOUBLE_EQ(k.aggregate[1], 1.0);
  EXPECT_DOUBLE_EQ(k.alpha, 0.5);
}

TEST(Katz, ResolventMatchesTruncatedSeriesOnDags) {
  for (std::uint64_t seed : {1, 2, 3, 4, 5}) {
    const auto net = random_dag(5, 3, 0.5, seed);
    const double alpha = 0.3;
    const auto k = temporal_katz(net, with_alpha(alpha));
    const Eigen::VectorXd q = series_product(net, alpha, 3).rowwise().sum();
    for (Eigen::Index v = 0; v < 5; ++v) EXPECT_NEAR(k.aggregate[v], q(v), 1e-8) << seed;
    // Joint scores telescope: slice t adds the growth of the partial product.
    for (int t = 1; t <= 3; ++t) {
      const Eigen::VectorXd growth = series_product(net, alpha, t).rowwise().sum() -
                                     series_product(net, alpha, t - 1).rowwise().sum();
      EXPECT_LT((k.table.joint.col(t - 1) - growth).cwiseAbs().maxCoeff(), 1e-8);
    }
    EXPECT_NEAR(k.table.joint.sum(), q.sum() - 5.0, 1e-8);
  }
}

TEST(Katz, TinyAlphaApproachesOne) {
  const auto net = tempinf::testing::random_network(20, 2, 0.2, 3);
  const auto k = temporal_katz(net, with_alpha(1e-6));
  for (double q : k.aggregate) EXPECT_NEAR(q, 1.0, 1e-3);
}

TEST(Katz, DefaultAlphaSitsJustBelowTheSpectralBound) {
  std::vector<Edge> cycle = {{0, 1}, {1, 2}, {2, 0}, {0, 2}};
  const auto net = single_community(3, {cycle, {{0, 1}}});
  const auto k = temporal_katz(net, {});
  const double zeta = Eigen::MatrixXd(slice_adjacency(net, 1)).eigenvalues().cwiseAbs().maxCoeff();
  EXPECT_NEAR(k.spectral_radius, zeta, 1e-6);
  EXPECT_NEAR(k.alpha, 1.0 / zeta - 1e-2, 1e-6);
  for (double q : k.aggregate) EXPECT_GT(q, 1.0);
}

TEST(Katz, RejectsDivergentParameters) {
  std::vector<Edge> both = {{0, 1}, {1, 0}, {1, 2}, {2, 1}};
  const auto net = single_community(3, {both});  // spectral radius sqrt(2)
  CentralityConfig margin;
  margin.katz_alpha_margin = 0.8;
  EXPECT_THROW(temporal_katz(net, margin), ConfigError);
  EXPECT_THROW(temporal_katz(net, with_alpha(0.75)), NumericalError);
  EXPECT_THROW(temporal_katz(net, with_alpha(-1.0)), ConfigError);
}
