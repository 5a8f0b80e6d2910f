#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/strong_components.hpp>
#include <fmt/format.h>

#include "tempinf/centrality.hpp"
#include "tempinf/errors.hpp"

namespace tempinf {

PowerIterationResult leading_eigenvector(const SupraMatrix& supra, double tol, long max_iter) {
  const auto dim = static_cast<Eigen::Index>(supra.dim());
  PowerIterationResult result;
  result.vector = Eigen::VectorXd::Constant(dim, 1.0 / static_cast<double>(dim));
  const double shift = supra.max_row_sum();
  if (shift == 0.0) return result;  // zero matrix: every vector is an eigenvector

  Eigen::VectorXd& x = result.vector;
  for (long it = 1; it <= max_iter; ++it) {
    Eigen::VectorXd y = supra.apply(x) + shift * x;
    const double norm = y.sum();
    y /= norm;
    result.residual = (y - x).lpNorm<1>();
    result.eigenvalue = norm - shift;
    result.iterations = it;
    x.swap(y);
    if (result.residual < tol) return result;
  }
  throw NumericalError(
      fmt::format("power iteration did not converge in {} steps (residual {:.3e})", max_iter,
                  result.residual),
      result.residual);
}

namespace {

// Perron root of one strongly connected block via power iteration on B + I.
// Collatz-Wielandt bounds bracket the root at every step; stop once the
// bracket is narrower than tol (relative).
double component_radius(const std::vector<std::vector<std::size_t>>& adj, double tol,
                        long max_iter) {
  const std::size_t n = adj.size();
  std::vector<double> x(n, 1.0), y(n);
  double lo = 0.0, hi = 0.0;
  for (long it = 0; it < max_iter; ++it) {
    for (std::size_t i = 0; i < n; ++i) {
      double s = x[i];
      for (std::size_t j : adj[i]) s += x[j];
      y[i] = s;
    }
    lo = std::numeric_limits<double>::infinity();
    hi = 0.0;
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double r = y[i] / x[i];
      lo = std::min(lo, r);
      hi = std::max(hi, r);
      total += y[i];
    }
    if (hi - lo <= tol * std::max(1.0, lo)) break;
    for (std::size_t i = 0; i < n; ++i) x[i] = y[i] / total * static_cast<double>(n);
  }
  return 0.5 * (lo + hi) - 1.0;
}

}  // namespace

double spectral_radius(const SparseMatrix& adjacency, double tol, long max_iter) {
  const auto n = static_cast<std::size_t>(adjacency.rows());
  using Graph = boost::adjacency_list<boost::vecS, boost::vecS, boost::directedS>;
  Graph g(n);
  for (Eigen::Index r = 0; r < adjacency.outerSize(); ++r) {
    for (SparseMatrix::InnerIterator it(adjacency, r); it; ++it) {
      if (it.value() != 0.0) boost::add_edge(static_cast<std::size_t>(it.row()),
                                             static_cast<std::size_t>(it.col()), g);
    }
  }
  std::vector<int> component(n);
  const int num_components =
      n == 0 ? 0 : boost::strong_components(g, boost::make_iterator_property_map(
                                                   component.begin(),
                                                   boost::get(boost::vertex_index, g)));

  std::vector<std::vector<std::size_t>> members(static_cast<std::size_t>(num_components));
  for (std::size_t v = 0; v < n; ++v) members[static_cast<std::size_t>(component[v])].push_back(v);

  double radius = 0.0;
  std::vector<std::size_t> local(n);
  for (const auto& comp : members) {
    if (comp.size() < 2) continue;  // no self-loops, so a singleton is nilpotent
    for (std::size_t i = 0; i < comp.size(); ++i) local[comp[i]] = i;
    const int id = component[comp.front()];
    std::vector<std::vector<std::size_t>> adj(comp.size());
    for (std::size_t i = 0; i < comp.size(); ++i) {
      for (SparseMatrix::InnerIterator it(adjacency, static_cast<Eigen::Index>(comp[i])); it; ++it) {
        const auto w = static_cast<std::size_t>(it.col());
        if (component[w] == id) adj[i].push_back(local[w]);
      }
    }
    radius = std::max(radius, component_radius(adj, tol, max_iter));
  }
  return radius;
}

}  // namespace tempinf
