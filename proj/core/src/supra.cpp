#include "tempinf/supra.hpp"

#include <cmath>

#include <fmt/format.h>
#include <zlib.h>

#include "tempinf/errors.hpp"

namespace tempinf {

namespace {

using Triplets = std::vector<Eigen::Triplet<double>>;

// Forward-coupled layout shared by the Kim-Anderson and cascade matrices:
// block (k, k+1) = weight * A^(k+1) + I for k = 0..T-1, last block row empty.
SupraMatrix build_forward(const TemporalNetwork& net, double weight, SupraKind kind) {
  const std::size_t n = net.num_nodes();
  const int slices = net.num_slices();
  SupraMatrix out;
  out.kind = kind;
  out.block_dim = n;
  out.layers = slices + 1;

  Triplets triplets;
  triplets.reserve(net.total_edges() + n * static_cast<std::size_t>(slices));
  for (int t = 1; t <= slices; ++t) {
    const std::size_t row0 = static_cast<std::size_t>(t - 1) * n;
    const std::size_t col0 = static_cast<std::size_t>(t) * n;
    for (NodeId v = 0; v < n; ++v) triplets.emplace_back(row0 + v, col0 + v, 1.0);
    for (const Edge& e : net.slice(t)) triplets.emplace_back(row0 + e.src, col0 + e.dst, weight);
  }
  const auto dim = static_cast<Eigen::Index>(out.dim());
  out.matrix.resize(dim, dim);
  out.matrix.setFromTriplets(triplets.begin(), triplets.end());
  return out;
}

}  // namespace

SupraMatrix build_kim_anderson(const TemporalNetwork& net) {
  return build_forward(net, 1.0, SupraKind::KimAnderson);
}

SupraMatrix build_cascade(const TemporalNetwork& net, double rho) {
  if (!(rho > 0.0 && rho <= 1.0)) {
    throw ConfigError(fmt::format("rho must lie in (0, 1], got {}", rho));
  }
  SupraMatrix out = build_forward(net, rho, SupraKind::Cascade);
  out.rho = rho;
  return out;
}

SupraMatrix build_taylor(const TemporalNetwork& net, const std::vector<SliceOperator>& per_slice,
                         double epsilon) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw ConfigError(fmt::format("epsilon must be positive, got {}", epsilon));
  }
  const int slices = net.num_slices();
  if (per_slice.size() != static_cast<std::size_t>(slices)) {
    throw ConfigError(fmt::format("expected {} slice matrices, got {}", slices, per_slice.size()));
  }
  const std::size_t n = net.num_nodes();
  SupraMatrix out;
  out.kind = SupraKind::TaylorEpsilon;
  out.block_dim = n;
  out.layers = slices;
  out.epsilon = epsilon;

  Triplets triplets;
  for (int t = 0; t < slices; ++t) {
    const SparseMatrix& c = per_slice[static_cast<std::size_t>(t)].sparse;
    if (static_cast<std::size_t>(c.rows()) != n || static_cast<std::size_t>(c.cols()) != n) {
      throw ConfigError(fmt::format("slice matrix {} has wrong shape", t + 1));
    }
    const std::size_t base = static_cast<std::size_t>(t) * n;
    for (Eigen::Index r = 0; r < c.outerSize(); ++r) {
      for (SparseMatrix::InnerIterator it(c, r); it; ++it) {
        if (it.value() != 0.0) {
          triplets.emplace_back(base + it.row(), base + it.col(), epsilon * it.value());
        }
      }
    }
    if (t + 1 < slices) {
      const std::size_t next = base + n;
      for (std::size_t v = 0; v < n; ++v) {
        triplets.emplace_back(base + v, next + v, 1.0);
        triplets.emplace_back(next + v, base + v, 1.0);
      }
    }
    out.layer_fill.push_back(epsilon * per_slice[static_cast<std::size_t>(t)].dense_fill);
  }
  const auto dim = static_cast<Eigen::Index>(out.dim());
  out.matrix.resize(dim, dim);
  out.matrix.setFromTriplets(triplets.begin(), triplets.end());
  return out;
}

Eigen::VectorXd SupraMatrix::apply(const Eigen::VectorXd& x) const {
  Eigen::VectorXd y = matrix * x;
  const auto n = static_cast<Eigen::Index>(block_dim);
  for (std::size_t k = 0; k < layer_fill.size(); ++k) {
    if (layer_fill[k] == 0.0) continue;
    const auto offset = static_cast<Eigen::Index>(k) * n;
    const double add = layer_fill[k] * x.segment(offset, n).sum();
    y.segment(offset, n).array() += add;
  }
  return y;
}

double SupraMatrix::max_row_sum() const {
  double best = 0.0;
  for (Eigen::Index r = 0; r < matrix.outerSize(); ++r) {
    double s = 0.0;
    for (SparseMatrix::InnerIterator it(matrix, r); it; ++it) s += it.value();
    if (!layer_fill.empty()) {
      s += layer_fill[static_cast<std::size_t>(r) / block_dim] * static_cast<double>(block_dim);
    }
    best = std::max(best, s);
  }
  return best;
}

Eigen::MatrixXd SupraMatrix::to_dense() const {
  Eigen::MatrixXd d = Eigen::MatrixXd(matrix);
  const auto n = static_cast<Eigen::Index>(block_dim);
  for (std::size_t k = 0; k < layer_fill.size(); ++k) {
    const auto offset = static_cast<Eigen::Index>(k) * n;
    d.block(offset, offset, n, n).array() += layer_fill[k];
  }
  return d;
}

void dump_supra_matrix(const SupraMatrix& m, const std::filesystem::path& gz_file) {
  gzFile f = gzopen(gz_file.string().c_str(), "wb");
  if (f == nullptr) throw InputError(fmt::format("cannot write {}", gz_file.string()));
  auto write = [&](const std::string& s) {
    if (gzwrite(f, s.data(), static_cast<unsigned>(s.size())) != static_cast<int>(s.size())) {
      gzclose(f);
      throw InputError(fmt::format("write failed on {}", gz_file.string()));
    }
  };
  write(fmt::format("# dim {} block_dim {} layers {}\n", m.dim(), m.block_dim, m.layers));
  for (std::size_t k = 0; k < m.layer_fill.size(); ++k) {
    if (m.layer_fill[k] != 0.0) write(fmt::format("# layer {} dense_fill {:.17g}\n", k, m.layer_fill[k]));
  }
  for (Eigen::Index r = 0; r < m.matrix.outerSize(); ++r) {
    for (SparseMatrix::InnerIterator it(m.matrix, r); it; ++it) {
      write(fmt::format("{} {} {:.17g}\n", it.row(), it.col(), it.value()));
    }
  }
  gzclose(f);
}

}  // namespace tempinf
