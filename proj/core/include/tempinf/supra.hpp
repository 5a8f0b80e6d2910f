#pragma once

#include <cstddef>
#include <filesystem>
#include <vector>

#include "tempinf/network.hpp"

namespace tempinf {

enum class SupraKind { KimAnderson, TaylorEpsilon, Cascade };

/// A per-slice centrality matrix stored as sparse part plus a constant
/// dense term: C = sparse + dense_fill * 1 1^T. PageRank's teleportation
/// lives in dense_fill so no N x N dense block is ever materialised.
struct SliceOperator {
  SparseMatrix sparse;
  double dense_fill = 0.0;
};

/// Block supra-matrix over `layers` copies of an N-node slice.
///   KimAnderson:   blocks (k, k+1) = A^(k+1) + I,        layers = T + 1
///   Cascade:       blocks (k, k+1) = rho A^(k+1) + I,    layers = T + 1
///   TaylorEpsilon: diagonal eps C^(t), I above and below, layers = T
/// Global index of (node v, layer k) is k * N + v.
struct SupraMatrix {
  SupraKind kind = SupraKind::KimAnderson;
  SparseMatrix matrix;
  std::size_t block_dim = 0;
  int layers = 0;
  double epsilon = 0.0;  // TaylorEpsilon only
  double rho = 0.0;      // Cascade only
  /// Per layer constant added to every entry of the diagonal block
  /// (TaylorEpsilon only; already multiplied by epsilon).
  std::vector<double> layer_fill;

  std::size_t dim() const noexcept { return block_dim * static_cast<std::size_t>(layers); }

  /// y = S x, including the dense per-layer terms.
  Eigen::VectorXd apply(const Eigen::VectorXd& x) const;
  /// Largest row sum including dense terms.
  double max_row_sum() const;
  /// Dense copy; intended for tests and small debug dumps.
  Eigen::MatrixXd to_dense() const;
};

SupraMatrix build_kim_anderson(const TemporalNetwork& net);

/// Throws ConfigError unless epsilon > 0 and per_slice has T entries.
SupraMatrix build_taylor(const TemporalNetwork& net,
                         const std::vector<SliceOperator>& per_slice,
                         double epsilon = 1.0);

/// Throws ConfigError unless 0 < rho <= 1.
SupraMatrix build_cascade(const TemporalNetwork& net, double rho);

/// Writes `row col value` triplets (sparse part only) gzip-compressed.
void dump_supra_matrix(const SupraMatrix& m, const std::filesystem::path& gz_file);

}  // namespace tempinf
