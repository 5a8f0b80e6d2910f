#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/SparseCore>

namespace tempinf {

using NodeId = std::uint32_t;
using CommunityId = std::uint32_t;

/// Row-major sparse matrix. Row = source, column = destination everywhere.
using SparseMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor>;

/// Influence band; 1 is the most influential.
enum class BandId : std::uint8_t { One = 1, Two = 2, Three = 3 };

inline constexpr int kNumBands = 3;

constexpr int band_index(BandId b) noexcept { return static_cast<int>(b) - 1; }
constexpr BandId band_from_index(int i) noexcept {
  return static_cast<BandId>(i + 1);
}

struct Edge {
  NodeId src = 0;
  NodeId dst = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Per-slice band labels, indexed [slice - 1][node].
using BandSeries = std::vector<std::vector<BandId>>;

/// A fixed node set with community labels observed over T directed
/// time-slices. Slices are addressed 1..T. Immutable after construction;
/// the constructor validates every invariant and throws InputError.
class TemporalNetwork {
 public:
  struct Parts {
    std::vector<std::string> node_names;       // external ids, index = NodeId
    std::vector<std::string> community_names;  // index = CommunityId
    std::vector<CommunityId> community_of;     // per node
    std::vector<std::vector<Edge>> slices;     // T edge lists
    std::vector<std::string> slice_names;      // optional, T entries
    std::optional<BandSeries> true_bands;
  };

  explicit TemporalNetwork(Parts parts);

  /// Convenience constructor with generated names ("0".."N-1", "1".."C").
  static TemporalNetwork from_edges(std::vector<CommunityId> community_of,
                                    std::vector<std::vector<Edge>> slices,
                                    std::optional<BandSeries> true_bands = {});

  std::size_t num_nodes() const noexcept { return parts_.community_of.size(); }
  int num_slices() const noexcept { return static_cast<int>(offsets_.size()); }
  std::size_t num_communities() const noexcept { return parts_.community_names.size(); }

  /// Edges of slice t (1-based), sorted by (src, dst).
  std::span<const Edge> slice(int t) const;
  std::size_t num_edges(int t) const { return slice(t).size(); }
  std::size_t total_edges() const noexcept;

  /// Out-neighbours of v in slice t, ascending.
  std::span<const NodeId> out_neighbors(int t, NodeId v) const;
  /// Index of the first edge of v in slice(t); edge ids are stable per slice.
  std::size_t edge_offset(int t, NodeId v) const;
  std::size_t out_degree(int t, NodeId v) const;
  std::size_t in_degree(int t, NodeId v) const;

  CommunityId community(NodeId v) const { return parts_.community_of.at(v); }
  std::span<const CommunityId> communities() const noexcept { return parts_.community_of; }
  const std::vector<NodeId>& community_members(CommunityId c) const {
    return members_.at(c);
  }
  const std::string& community_name(CommunityId c) const {
    return parts_.community_names.at(c);
  }
  const std::string& node_name(NodeId v) const { return parts_.node_names.at(v); }
  const std::string& slice_name(int t) const;

  bool has_true_bands() const noexcept { return parts_.true_bands.has_value(); }
  const BandSeries& true_bands() const;

  const Parts& parts() const noexcept { return parts_; }

 private:
  void check_slice(int t) const;

  Parts parts_;

  // CSR per slice.
  std::vector<std::vector<std::size_t>> offsets_;
  std::vector<std::vector<NodeId>> targets_;
  std::vector<std::vector<std::uint32_t>> in_degree_;
  std::vector<std::vector<NodeId>> members_;
};

/// Adjacency of slice t: entry (u, v) = 1 iff u -> v exists.
SparseMatrix slice_adjacency(const TemporalNetwork& net, int t);

// --- on-disk formats ---------------------------------------------------

/// Reads `slice<TAB>src<TAB>dst` edges and a `node,community[,band_t1..]`
/// CSV. Node ids are remapped to 0..N-1 in metadata order; slice tokens
/// are put in natural order (digit runs compare numerically).
TemporalNetwork load_temporal_network(const std::filesystem::path& edge_file,
                                      const std::filesystem::path& meta_file);

void save_temporal_network(const TemporalNetwork& net,
                           const std::filesystem::path& edge_file,
                           const std::filesystem::path& meta_file);

}  // namespace tempinf
