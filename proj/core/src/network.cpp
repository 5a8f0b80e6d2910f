#include "tempinf/network.hpp"

#include <algorithm>
#include <numeric>

#include <fmt/format.h>

#include "tempinf/errors.hpp"

namespace tempinf {

TemporalNetwork::TemporalNetwork(Parts parts) : parts_(std::move(parts)) {
  const std::size_t n = parts_.community_of.size();
  const std::size_t num_slices = parts_.slices.size();
  if (num_slices == 0) throw InputError("network needs at least one slice");
  if (parts_.node_names.empty()) {
    parts_.node_names.resize(n);
    for (std::size_t v = 0; v < n; ++v) parts_.node_names[v] = std::to_string(v);
  }
  if (parts_.node_names.size() != n) {
    throw InputError("node name count does not match community label count");
  }
  if (parts_.community_names.empty()) {
    CommunityId max_c = 0;
    for (CommunityId c : parts_.community_of) max_c = std::max(max_c, c);
    for (CommunityId c = 0; c <= max_c && n > 0; ++c) {
      parts_.community_names.push_back(std::to_string(c + 1));
    }
  }
  if (parts_.slice_names.empty()) {
    for (std::size_t t = 1; t <= num_slices; ++t) {
      parts_.slice_names.push_back(std::to_string(t));
    }
  }
  if (parts_.slice_names.size() != num_slices) {
    throw InputError("slice name count does not match slice count");
  }

  members_.assign(parts_.community_names.size(), {});
  for (NodeId v = 0; v < n; ++v) {
    const CommunityId c = parts_.community_of[v];
    if (c >= parts_.community_names.size()) {
      throw InputError(fmt::format("node {} has unknown community {}", v, c));
    }
    members_[c].push_back(v);
  }

  offsets_.resize(num_slices);
  targets_.resize(num_slices);
  in_degree_.resize(num_slices);
  for (std::size_t s = 0; s < num_slices; ++s) {
    auto& edges = parts_.slices[s];
    std::sort(edges.begin(), edges.end());
    for (std::size_t i = 0; i < edges.size(); ++i) {
      const Edge& e = edges[i];
      if (e.src >= n || e.dst >= n) {
        throw InputError(fmt::format("slice {}: edge {}->{} references unknown node",
                                     s + 1, e.src, e.dst));
      }
      if (e.src == e.dst) {
        throw InputError(fmt::format("slice {}: self-loop on node {}", s + 1, e.src));
      }
      if (i > 0 && edges[i - 1] == e) {
        throw InputError(fmt::format("slice {}: duplicate edge {}->{}", s + 1, e.src, e.dst));
      }
    }
    auto& off = offsets_[s];
    auto& tgt = targets_[s];
    auto& indeg = in_degree_[s];
    off.assign(n + 1, 0);
    indeg.assign(n, 0);
    tgt.reserve(edges.size());
    for (const Edge& e : edges) {
      ++off[e.src + 1];
      ++indeg[e.dst];
      tgt.push_back(e.dst);
    }
    std::partial_sum(off.begin(), off.end(), off.begin());
  }

  if (parts_.true_bands) {
    const auto& tb = *parts_.true_bands;
    if (tb.size() != num_slices) throw InputError("true bands must cover every slice");
    for (const auto& slice : tb) {
      if (slice.size() != n) throw InputError("true bands must cover every node");
      for (BandId b : slice) {
        const int i = band_index(b);
        if (i < 0 || i >= kNumBands) throw InputError("band label outside {1,2,3}");
      }
    }
  }
}

TemporalNetwork TemporalNetwork::from_edges(std::vector<CommunityId> community_of,
                                            std::vector<std::vector<Edge>> slices,
                                            std::optional<BandSeries> true_bands) {
  Parts parts;
  parts.community_of = std::move(community_of);
  parts.slices = std::move(slices);
  parts.true_bands = std::move(true_bands);
  return TemporalNetwork(std::move(parts));
}

void TemporalNetwork::check_slice(int t) const {
  if (t < 1 || t > num_slices()) {
    throw InputError(fmt::format("slice index {} outside 1..{}", t, num_slices()));
  }
}

std::span<const Edge> TemporalNetwork::slice(int t) const {
  check_slice(t);
  return parts_.slices[static_cast<std::size_t>(t - 1)];
}

std::size_t TemporalNetwork::total_edges() const noexcept {
  std::size_t total = 0;
  for (const auto& s : parts_.slices) total += s.size();
  return total;
}

std::span<const NodeId> TemporalNetwork::out_neighbors(int t, NodeId v) const {
  const auto& off = offsets_[static_cast<std::size_t>(t - 1)];
  const auto& tgt = targets_[static_cast<std::size_t>(t - 1)];
  return {tgt.data() + off[v], off[v + 1] - off[v]};
}

std::size_t TemporalNetwork::edge_offset(int t, NodeId v) const {
  return offsets_[static_cast<std::size_t>(t - 1)][v];
}

std::size_t TemporalNetwork::out_degree(int t, NodeId v) const {
  const auto& off = offsets_[static_cast<std::size_t>(t - 1)];
  return off[v + 1] - off[v];
}

std::size_t TemporalNetwork::in_degree(int t, NodeId v) const {
  return in_degree_[static_cast<std::size_t>(t - 1)][v];
}

const std::string& TemporalNetwork::slice_name(int t) const {
  check_slice(t);
  return parts_.slice_names[static_cast<std::size_t>(t - 1)];
}

const BandSeries& TemporalNetwork::true_bands() const {
  if (!parts_.true_bands) throw InputError("network has no true bands");
  return *parts_.true_bands;
}

SparseMatrix slice_adjacency(const TemporalNetwork& net, int t) {
  const auto edges = net.slice(t);
  const auto n = static_cast<Eigen::Index>(net.num_nodes());
  SparseMatrix a(n, n);
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(edges.size());
  for (const Edge& e : edges) triplets.emplace_back(e.src, e.dst, 1.0);
  a.setFromTriplets(triplets.begin(), triplets.end());
  return a;
}

}  // namespace tempinf
