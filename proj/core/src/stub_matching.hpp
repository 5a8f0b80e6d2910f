#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "tempinf/network.hpp"

namespace tempinf::detail {

/// Undirected configuration model on the given stub list (node repeated
/// once per stub, even length). Returns a simple graph realising the exact
/// degree sequence as unordered pairs. Throws ConfigError when repair fails.
std::vector<std::pair<NodeId, NodeId>> match_undirected(std::vector<NodeId> stubs,
                                                        std::mt19937_64& rng);

/// Directed configuration model: pairs out-stubs with in-stubs (equal
/// lengths) into a simple directed graph (no self-loops, no duplicates).
std::vector<Edge> match_directed(std::vector<NodeId> out_stubs, std::vector<NodeId> in_stubs,
                                 std::mt19937_64& rng);

inline std::uint64_t edge_key(NodeId a, NodeId b) {
  return (static_cast<std::uint64_t>(a) << 32) | b;
}

}  // namespace tempinf::detail
