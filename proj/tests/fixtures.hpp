#pragma once

#include <cstdlib>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "tempinf/network.hpp"

namespace tempinf::testing {

inline std::filesystem::path scratch_dir(const std::string& name) {
  const char* root = std::getenv("TEMPINF_TEST_TMP");
  auto dir = std::filesystem::path(root ? root : std::filesystem::temp_directory_path().string()) /
             name;
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

/// All nodes in community 0.
inline TemporalNetwork single_community(std::size_t n, std::vector<std::vector<Edge>> slices) {
  return TemporalNetwork::from_edges(std::vector<CommunityId>(n, 0), std::move(slices));
}

/// Slice 1: a->b, slice 2: b->c with a, b, c = 0, 1, 2.
inline TemporalNetwork tri3() { return single_community(3, {{{0, 1}}, {{1, 2}}}); }

/// Uniformly random simple directed slices with edge probability p.
inline TemporalNetwork random_network(std::size_t n, int slices, double p, std::uint64_t seed,
                                      int communities = 1) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(p);
  std::vector<std::vector<Edge>> edges(static_cast<std::size_t>(slices));
  for (auto& slice : edges) {
    for (NodeId u = 0; u < n; ++u) {
      for (NodeId v = 0; v < n; ++v) {
        if (u != v && coin(rng)) slice.push_back({u, v});
      }
    }
  }
  std::vector<CommunityId> community(n);
  for (std::size_t v = 0; v < n; ++v) community[v] = static_cast<CommunityId>(v % communities);
  return TemporalNetwork::from_edges(std::move(community), std::move(edges));
}

}  // namespace tempinf::testing
