#include <random>

#include <fmt/format.h>

#include "stub_matching.hpp"
#include "tempinf/errors.hpp"
#include "tempinf/generate.hpp"

namespace tempinf {

StubLedger StubLedger::of_slice(std::span<const Edge> edges,
                                std::span<const CommunityId> community_of) {
  const std::size_t n = community_of.size();
  StubLedger ledger;
  ledger.intra_in.assign(n, 0);
  ledger.intra_out.assign(n, 0);
  ledger.inter_in.assign(n, 0);
  ledger.inter_out.assign(n, 0);
  for (const Edge& e : edges) {
    if (community_of[e.src] == community_of[e.dst]) {
      ++ledger.intra_out[e.src];
      ++ledger.intra_in[e.dst];
    } else {
      ++ledger.inter_out[e.src];
      ++ledger.inter_in[e.dst];
    }
  }
  return ledger;
}

TemporalNetwork config_randomize(const TemporalNetwork& net, std::uint64_t seed) {
  if (net.num_communities() != 2) {
    throw InputError(fmt::format("configuration randomizer needs exactly two communities, got {}",
                                 net.num_communities()));
  }
  std::mt19937_64 rng(seed);
  const auto community_of = net.communities();
  TemporalNetwork::Parts parts = net.parts();
  parts.true_bands.reset();  // bands of the source network do not carry over

  for (int t = 1; t <= net.num_slices(); ++t) {
    const StubLedger ledger = StubLedger::of_slice(net.slice(t), community_of);
    std::vector<Edge> rebuilt;
    auto stubs = [&](const std::vector<std::uint32_t>& counts, CommunityId c) {
      std::vector<NodeId> out;
      for (NodeId v : net.community_members(c)) out.insert(out.end(), counts[v], v);
      return out;
    };
    auto append = [&](std::vector<Edge> edges) {
      rebuilt.insert(rebuilt.end(), edges.begin(), edges.end());
    };
    // Each community from its own in-community stubs, then C1 -> C2 and
    // C2 -> C1 from the inter-community stubs.
    for (CommunityId c = 0; c < 2; ++c) {
      append(detail::match_directed(stubs(ledger.intra_out, c), stubs(ledger.intra_in, c), rng));
    }
    append(detail::match_directed(stubs(ledger.inter_out, 0), stubs(ledger.inter_in, 1), rng));
    append(detail::match_directed(stubs(ledger.inter_out, 1), stubs(ledger.inter_in, 0), rng));
    parts.slices[static_cast<std::size_t>(t - 1)] = std::move(rebuilt);
  }
  return TemporalNetwork(std::move(parts));
}

}  // namespace tempinf
