#include "tempinf/generate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <unordered_set>

#include <fmt/format.h>

#include "stub_matching.hpp"
#include "tempinf/errors.hpp"

namespace tempinf {

namespace {

// Community c owns a contiguous id range; bands are laid out 1, 2, 3
// inside it.
struct Layout {
  std::vector<CommunityId> community_of;
  std::vector<BandId> bands;
  std::array<std::vector<NodeId>, 2> members;
};

Layout make_layout(const GeneratorSpec& spec) {
  Layout layout;
  NodeId next = 0;
  for (CommunityId c = 0; c < 2; ++c) {
    for (int b = 0; b < kNumBands; ++b) {
      for (int i = 0; i < spec.communities[c].bands[static_cast<std::size_t>(b)].nodes; ++i) {
        layout.community_of.push_back(c);
        layout.bands.push_back(band_from_index(b));
        layout.members[c].push_back(next++);
      }
    }
  }
  return layout;
}

int draw_degree(const DegreeLaw& law, int community_size, std::mt19937_64& rng) {
  if (law.kind == DegreeLaw::Kind::Fixed) return static_cast<int>(law.value);
  std::poisson_distribution<int> poisson(law.value);
  // A simple graph caps degrees at community_size - 1.
  return std::min(poisson(rng), community_size - 1);
}

// Connections are unordered pairs until they are oriented.
std::uint64_t pair_key(NodeId a, NodeId b) {
  return detail::edge_key(std::min(a, b), std::max(a, b));
}

// Small communities with random degree laws can draw sequences no simple
// graph realises; those are redrawn.
constexpr int kMaxDegreeRedraws = 100;

// Erdos-Gallai test for an even-sum sequence.
bool graphical(std::vector<int> degree) {
  std::sort(degree.begin(), degree.end(), std::greater<>());
  const auto n = static_cast<long>(degree.size());
  long lhs = 0;
  for (long k = 1; k <= n; ++k) {
    lhs += degree[static_cast<std::size_t>(k - 1)];
    long rhs = k * (k - 1);
    for (long i = k; i < n; ++i) rhs += std::min<long>(degree[static_cast<std::size_t>(i)], k);
    if (lhs > rhs) return false;
  }
  return true;
}

bool coin(std::mt19937_64& rng) { return (rng() >> 63) != 0; }

Edge orient(NodeId a, NodeId b, std::mt19937_64& rng) {
  return coin(rng) ? Edge{a, b} : Edge{b, a};
}

std::size_t floor_count(double fraction, std::size_t population) {
  return static_cast<std::size_t>(std::floor(fraction * static_cast<double>(population) + 1e-9));
}

}  // namespace

int CommunitySpec::size() const noexcept {
  int total = 0;
  for (const auto& b : bands) total += b.nodes;
  return total;
}

int GeneratorSpec::num_nodes() const noexcept {
  return communities[0].size() + communities[1].size();
}

void GeneratorSpec::validate() const {
  for (const auto& c : communities) {
    if (c.size() < 1) throw ConfigError(fmt::format("community {} has no nodes", c.name));
    for (int b = 0; b < kNumBands; ++b) {
      const auto& band = c.bands[static_cast<std::size_t>(b)];
      if (band.nodes < 0) {
        throw ConfigError(fmt::format("{} band {}: negative node count", c.name, b + 1));
      }
      if (band.degree.value < 0.0 || !std::isfinite(band.degree.value)) {
        throw ConfigError(fmt::format("{} band {}: invalid degree", c.name, b + 1));
      }
      if (band.degree.kind == DegreeLaw::Kind::Fixed) {
        if (band.degree.value != std::floor(band.degree.value)) {
          throw ConfigError(fmt::format("{} band {}: fixed degree must be an integer", c.name, b + 1));
        }
        if (band.nodes > 0 && band.degree.value >= c.size()) {
          throw ConfigError(fmt::format("{} band {}: degree {} infeasible in a community of {}",
                                        c.name, b + 1, band.degree.value, c.size()));
        }
      }
    }
  }
  const auto cross = static_cast<long long>(communities[0].size()) * communities[1].size();
  if (inter_edges < 0 || inter_edges > cross) {
    throw ConfigError(fmt::format("inter_edges {} outside 0..{}", inter_edges, cross));
  }
  if (slices < 1) throw ConfigError("slices must be at least 1");
  if (!(swap_fraction >= 0.0 && swap_fraction <= 1.0)) {
    throw ConfigError("swap_fraction must lie in [0, 1]");
  }
  if (!(rewire_fraction >= 0.0 && rewire_fraction <= 1.0)) {
    throw ConfigError("rewire_fraction must lie in [0, 1]");
  }
}

GeneratorSpec preset_spec(std::string_view name) {
  GeneratorSpec spec;
  spec.inter_edges = 100;
  spec.slices = 4;
  spec.swap_fraction = 0.10;
  spec.rewire_fraction = 0.10;
  auto community = [](std::string cname, std::array<int, 3> sizes, std::array<DegreeLaw, 3> laws) {
    CommunitySpec c;
    c.name = std::move(cname);
    for (std::size_t b = 0; b < 3; ++b) c.bands[b] = {sizes[b], laws[b]};
    return c;
  };
  if (name == "bandnet1") {
    const std::array laws{DegreeLaw::fixed(30), DegreeLaw::fixed(10), DegreeLaw::fixed(2)};
    spec.communities = {community("C1", {5, 50, 500}, laws), community("C2", {5, 50, 500}, laws)};
  } else if (name == "bandnet2") {
    const std::array laws{DegreeLaw::poisson(40), DegreeLaw::poisson(20), DegreeLaw::poisson(5)};
    spec.communities = {community("C1", {5, 50, 500}, laws), community("C2", {5, 50, 500}, laws)};
  } else if (name == "bandnet3") {
    const std::array laws{DegreeLaw::poisson(40), DegreeLaw::poisson(20), DegreeLaw::poisson(5)};
    spec.communities = {community("C1", {5, 50, 500}, laws),
                        community("C2", {10, 100, 1000}, laws)};
  } else {
    throw ConfigError(fmt::format("unknown preset '{}'", name));
  }
  return spec;
}

InitialSlice bandnet_initial(const GeneratorSpec& spec, std::mt19937_64& rng) {
  spec.validate();
  Layout layout = make_layout(spec);
  InitialSlice out;
  out.community_of = layout.community_of;
  out.state.bands = layout.bands;

  for (CommunityId c = 0; c < 2; ++c) {
    const auto& members = layout.members[c];
    const int size = static_cast<int>(members.size());
    std::vector<int> degree;
    std::optional<NodeId> parity_fix;
    for (int attempt = 0;; ++attempt) {
      if (attempt == kMaxDegreeRedraws) {
        throw ConfigError(fmt::format("{}: no graphical degree sequence after {} draws",
                                      spec.communities[c].name, kMaxDegreeRedraws));
      }
      degree.assign(members.size(), 0);
      parity_fix.reset();
      for (std::size_t i = 0; i < members.size(); ++i) {
        const int b = band_index(layout.bands[members[i]]);
        degree[i] = draw_degree(spec.communities[c].bands[static_cast<std::size_t>(b)].degree, size, rng);
      }
      if (std::accumulate(degree.begin(), degree.end(), 0L) % 2 != 0) {
        std::vector<std::size_t> room;
        for (std::size_t i = 0; i < degree.size(); ++i) {
          if (degree[i] < size - 1) room.push_back(i);
        }
        if (room.empty()) throw ConfigError("cannot fix odd stub total");
        const std::size_t pick =
            room[std::uniform_int_distribution<std::size_t>(0, room.size() - 1)(rng)];
        ++degree[pick];
        parity_fix = members[pick];
      }
      if (graphical(degree)) break;
    }
    if (parity_fix) out.parity_fixes.push_back(*parity_fix);
    std::vector<NodeId> stubs;
    for (std::size_t i = 0; i < members.size(); ++i) {
      stubs.insert(stubs.end(), static_cast<std::size_t>(degree[i]), members[i]);
    }
    for (const auto& [a, b] : detail::match_undirected(std::move(stubs), rng)) {
      out.state.edges.push_back(orient(a, b, rng));
    }
  }

  // Inter-community links: distinct endpoints on both sides when the count
  // allows it, otherwise distinct node pairs.
  const auto m = static_cast<std::size_t>(spec.inter_edges);
  const auto& left = layout.members[0];
  const auto& right = layout.members[1];
  if (m <= std::min(left.size(), right.size())) {
    std::vector<NodeId> a, b;
    std::sample(left.begin(), left.end(), std::back_inserter(a), m, rng);
    std::sample(right.begin(), right.end(), std::back_inserter(b), m, rng);
    std::shuffle(b.begin(), b.end(), rng);
    for (std::size_t i = 0; i < m; ++i) out.state.edges.push_back(orient(a[i], b[i], rng));
  } else {
    std::unordered_set<std::uint64_t> used;
    std::uniform_int_distribution<std::size_t> pick_left(0, left.size() - 1);
    std::uniform_int_distribution<std::size_t> pick_right(0, right.size() - 1);
    while (used.size() < m) {
      const NodeId a = left[pick_left(rng)];
      const NodeId b = right[pick_right(rng)];
      if (used.insert(pair_key(a, b)).second) out.state.edges.push_back(orient(a, b, rng));
    }
  }
  std::sort(out.state.edges.begin(), out.state.edges.end());
  return out;
}

namespace {

void swap_bands(SliceState& state, const std::vector<CommunityId>& community_of,
                double fraction, SwapMode mode, std::mt19937_64& rng) {
  if (fraction <= 0.0) return;
  const std::size_t n = state.bands.size();
  std::array<std::vector<NodeId>, kNumBands> band_members;
  for (NodeId v = 0; v < n; ++v) band_members[static_cast<std::size_t>(band_index(state.bands[v]))].push_back(v);

  std::array<std::vector<NodeId>, kNumBands> movers;
  for (int b = 0; b < kNumBands; ++b) {
    const auto& pool = band_members[static_cast<std::size_t>(b)];
    std::size_t k = floor_count(fraction, pool.size());
    if (k == 0 && !pool.empty()) k = 1;
    auto& chosen = movers[static_cast<std::size_t>(b)];
    std::sample(pool.begin(), pool.end(), std::back_inserter(chosen), k, rng);
    std::shuffle(chosen.begin(), chosen.end(), rng);
  }

  // Band-2 movers are the only partners available to bands 1 and 3; band 1
  // claims them first, band 3 takes what is left in the same community.
  std::array<std::vector<NodeId>, 2> middle;
  for (NodeId v : movers[1]) middle[community_of[v]].push_back(v);

  std::vector<NodeId> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  bool any = false;
  for (int outer : {0, 2}) {
    for (NodeId v : movers[static_cast<std::size_t>(outer)]) {
      auto& partners = middle[community_of[v]];
      if (partners.empty()) continue;
      const NodeId w = partners.back();
      partners.pop_back();
      perm[v] = w;
      perm[w] = v;
      std::swap(state.bands[v], state.bands[w]);
      any = true;
    }
  }
  if (!any || mode == SwapMode::LabelOnly) return;
  // v takes over w's connections: the edge w -> z becomes v -> z.
  for (Edge& e : state.edges) e = {perm[e.src], perm[e.dst]};
}

void rewire(SliceState& state, const std::vector<CommunityId>& community_of, double fraction,
            std::mt19937_64& rng) {
  if (fraction <= 0.0) return;
  const std::size_t n = state.bands.size();
  auto& edges = state.edges;

  std::array<std::vector<NodeId>, 2> members;
  for (NodeId v = 0; v < n; ++v) members[community_of[v]].push_back(v);

  std::vector<std::uint32_t> degree_before(n, 0);
  for (const Edge& e : edges) {
    ++degree_before[e.src];
    ++degree_before[e.dst];
  }

  // Edge classes: 0 / 1 = intra community 0 / 1, 2 = inter.
  std::array<std::vector<std::size_t>, 3> classes;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const CommunityId cs = community_of[edges[i].src];
    const CommunityId cd = community_of[edges[i].dst];
    classes[cs == cd ? cs : 2].push_back(i);
  }

  std::unordered_set<std::uint64_t> present;
  for (const Edge& e : edges) present.insert(pair_key(e.src, e.dst));

  for (std::size_t cls = 0; cls < 3; ++cls) {
    std::vector<std::size_t> selected;
    std::sample(classes[cls].begin(), classes[cls].end(), std::back_inserter(selected),
                floor_count(fraction, classes[cls].size()), rng);
    for (std::size_t i : selected) {
      Edge& e = edges[i];
      // Keep the source, redraw the destination within the same class.
      const auto& pool = cls == 2 ? members[1 - community_of[e.src]] : members[cls];
      std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
      for (int attempt = 0; attempt < 1000; ++attempt) {
        const NodeId d = pool[pick(rng)];
        if (d == e.src || d == e.dst || present.count(pair_key(e.src, d)) != 0) continue;
        present.erase(pair_key(e.src, e.dst));
        present.insert(pair_key(e.src, d));
        e.dst = d;
        break;
      }
    }
  }

  // Reconnect nodes the rewiring isolated: borrow one intra-community edge
  // y - q from a random community peer y and point it at z instead of q,
  // so edge counts per class stay fixed.
  std::vector<std::uint32_t> degree(n, 0);
  std::vector<std::vector<std::size_t>> incident(n);
  for (std::size_t i = 0; i < edges.size(); ++i) {
    ++degree[edges[i].src];
    ++degree[edges[i].dst];
    incident[edges[i].src].push_back(i);
    incident[edges[i].dst].push_back(i);
  }
  for (NodeId z = 0; z < n; ++z) {
    if (degree_before[z] == 0 || degree[z] != 0) continue;
    const auto& pool = members[community_of[z]];
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    for (int attempt = 0; attempt < 10000; ++attempt) {
      const NodeId y = pool[pick(rng)];
      if (y == z || incident[y].empty()) continue;
      const std::size_t i =
          incident[y][std::uniform_int_distribution<std::size_t>(0, incident[y].size() - 1)(rng)];
      Edge& e = edges[i];
      const NodeId q = e.src == y ? e.dst : e.src;
      if (community_of[q] != community_of[y] || degree[q] < 2) continue;
      const Edge moved = e.src == y ? Edge{y, z} : Edge{z, y};
      if (present.count(pair_key(moved.src, moved.dst)) != 0) continue;
      present.erase(pair_key(e.src, e.dst));
      present.insert(pair_key(moved.src, moved.dst));
      auto& inc_q = incident[q];
      inc_q.erase(std::find(inc_q.begin(), inc_q.end(), i));
      incident[z].push_back(i);
      --degree[q];
      ++degree[z];
      e = moved;
      break;
    }
  }
}

}  // namespace

SliceState bandnet_evolve(const SliceState& previous, const std::vector<CommunityId>& community_of,
                          const GeneratorSpec& spec, std::mt19937_64& rng) {
  SliceState next = previous;
  swap_bands(next, community_of, spec.swap_fraction, spec.swap_mode, rng);
  rewire(next, community_of, spec.rewire_fraction, rng);
  std::sort(next.edges.begin(), next.edges.end());
  return next;
}

TemporalNetwork bandnet(const GeneratorSpec& spec) {
  spec.validate();
  std::mt19937_64 rng(spec.rng_seed);
  InitialSlice initial = bandnet_initial(spec, rng);

  TemporalNetwork::Parts parts;
  parts.community_of = initial.community_of;
  parts.community_names = {spec.communities[0].name, spec.communities[1].name};
  BandSeries bands;
  SliceState state = std::move(initial.state);
  for (int t = 1; t <= spec.slices; ++t) {
    if (t > 1) state = bandnet_evolve(state, parts.community_of, spec, rng);
    std::vector<Edge> edges = state.edges;
    if (spec.orientation == Orientation::Reciprocal) {
      for (const Edge& e : state.edges) edges.push_back({e.dst, e.src});
    }
    parts.slices.push_back(std::move(edges));
    bands.push_back(state.bands);
  }
  parts.true_bands = std::move(bands);
  return TemporalNetwork(std::move(parts));
}

}  // namespace tempinf
