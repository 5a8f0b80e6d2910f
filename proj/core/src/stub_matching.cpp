#include "stub_matching.hpp"

#include <algorithm>
#include <array>
#include <unordered_map>

#include <fmt/format.h>

#include "tempinf/errors.hpp"

namespace tempinf::detail {

namespace {

constexpr int kResampleRounds = 100;
constexpr std::size_t kSwapAttemptsPerEdge = 2000;

// Multiset of edge keys; a pair is bad when it is a self-loop or occurs
// more than once.
class KeyCounts {
 public:
  void add(std::uint64_t k) { ++counts_[k]; }
  void remove(std::uint64_t k) {
    auto it = counts_.find(k);
    if (--it->second == 0) counts_.erase(it);
  }
  int count(std::uint64_t k) const {
    const auto it = counts_.find(k);
    return it == counts_.end() ? 0 : it->second;
  }

 private:
  std::unordered_map<std::uint64_t, int> counts_;
};

// Shared resample-then-swap strategy. `Pairs` holds (first, second) stub
// pairs; `key` canonicalises a pair; `swap_candidates` yields the two ways
// of exchanging partners between pairs i and j.
template <typename Pair, typename KeyFn, typename ReshuffleFn, typename SwapFn>
void repair(std::vector<Pair>& pairs, KeyFn key, ReshuffleFn reshuffle, SwapFn swaps,
            std::mt19937_64& rng) {
  KeyCounts counts;
  for (const auto& p : pairs) counts.add(key(p));
  auto bad = [&](const Pair& p) { return p.first == p.second || counts.count(key(p)) > 1; };
  auto collect_bad = [&] {
    std::vector<std::size_t> out;
    std::unordered_map<std::uint64_t, int> seen;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      const auto& p = pairs[i];
      if (p.first == p.second) {
        out.push_back(i);
      } else if (counts.count(key(p)) > 1 && seen[key(p)]++ > 0) {
        out.push_back(i);  // keep the first copy of a duplicate
      }
    }
    return out;
  };

  std::vector<std::size_t> bad_idx = collect_bad();
  for (int round = 0; round < kResampleRounds && !bad_idx.empty(); ++round) {
    // Re-pair the bad stubs together with as many random good pairs.
    std::vector<std::size_t> pool = bad_idx;
    std::uniform_int_distribution<std::size_t> any(0, pairs.size() - 1);
    for (std::size_t k = 0; k < bad_idx.size() && pool.size() < pairs.size(); ++k) {
      pool.push_back(any(rng));
    }
    std::sort(pool.begin(), pool.end());
    pool.erase(std::unique(pool.begin(), pool.end()), pool.end());
    for (std::size_t i : pool) counts.remove(key(pairs[i]));
    reshuffle(pairs, pool);
    for (std::size_t i : pool) counts.add(key(pairs[i]));
    bad_idx = collect_bad();
  }

  std::uniform_int_distribution<std::size_t> any(0, pairs.size() - 1);
  for (std::size_t i : bad_idx) {
    if (!bad(pairs[i])) continue;  // fixed as a side effect of an earlier swap
    bool fixed = false;
    for (std::size_t attempt = 0; attempt < kSwapAttemptsPerEdge && !fixed; ++attempt) {
      const std::size_t j = any(rng);
      if (j == i) continue;
      counts.remove(key(pairs[i]));
      counts.remove(key(pairs[j]));
      for (const auto& [a, b] : swaps(pairs[i], pairs[j], rng)) {
        if (a.first == a.second || b.first == b.second) continue;
        if (key(a) == key(b) || counts.count(key(a)) > 0 || counts.count(key(b)) > 0) continue;
        pairs[i] = a;
        pairs[j] = b;
        fixed = true;
        break;
      }
      counts.add(key(pairs[i]));
      counts.add(key(pairs[j]));
    }
    if (!fixed) {
      throw ConfigError(fmt::format(
          "configuration model: could not realise the degree sequence as a simple graph"));
    }
  }
}

}  // namespace

std::vector<std::pair<NodeId, NodeId>> match_undirected(std::vector<NodeId> stubs,
                                                        std::mt19937_64& rng) {
  if (stubs.size() % 2 != 0) throw ConfigError("odd number of stubs");
  using Pair = std::pair<NodeId, NodeId>;
  std::shuffle(stubs.begin(), stubs.end(), rng);
  std::vector<Pair> pairs;
  pairs.reserve(stubs.size() / 2);
  for (std::size_t i = 0; i < stubs.size(); i += 2) pairs.emplace_back(stubs[i], stubs[i + 1]);
  if (pairs.empty()) return pairs;

  auto key = [](const Pair& p) {
    return edge_key(std::min(p.first, p.second), std::max(p.first, p.second));
  };
  auto reshuffle = [&](std::vector<Pair>& ps, const std::vector<std::size_t>& idx) {
    std::vector<NodeId> pool;
    for (std::size_t i : idx) {
      pool.push_back(ps[i].first);
      pool.push_back(ps[i].second);
    }
    std::shuffle(pool.begin(), pool.end(), rng);
    for (std::size_t k = 0; k < idx.size(); ++k) ps[idx[k]] = {pool[2 * k], pool[2 * k + 1]};
  };
  auto swaps = [](const Pair& p, const Pair& q, std::mt19937_64& g) {
    std::array<std::pair<Pair, Pair>, 2> options{{{{p.first, q.first}, {p.second, q.second}},
                                                  {{p.first, q.second}, {p.second, q.first}}}};
    if (g() & 1U) std::swap(options[0], options[1]);
    return options;
  };
  repair(pairs, key, reshuffle, swaps, rng);
  return pairs;
}

std::vector<Edge> match_directed(std::vector<NodeId> out_stubs, std::vector<NodeId> in_stubs,
                                 std::mt19937_64& rng) {
  if (out_stubs.size() != in_stubs.size()) {
    throw ConfigError("out-stub and in-stub totals differ");
  }
  using Pair = std::pair<NodeId, NodeId>;
  std::shuffle(in_stubs.begin(), in_stubs.end(), rng);
  std::vector<Pair> pairs;
  pairs.reserve(out_stubs.size());
  for (std::size_t i = 0; i < out_stubs.size(); ++i) pairs.emplace_back(out_stubs[i], in_stubs[i]);

  if (!pairs.empty()) {
    auto key = [](const Pair& p) { return edge_key(p.first, p.second); };
    auto reshuffle = [&](std::vector<Pair>& ps, const std::vector<std::size_t>& idx) {
      std::vector<NodeId> targets;
      for (std::size_t i : idx) targets.push_back(ps[i].second);
      std::shuffle(targets.begin(), targets.end(), rng);
      for (std::size_t k = 0; k < idx.size(); ++k) ps[idx[k]].second = targets[k];
    };
    auto swaps = [](const Pair& p, const Pair& q, std::mt19937_64&) {
      return std::array<std::pair<Pair, Pair>, 1>{
          {{{p.first, q.second}, {q.first, p.second}}}};
    };
    repair(pairs, key, reshuffle, swaps, rng);
  }
  std::vector<Edge> edges;
  edges.reserve(pairs.size());
  for (const auto& [a, b] : pairs) edges.push_back({a, b});
  return edges;
}

}  // namespace tempinf::detail
