#include <bit>
#include <cstdint>
#include <vector>

#include "tempinf/centrality.hpp"
#include "tempinf/parallel.hpp"

namespace tempinf {

// Earliest-arrival reachability, 64 sources per machine word. A source in
// batch bit i reaches node w at slice k when some u already reached before
// slice k has an edge u -> w in slice k; distance = k - start + 1.
ScoreTable temporal_closeness(const TemporalNetwork& net) {
  const std::size_t n = net.num_nodes();
  const int slices = net.num_slices();
  const std::size_t batches = (n + 63) / 64;
  Eigen::MatrixXd joint = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), slices);

  // Each task owns one (batch, start slice) pair and writes only to the
  // rows of its batch in column `start`.
  parallel_for(batches * static_cast<std::size_t>(slices), [&](std::size_t task) {
    const std::size_t batch = task / static_cast<std::size_t>(slices);
    const int start = static_cast<int>(task % static_cast<std::size_t>(slices)) + 1;
    const std::size_t first = batch * 64;
    const std::size_t count = std::min<std::size_t>(64, n - first);

    std::vector<std::uint64_t> reached(n, 0), next;
    for (std::size_t i = 0; i < count; ++i) reached[first + i] = std::uint64_t{1} << i;
    std::vector<double> score(count, 0.0);

    for (int k = start; k <= slices; ++k) {
      next = reached;
      for (const Edge& e : net.slice(k)) next[e.dst] |= reached[e.src];
      const double inv = 1.0 / static_cast<double>(k - start + 1);
      for (std::size_t w = 0; w < n; ++w) {
        std::uint64_t fresh = next[w] & ~reached[w];
        while (fresh != 0) {
          const int bit = std::countr_zero(fresh);
          score[static_cast<std::size_t>(bit)] += inv;
          fresh &= fresh - 1;
        }
      }
      reached.swap(next);
    }
    for (std::size_t i = 0; i < count; ++i) {
      joint(static_cast<Eigen::Index>(first + i), start - 1) = score[i];
    }
  });
  return ScoreTable::from_joint(Method::Closeness, std::move(joint), net);
}

}  // namespace tempinf
