#include "tempinf/cascade.hpp"

#include <cmath>

#include <fmt/format.h>

#include "tempinf/centrality.hpp"
#include "tempinf/errors.hpp"
#include "tempinf/parallel.hpp"

namespace tempinf {

void CascadeConfig::validate() const {
  if (!(rho > 0.0 && rho <= 1.0)) {
    throw ConfigError(fmt::format("rho must lie in (0, 1], got {}", rho));
  }
  if (runs < 1) throw ConfigError(fmt::format("runs must be at least 1, got {}", runs));
}

namespace {

// Epoch-stamped marks so repeated runs never clear O(N) state.
class Marks {
 public:
  void reset(std::size_t n) {
    if (stamp_.size() != n) {
      stamp_.assign(n, 0);
      epoch_ = 0;
    }
    if (++epoch_ == 0) {
      std::fill(stamp_.begin(), stamp_.end(), 0);
      epoch_ = 1;
    }
  }
  bool test(std::size_t i) const { return stamp_[i] == epoch_; }
  void set(std::size_t i) { stamp_[i] = epoch_; }

 private:
  std::vector<std::uint32_t> stamp_;
  std::uint32_t epoch_ = 0;
};

struct Workspace {
  Marks infected;
  Marks queued;
  std::vector<NodeId> current;
  std::vector<NodeId> next;
};

// Attempts are evaluated in ascending neighbour order; with independent
// Bernoulli trials the order cannot change the infected set.
template <typename Uniform>
std::size_t run_cascade(const TemporalNetwork& net, NodeId seed, int seed_slice, double rho,
                        CascadeVariant variant, Uniform&& uniform, Workspace& ws) {
  const std::size_t n = net.num_nodes();
  ws.infected.reset(n);
  ws.current.clear();
  ws.current.push_back(seed);
  ws.infected.set(seed);
  std::size_t size = 1;

  for (int t = seed_slice; t <= net.num_slices(); ++t) {
    if (variant == CascadeVariant::Persistent) {
      // Everyone infected so far attempts; this slice's new cases wait.
      const std::size_t spreaders = ws.current.size();
      for (std::size_t i = 0; i < spreaders; ++i) {
        const NodeId u = ws.current[i];
        const std::size_t base = net.edge_offset(t, u);
        const auto out = net.out_neighbors(t, u);
        for (std::size_t j = 0; j < out.size(); ++j) {
          const NodeId w = out[j];
          if (ws.infected.test(w)) continue;
          if (uniform(t, base + j) < rho) {
            ws.infected.set(w);
            ws.current.push_back(w);
          }
        }
      }
      size = ws.current.size();
    } else {
      if (ws.current.empty()) break;
      ws.queued.reset(n);
      ws.next.clear();
      for (const NodeId u : ws.current) {
        const std::size_t base = net.edge_offset(t, u);
        const auto out = net.out_neighbors(t, u);
        for (std::size_t j = 0; j < out.size(); ++j) {
          const NodeId w = out[j];
          if (ws.queued.test(w)) continue;
          if (uniform(t, base + j) < rho) {
            ws.queued.set(w);
            ws.next.push_back(w);
            if (!ws.infected.test(w)) {
              ws.infected.set(w);
              ++size;
            }
          }
        }
      }
      ws.current.swap(ws.next);
    }
  }
  return size;
}

Workspace& thread_workspace() {
  thread_local Workspace ws;
  return ws;
}

void check_seed(const TemporalNetwork& net, NodeId seed, int seed_slice) {
  if (seed >= net.num_nodes()) throw InputError(fmt::format("seed node {} out of range", seed));
  if (seed_slice < 1 || seed_slice > net.num_slices()) {
    throw InputError(fmt::format("seed slice {} outside 1..{}", seed_slice, net.num_slices()));
  }
}

}  // namespace

std::size_t simulate_cascade(const TemporalNetwork& net, NodeId seed, int seed_slice,
                             double rho, CascadeVariant variant, const AttemptUniform& uniform) {
  check_seed(net, seed, seed_slice);
  return run_cascade(net, seed, seed_slice, rho, variant, uniform, thread_workspace());
}

std::size_t simulate_cascade(const TemporalNetwork& net, NodeId seed, int seed_slice,
                             double rho, CascadeVariant variant, std::mt19937_64& rng) {
  check_seed(net, seed, seed_slice);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  return run_cascade(
      net, seed, seed_slice, rho, variant, [&](int, std::size_t) { return unit(rng); },
      thread_workspace());
}

std::size_t simulate_on_supra(const SupraMatrix& w, NodeId seed, int seed_slice,
                              std::mt19937_64& rng) {
  const std::size_t n = w.block_dim;
  if (seed >= n || seed_slice < 1 || seed_slice >= w.layers) {
    throw InputError("seed outside the supra-matrix");
  }
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<bool> active(w.dim(), false);
  std::vector<bool> base_hit(n, false);
  std::vector<std::size_t> frontier{static_cast<std::size_t>(seed_slice - 1) * n + seed}, next;
  active[frontier.front()] = true;
  base_hit[seed] = true;
  std::size_t size = 1;
  while (!frontier.empty()) {
    next.clear();
    for (const std::size_t x : frontier) {
      for (SparseMatrix::InnerIterator it(w.matrix, static_cast<Eigen::Index>(x)); it; ++it) {
        const auto y = static_cast<std::size_t>(it.col());
        if (active[y]) continue;
        if (it.value() >= 1.0 || unit(rng) < it.value()) {
          active[y] = true;
          next.push_back(y);
          if (!base_hit[y % n]) {
            base_hit[y % n] = true;
            ++size;
          }
        }
      }
    }
    frontier.swap(next);
  }
  return size;
}

std::mt19937_64 seed_stream(std::uint64_t base_seed, NodeId v, int t) {
  std::seed_seq seq{static_cast<std::uint32_t>(base_seed),
                    static_cast<std::uint32_t>(base_seed >> 32), static_cast<std::uint32_t>(v),
                    static_cast<std::uint32_t>(t), 0x7ca5cadeU};
  return std::mt19937_64(seq);
}

ScoreTable ticm_scores(const TemporalNetwork& net, const CascadeConfig& cfg) {
  cfg.validate();
  const std::size_t n = net.num_nodes();
  const int slices = cfg.first_slice_only ? 1 : net.num_slices();
  Eigen::MatrixXd joint = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), net.num_slices());

  parallel_for(n * static_cast<std::size_t>(slices), [&](std::size_t task) {
    const auto v = static_cast<NodeId>(task / static_cast<std::size_t>(slices));
    const int t = static_cast<int>(task % static_cast<std::size_t>(slices)) + 1;
    auto rng = seed_stream(cfg.rng_seed, v, t);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    auto draw = [&](int, std::size_t) { return unit(rng); };
    Workspace& ws = thread_workspace();
    std::size_t total = 0;
    for (long r = 0; r < cfg.runs; ++r) {
      total += run_cascade(net, v, t, cfg.rho, cfg.variant, draw, ws);
    }
    joint(v, t - 1) = static_cast<double>(total) / static_cast<double>(cfg.runs);
  });
  return ScoreTable::from_joint(Method::TICM, std::move(joint), net);
}

SubcriticalityReport subcriticality_check(const TemporalNetwork& net, double rho,
                                          const ScoreTable& ticm) {
  SubcriticalityReport report;
  report.rho = rho;
  for (int t = 1; t <= net.num_slices(); ++t) {
    report.spectral_proxy.push_back(rho * spectral_radius(slice_adjacency(net, t)));
  }
  // Slices that were never seeded hold zeros and are left out of the mean.
  double total = 0.0;
  std::size_t cells = 0;
  for (Eigen::Index t = 0; t < ticm.joint.cols(); ++t) {
    if (ticm.joint.col(t).maxCoeff() == 0.0) continue;
    total += ticm.joint.col(t).sum();
    cells += static_cast<std::size_t>(ticm.joint.rows());
  }
  report.mean_cascade = cells == 0 ? 0.0 : total / static_cast<double>(cells);
  const auto n = static_cast<double>(net.num_nodes());
  report.fraction_reached = n == 0.0 ? 0.0 : report.mean_cascade / n;
  report.supercritical_suspect = report.mean_cascade > 0.1 * n;
  return report;
}

SubcriticalityReport subcriticality_check(const TemporalNetwork& net, const CascadeConfig& cfg) {
  return subcriticality_check(net, cfg.rho, ticm_scores(net, cfg));
}

}  // namespace tempinf
