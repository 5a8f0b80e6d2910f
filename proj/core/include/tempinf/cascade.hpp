#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "tempinf/network.hpp"
#include "tempinf/score_table.hpp"
#include "tempinf/supra.hpp"

namespace tempinf {

enum class CascadeVariant {
  Persistent,   // infected nodes stay infectious in later slices
  Reinfection,  // only the previous slice's new infections spread
};

struct CascadeConfig {
  double rho = 0.1;
  long runs = 1000;
  std::uint64_t rng_seed = 0;
  CascadeVariant variant = CascadeVariant::Persistent;
  /// Seed only in slice 1 instead of every slice.
  bool first_slice_only = false;

  void validate() const;
};

/// Supplies the uniform variate for the attempt along edge `edge` (index
/// into net.slice(t)) during slice t. Lets callers couple randomness.
using AttemptUniform = std::function<double(int t, std::size_t edge)>;

/// One cascade seeded at (seed, seed_slice); returns the number of
/// distinct nodes ever infected.
std::size_t simulate_cascade(const TemporalNetwork& net, NodeId seed, int seed_slice,
                             double rho, CascadeVariant variant,
                             const AttemptUniform& uniform);

/// Same, drawing attempts from `rng`.
std::size_t simulate_cascade(const TemporalNetwork& net, NodeId seed, int seed_slice,
                             double rho, CascadeVariant variant, std::mt19937_64& rng);

/// Independent-cascade frontier expansion directly on a supra-matrix whose
/// entries are transmission probabilities (build_cascade output). Seeds the
/// copy of `seed` in layer seed_slice - 1 and counts distinct base nodes.
std::size_t simulate_on_supra(const SupraMatrix& w, NodeId seed, int seed_slice,
                              std::mt19937_64& rng);

/// Deterministic stream for seed (v, t) under `base_seed`; independent of
/// how (v, t) pairs are scheduled over workers.
std::mt19937_64 seed_stream(std::uint64_t base_seed, NodeId v, int t);

/// joint(v, t) = mean cascade size over cfg.runs runs seeded at (v, t).
/// With first_slice_only, slices after the first score zero.
ScoreTable ticm_scores(const TemporalNetwork& net, const CascadeConfig& cfg);

struct SubcriticalityReport {
  double rho = 0.0;
  std::vector<double> spectral_proxy;  // rho * zeta(A^(t)) per slice
  double mean_cascade = 0.0;
  double fraction_reached = 0.0;  // mean_cascade / N
  bool supercritical_suspect = false;
};

/// Mean cascade over all seeds (v, t); flags the run when the mean exceeds
/// 10% of N.
SubcriticalityReport subcriticality_check(const TemporalNetwork& net,
                                          const CascadeConfig& cfg);

/// Same, reusing already computed T-ICM scores.
SubcriticalityReport subcriticality_check(const TemporalNetwork& net, double rho,
                                          const ScoreTable& ticm);

}  // namespace tempinf
