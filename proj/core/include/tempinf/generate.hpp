#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tempinf/network.hpp"

namespace tempinf {

struct DegreeLaw {
  enum class Kind { Fixed, Poisson };
  Kind kind = Kind::Fixed;
  double value = 0.0;  // exact degree or Poisson mean

  static DegreeLaw fixed(int d) { return {Kind::Fixed, static_cast<double>(d)}; }
  static DegreeLaw poisson(double lambda) { return {Kind::Poisson, lambda}; }
};

struct BandSpec {
  int nodes = 0;
  DegreeLaw degree;
};

struct CommunitySpec {
  std::string name;
  std::array<BandSpec, kNumBands> bands;

  int size() const noexcept;
};

/// Declarative BandNet parameters. Exactly two communities.
/// How one stub-matched connection {a, b} becomes directed edges.
enum class Orientation {
  Random,      // a single edge, direction drawn uniformly
  Reciprocal,  // both a -> b and b -> a
};

/// What a band swap between two nodes exchanges.
enum class SwapMode {
  Relabel,    // band labels and all connections: v takes over w's edges
  LabelOnly,  // band labels only; the graph is left as it was
};

struct GeneratorSpec {
  std::array<CommunitySpec, 2> communities;
  int inter_edges = 0;
  int slices = 4;
  double swap_fraction = 0.10;
  double rewire_fraction = 0.10;
  std::uint64_t rng_seed = 0;
  Orientation orientation = Orientation::Reciprocal;
  SwapMode swap_mode = SwapMode::LabelOnly;

  int num_nodes() const noexcept;
  /// Throws ConfigError on any violated invariant.
  void validate() const;
};

/// Shipped presets: "bandnet1", "bandnet2", "bandnet3".
GeneratorSpec preset_spec(std::string_view name);

/// INI file, one section per community band, e.g.
///   [network]    slices, inter_edges, swap_fraction, rewire_fraction, seed,
///                orientation = reciprocal | random, swap = label | relabel,
///                community1, community2
///   [C1 band1]   nodes = 5, degree = fixed:30 | poisson:40
GeneratorSpec load_generator_spec(const std::filesystem::path& ini);
void save_generator_spec(const GeneratorSpec& spec, const std::filesystem::path& ini);

/// A single slice under construction. Each entry of `edges` is one
/// connection; bandnet() expands it to both directions under
/// Orientation::Reciprocal.
struct SliceState {
  std::vector<Edge> edges;
  std::vector<BandId> bands;
};

struct InitialSlice {
  SliceState state;
  std::vector<CommunityId> community_of;
  /// Nodes that received an extra stub to make a community's total even.
  std::vector<NodeId> parity_fixes;
};

/// Slice 1: per-community configuration model plus inter-community edges.
InitialSlice bandnet_initial(const GeneratorSpec& spec, std::mt19937_64& rng);

/// Next slice: adjacent-band swaps followed by rewiring.
SliceState bandnet_evolve(const SliceState& previous,
                          const std::vector<CommunityId>& community_of,
                          const GeneratorSpec& spec, std::mt19937_64& rng);

/// Full temporal BandNet with per-slice true bands.
TemporalNetwork bandnet(const GeneratorSpec& spec);

/// Per-node stub counts within one slice of a two-community network.
struct StubLedger {
  std::vector<std::uint32_t> intra_in;
  std::vector<std::uint32_t> intra_out;
  std::vector<std::uint32_t> inter_in;
  std::vector<std::uint32_t> inter_out;

  static StubLedger of_slice(std::span<const Edge> edges,
                             std::span<const CommunityId> community_of);
  friend bool operator==(const StubLedger&, const StubLedger&) = default;
};

/// Community-preserving configuration model. Every slice is rebuilt so each
/// node keeps its four stub counts exactly. Throws InputError unless the
/// network has exactly two communities.
TemporalNetwork config_randomize(const TemporalNetwork& net, std::uint64_t seed);

}  // namespace tempinf
