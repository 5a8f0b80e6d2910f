#include <cmath>
#include <fstream>
#include <set>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "tempinf/errors.hpp"
#include "tempinf/generate.hpp"

using namespace tempinf;

namespace {

GeneratorSpec preset(const char* name, std::uint64_t seed = 42) {
  auto spec = preset_spec(name);
  spec.rng_seed = seed;
  return spec;
}

int fixed_degree(BandId b) {
  switch (band_index(b)) {
    case 0: return 30;
    case 1: return 10;
    default: return 2;
  }
}

std::array<std::size_t, 3> edge_classes(const TemporalNetwork& net, int t) {
  std::array<std::size_t, 3> counts{};
  for (const Edge& e : net.slice(t)) {
    const auto cs = net.community(e.src);
    const auto cd = net.community(e.dst);
    ++counts[cs == cd ? cs : 2];
  }
  return counts;
}

std::array<int, 3> populations(const std::vector<BandId>& bands) {
  std::array<int, 3> out{};
  for (BandId b : bands) ++out[static_cast<std::size_t>(band_index(b))];
  return out;
}

}  // namespace

TEST(Generate, BandNet1SliceOneRealisesTheDegreeSequence) {
  const auto net = bandnet(preset("bandnet1"));
  ASSERT_EQ(net.num_nodes(), 1110u);
  const auto ledger = StubLedger::of_slice(net.slice(1), net.communities());
  const auto& bands = net.true_bands()[0];
  for (NodeId v = 0; v < net.num_nodes(); ++v) {
    ASSERT_EQ(ledger.intra_out[v], static_cast<std::uint32_t>(fixed_degree(bands[v]))) << v;
    ASSERT_EQ(ledger.intra_in[v], ledger.intra_out[v]);
  }
  // Reciprocal: 100 inter connections become 200 directed edges.
  EXPECT_EQ(edge_classes(net, 1)[2], 200u);
}

TEST(Generate, SlicesAreSimpleAndReciprocal) {
  for (const char* name : {"bandnet1", "bandnet2"}) {
    const auto net = bandnet(preset(name, 3));
    for (int t = 1; t <= net.num_slices(); ++t) {
      std::set<std::pair<NodeId, NodeId>> seen;
      for (const Edge& e : net.slice(t)) {
        ASSERT_NE(e.src, e.dst);
        ASSERT_TRUE(seen.insert({e.src, e.dst}).second);
      }
      for (const auto& [a, b] : seen) ASSERT_TRUE(seen.count({b, a})) << name << " slice " << t;
    }
  }
}

TEST(Generate, RandomOrientationEmitsEachConnectionOnce) {
  auto spec = preset("bandnet1");
  spec.orientation = Orientation::Random;
  const auto net = bandnet(spec);
  // Two communities of 1650 stubs each, plus the inter links.
  const std::size_t connections = 2 * 1650 / 2 + 100;
  for (int t = 1; t <= net.num_slices(); ++t) {
    EXPECT_EQ(net.slice(t).size(), connections);
    std::set<std::pair<NodeId, NodeId>> unordered;
    for (const Edge& e : net.slice(t)) {
      ASSERT_TRUE(unordered.insert({std::min(e.src, e.dst), std::max(e.src, e.dst)}).second);
    }
  }
}

TEST(Generate, ZeroDegreeGivesAnEdgelessNetwork) {
  GeneratorSpec spec;
  for (auto& c : spec.communities) {
    for (auto& b : c.bands) b = {4, DegreeLaw::fixed(0)};
  }
  spec.communities[0].name = "A";
  spec.communities[1].name = "B";
  spec.inter_edges = 0;
  EXPECT_EQ(bandnet(spec).total_edges(), 0u);
}

TEST(Generate, PoissonBandMeanDegree) {
  const auto net = bandnet(preset("bandnet2", 7));
  const auto ledger = StubLedger::of_slice(net.slice(1), net.communities());
  const auto& bands = net.true_bands()[0];
  const std::array<double, 3> lambda = {40, 20, 5};
  for (int b = 0; b < 3; ++b) {
    double sum = 0.0;
    int count = 0;
    for (NodeId v = 0; v < net.num_nodes(); ++v) {
      if (band_index(bands[v]) == b) {
        sum += ledger.intra_out[v];
        ++count;
      }
    }
    const double se = std::sqrt(lambda[static_cast<std::size_t>(b)] / count);
    EXPECT_NEAR(sum / count, lambda[static_cast<std::size_t>(b)], 5 * se + 1.0 / count) << b;
  }
}

TEST(Generate, NoSwapNoRewireKeepsSlicesIdentical) {
  auto spec = preset("bandnet2");
  spec.swap_fraction = 0.0;
  spec.rewire_fraction = 0.0;
  const auto net = bandnet(spec);
  for (int t = 2; t <= net.num_slices(); ++t) {
    EXPECT_TRUE(std::equal(net.slice(t).begin(), net.slice(t).end(), net.slice(1).begin(),
                           net.slice(1).end()));
    EXPECT_EQ(net.true_bands()[static_cast<std::size_t>(t - 1)], net.true_bands()[0]);
  }
}

TEST(Generate, BandPopulationsAreConservedForRandomSpecs) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> size(1, 30);
  std::uniform_real_distribution<double> frac(0.0, 0.5);
  for (int trial = 0; trial < 50; ++trial) {
    GeneratorSpec spec;
    for (std::size_t c = 0; c < 2; ++c) {
      spec.communities[c].name = c == 0 ? "A" : "B";
      for (auto& b : spec.communities[c].bands) b = {size(rng), DegreeLaw::poisson(3.0)};
    }
    spec.inter_edges = 10;
    spec.slices = 5;
    spec.swap_fraction = frac(rng);
    spec.rewire_fraction = frac(rng);
    spec.rng_seed = static_cast<std::uint64_t>(trial);
    const auto net = bandnet(spec);
    const auto first = populations(net.true_bands()[0]);
    for (int b = 0; b < 3; ++b) {
      EXPECT_EQ(first[static_cast<std::size_t>(b)],
                spec.communities[0].bands[static_cast<std::size_t>(b)].nodes +
                    spec.communities[1].bands[static_cast<std::size_t>(b)].nodes);
    }
    for (const auto& slice : net.true_bands()) EXPECT_EQ(populations(slice), first);
    for (int t = 2; t <= net.num_slices(); ++t) EXPECT_EQ(edge_classes(net, t), edge_classes(net, 1));
  }
}

TEST(Generate, BandNet1SwapsOneBandOneNodePerSlice) {
  const auto net = bandnet(preset("bandnet1"));
  const auto& tb = net.true_bands();
  for (std::size_t t = 1; t < tb.size(); ++t) {
    int left_band1 = 0, entered_band1 = 0;
    for (NodeId v = 0; v < net.num_nodes(); ++v) {
      const int before = band_index(tb[t - 1][v]);
      const int after = band_index(tb[t][v]);
      if (before == 0 && after != 0) ++left_band1;
      if (before != 0 && after == 0) ++entered_band1;
      // Swaps only move between adjacent bands and stay inside a community.
      EXPECT_LE(std::abs(before - after), 1);
    }
    EXPECT_EQ(left_band1, 1);
    EXPECT_EQ(entered_band1, 1);
  }
}

TEST(Generate, LabelOnlySwapsLeaveTheGraphAlone) {
  auto spec = preset("bandnet1");
  spec.rewire_fraction = 0.0;
  const auto net = bandnet(spec);
  EXPECT_TRUE(std::equal(net.slice(3).begin(), net.slice(3).end(), net.slice(1).begin(),
                         net.slice(1).end()));
  EXPECT_NE(net.true_bands()[2], net.true_bands()[0]);
}

TEST(Generate, RelabelSwapsMoveConnectionsWithTheLabel) {
  auto spec = preset("bandnet1");
  spec.rewire_fraction = 0.0;
  spec.swap_mode = SwapMode::Relabel;
  const auto net = bandnet(spec);
  for (int t = 1; t <= net.num_slices(); ++t) {
    const auto ledger = StubLedger::of_slice(net.slice(t), net.communities());
    const auto& bands = net.true_bands()[static_cast<std::size_t>(t - 1)];
    for (NodeId v = 0; v < net.num_nodes(); ++v) {
      ASSERT_EQ(ledger.intra_out[v], static_cast<std::uint32_t>(fixed_degree(bands[v])));
    }
  }
}

TEST(Generate, BandNet3SizesAndSingleSlice) {
  auto spec = preset("bandnet3");
  const auto net = bandnet(spec);
  EXPECT_EQ(net.community_members(0).size(), 555u);
  EXPECT_EQ(net.community_members(1).size(), 1110u);
  spec.slices = 1;
  EXPECT_EQ(bandnet(spec).num_slices(), 1);
}

TEST(Generate, SameSeedSameNetwork) {
  const auto a = bandnet(preset("bandnet2", 5));
  const auto b = bandnet(preset("bandnet2", 5));
  const auto c = bandnet(preset("bandnet2", 6));
  EXPECT_TRUE(std::equal(a.slice(4).begin(), a.slice(4).end(), b.slice(4).begin(), b.slice(4).end()));
  EXPECT_FALSE(std::equal(a.slice(1).begin(), a.slice(1).end(), c.slice(1).begin(), c.slice(1).end()));
}

TEST(Generate, RejectsInvalidSpecs) {
  EXPECT_THROW(preset_spec("bandnet9"), ConfigError);
  auto spec = preset("bandnet1");
  spec.communities[0].bands[0].degree = DegreeLaw::fixed(600);
  EXPECT_THROW(bandnet(spec), ConfigError);
  spec = preset("bandnet1");
  spec.swap_fraction = 1.5;
  EXPECT_THROW(spec.validate(), ConfigError);
  spec = preset("bandnet1");
  spec.inter_edges = 555 * 555 + 1;
  EXPECT_THROW(spec.validate(), ConfigError);
}

TEST(GeneratorSpecFile, RoundTripsThroughIni) {
  const auto dir = tempinf::testing::scratch_dir("generator_spec");
  for (auto [orientation, swap] : {std::pair{Orientation::Random, SwapMode::Relabel},
                                   std::pair{Orientation::Reciprocal, SwapMode::LabelOnly}}) {
    auto spec = preset("bandnet3", 9);
    spec.orientation = orientation;
    spec.swap_mode = swap;
    spec.swap_fraction = 0.25;
    save_generator_spec(spec, dir / "spec.ini");
    const auto back = load_generator_spec(dir / "spec.ini");
    EXPECT_EQ(back.orientation, orientation);
    EXPECT_EQ(back.swap_mode, swap);
    EXPECT_EQ(back.swap_fraction, 0.25);
    EXPECT_EQ(back.rng_seed, 9u);
    EXPECT_EQ(back.communities[1].bands[2].nodes, 1000);
    EXPECT_EQ(back.communities[0].bands[1].degree.kind, DegreeLaw::Kind::Poisson);
    EXPECT_EQ(back.communities[0].bands[1].degree.value, 20.0);
    const auto a = bandnet(spec);
    const auto b = bandnet(back);
    EXPECT_TRUE(std::equal(a.slice(2).begin(), a.slice(2).end(), b.slice(2).begin(), b.slice(2).end()));
  }
}

TEST(GeneratorSpecFile, RejectsBadValues) {
  const auto dir = tempinf::testing::scratch_dir("generator_spec_bad");
  auto write = [&](const std::string& body) {
    std::ofstream(dir / "bad.ini") << body;
    return dir / "bad.ini";
  };
  EXPECT_THROW(load_generator_spec(write("[network]\norientation = sideways\n")), ConfigError);
  EXPECT_THROW(load_generator_spec(write("[network]\nswap = both\n")), ConfigError);
  EXPECT_THROW(load_generator_spec(write("[network]\n[C1 band1]\nnodes = 3\ndegree = uniform:2\n")),
               ConfigError);
  EXPECT_THROW(load_generator_spec(write("[network]\n[C3 band1]\nnodes = 3\n")), ConfigError);
  EXPECT_THROW(load_generator_spec(write("[C1 band1]\nnodes = 3\n")), ConfigError);
}

TEST(Generate, TinyPoissonCommunitiesAlwaysRealiseASimpleGraph) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    GeneratorSpec spec;
    spec.communities[0].name = "A";
    spec.communities[1].name = "B";
    for (auto& c : spec.communities) c.bands = {BandSpec{1, DegreeLaw::poisson(4)},
                                                BandSpec{1, DegreeLaw::poisson(2)},
                                                BandSpec{2, DegreeLaw::poisson(1)}};
    spec.inter_edges = 2;
    spec.rng_seed = seed;
    const auto net = bandnet(spec);
    for (int t = 1; t <= net.num_slices(); ++t) {
      for (const Edge& e : net.slice(t)) ASSERT_NE(e.src, e.dst);
    }
  }
}

TEST(Generate, NonGraphicalFixedDegreesAreRejected) {
  GeneratorSpec spec;
  spec.communities[0].name = "A";
  spec.communities[1].name = "B";
  // One node of degree 2 next to two isolated nodes.
  for (auto& c : spec.communities) c.bands = {BandSpec{1, DegreeLaw::fixed(2)},
                                              BandSpec{2, DegreeLaw::fixed(0)},
                                              BandSpec{0, DegreeLaw::fixed(0)}};
  EXPECT_THROW(bandnet(spec), ConfigError);
}
