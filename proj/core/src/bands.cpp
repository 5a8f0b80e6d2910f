#include "tempinf/bands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <tuple>
#include <numeric>
#include <queue>
#include <unordered_map>

#include <fmt/format.h>

#include "tempinf/errors.hpp"
#include "text_util.hpp"

namespace tempinf {

namespace {

constexpr int kMaxElbowClusters = 10;

// Distinct score values with multiplicities, ascending.
struct Levels {
  std::vector<double> value;
  std::vector<std::size_t> count;
};

// A partition of the level axis into contiguous runs; entry i is the first
// level of cluster i.
using Cut = std::vector<std::size_t>;

// In one dimension complete linkage only ever merges neighbouring
// intervals: for intervals A < B < C, diam(A u C) > diam(A u B). The
// dendrogram is therefore replayed on a linked list of intervals with a
// heap keyed by (merged diameter, left start).
std::vector<Cut> dendrogram_cuts(const Levels& levels, std::size_t max_k) {
  const std::size_t g = levels.value.size();
  std::vector<std::size_t> last(g), prev(g), next(g);
  std::vector<bool> alive(g, true);
  std::vector<unsigned> version(g, 0);
  for (std::size_t i = 0; i < g; ++i) {
    last[i] = i;
    prev[i] = i == 0 ? g : i - 1;
    next[i] = i + 1;
  }
  using Entry = std::tuple<double, std::size_t, unsigned, unsigned>;  // cost, left, vl, vr
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
  auto push = [&](std::size_t left) {
    const std::size_t right = next[left];
    if (right >= g) return;
    heap.emplace(levels.value[last[right]] - levels.value[left], left, version[left],
                 version[right]);
  };
  for (std::size_t i = 0; i + 1 < g; ++i) push(i);

  std::vector<Cut> cuts(max_k + 1);
  auto snapshot = [&](std::size_t k) {
    Cut cut;
    for (std::size_t i = 0; i < g; i = next[i]) cut.push_back(i);
    cuts[k] = std::move(cut);
  };
  std::size_t clusters = g;
  if (clusters <= max_k) snapshot(clusters);
  while (clusters > 1) {
    const auto [cost, left, vl, vr] = heap.top();
    heap.pop();
    const std::size_t right = next[left];
    if (!alive[left] || right >= g || version[left] != vl || version[right] != vr) continue;
    last[left] = last[right];
    next[left] = next[right];
    if (next[left] < g) prev[next[left]] = left;
    alive[right] = false;
    ++version[left];
    --clusters;
    if (prev[left] < g) push(prev[left]);
    push(left);
    if (clusters <= max_k) snapshot(clusters);
  }
  return cuts;
}

struct ClusterStats {
  double weight = 0.0;
  double mean = 0.0;
};

std::vector<ClusterStats> cluster_stats(const Levels& levels, const Cut& cut) {
  std::vector<ClusterStats> out;
  for (std::size_t c = 0; c < cut.size(); ++c) {
    const std::size_t end = c + 1 < cut.size() ? cut[c + 1] : levels.value.size();
    ClusterStats s;
    double sum = 0.0;
    for (std::size_t i = cut[c]; i < end; ++i) {
      s.weight += static_cast<double>(levels.count[i]);
      sum += static_cast<double>(levels.count[i]) * levels.value[i];
    }
    s.mean = sum / s.weight;
    out.push_back(s);
  }
  return out;
}

// Within-cluster sum of squared deviations, two-pass.
double within_ss(const Levels& levels, const Cut& cut) {
  const auto stats = cluster_stats(levels, cut);
  double total = 0.0;
  for (std::size_t c = 0; c < cut.size(); ++c) {
    const std::size_t end = c + 1 < cut.size() ? cut[c + 1] : levels.value.size();
    for (std::size_t i = cut[c]; i < end; ++i) {
      const double d = levels.value[i] - stats[c].mean;
      total += static_cast<double>(levels.count[i]) * d * d;
    }
  }
  return total;
}

// Merge the pair of neighbouring clusters with the closest means until
// three remain.
Cut merge_by_means(const Levels& levels, Cut cut) {
  while (cut.size() > kNumBands) {
    const auto stats = cluster_stats(levels, cut);
    std::size_t best = 0;
    double best_gap = std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c + 1 < stats.size(); ++c) {
      const double gap = stats[c + 1].mean - stats[c].mean;
      if (gap < best_gap) {
        best_gap = gap;
        best = c;
      }
    }
    cut.erase(cut.begin() + static_cast<std::ptrdiff_t>(best + 1));
  }
  return cut;
}

}  // namespace

ClusterResult cluster_bands(std::span<const double> scores) {
  const std::size_t n = scores.size();
  if (n == 0) throw InputError("cannot cluster an empty score vector");
  for (double s : scores) {
    if (!std::isfinite(s)) throw InputError("scores must be finite");
  }

  Levels levels;
  {
    std::vector<double> sorted(scores.begin(), scores.end());
    std::sort(sorted.begin(), sorted.end());
    for (double s : sorted) {
      if (levels.value.empty() || levels.value.back() != s) {
        levels.value.push_back(s);
        levels.count.push_back(1);
      } else {
        ++levels.count.back();
      }
    }
  }
  const std::size_t g = levels.value.size();

  ClusterResult result;
  result.bands.resize(n);
  Cut cut;
  if (g < static_cast<std::size_t>(kNumBands)) {
    // Every distinct value is its own band, highest first.
    result.degenerate = true;
    result.elbow_k = static_cast<int>(g);
    for (std::size_t i = 0; i < g; ++i) cut.push_back(i);
  } else {
    const std::size_t max_k = std::min<std::size_t>(kMaxElbowClusters, g);
    const auto cuts = dendrogram_cuts(levels, max_k);
    std::vector<double> w(max_k + 2, 0.0);
    for (std::size_t k = 1; k <= max_k; ++k) w[k] = within_ss(levels, cuts[k]);
    std::size_t elbow = 2;
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 2; k < max_k; ++k) {
      const double curvature = w[k - 1] - 2.0 * w[k] + w[k + 1];
      if (curvature > best) {
        best = curvature;
        elbow = k;
      }
    }
    result.elbow_k = static_cast<int>(elbow);
    cut = elbow > static_cast<std::size_t>(kNumBands) ? merge_by_means(levels, cuts[elbow])
                                                      : cuts[kNumBands];
  }

  // Cluster c (ascending) maps to band (#clusters - c) when there are three,
  // and to band (g - c) in the degenerate case.
  const std::size_t clusters = cut.size();
  std::vector<BandId> level_band(g);
  for (std::size_t c = 0; c < clusters; ++c) {
    const std::size_t end = c + 1 < clusters ? cut[c + 1] : g;
    for (std::size_t i = cut[c]; i < end; ++i) {
      level_band[i] = band_from_index(static_cast<int>(clusters - 1 - c));
    }
  }
  for (std::size_t v = 0; v < n; ++v) {
    const auto it = std::lower_bound(levels.value.begin(), levels.value.end(), scores[v]);
    result.bands[v] = level_band[static_cast<std::size_t>(it - levels.value.begin())];
  }
  return result;
}

std::array<long, kNumBands> BandAssignment::populations(int t) const {
  std::array<long, kNumBands> out{};
  for (BandId b : bands.at(static_cast<std::size_t>(t - 1))) ++out[static_cast<std::size_t>(band_index(b))];
  return out;
}

BandAssignment assign_bands(const ScoreTable& table) {
  BandAssignment out;
  for (int t = 1; t <= table.num_slices(); ++t) {
    const auto scores = table.slice_scores(t);
    auto r = cluster_bands(scores);
    out.bands.push_back(std::move(r.bands));
    out.degenerate.push_back(r.degenerate);
  }
  return out;
}

BandAssignment assign_mnc_bands(const ScoreTable& table) {
  auto r = cluster_bands(table.mnc);
  BandAssignment out;
  out.bands.push_back(std::move(r.bands));
  out.degenerate.push_back(r.degenerate);
  return out;
}

std::vector<FlowMatrix> band_flow(const BandAssignment& assign) {
  std::vector<FlowMatrix> flows;
  for (int t = 1; t < assign.num_slices(); ++t) {
    FlowMatrix f{};
    const auto& from = assign.bands[static_cast<std::size_t>(t - 1)];
    const auto& to = assign.bands[static_cast<std::size_t>(t)];
    if (from.size() != to.size()) throw InputError("band assignment changes node count");
    for (std::size_t v = 0; v < from.size(); ++v) {
      ++f[static_cast<std::size_t>(band_index(from[v]))][static_cast<std::size_t>(band_index(to[v]))];
    }
    flows.push_back(f);
  }
  return flows;
}

AccuracyReport balanced_accuracy(const BandAssignment& predicted, const BandAssignment& truth) {
  if (predicted.num_slices() != truth.num_slices()) {
    throw InputError(fmt::format("assignments cover {} and {} slices", predicted.num_slices(),
                                 truth.num_slices()));
  }
  AccuracyReport report;
  for (int t = 1; t <= truth.num_slices(); ++t) {
    const auto& p = predicted.bands[static_cast<std::size_t>(t - 1)];
    const auto& r = truth.bands[static_cast<std::size_t>(t - 1)];
    if (p.size() != r.size()) {
      throw InputError(fmt::format("slice {}: node sets differ ({} vs {})", t, p.size(), r.size()));
    }
    std::array<double, kNumBands> size{}, correct{};
    for (std::size_t v = 0; v < r.size(); ++v) {
      const auto b = static_cast<std::size_t>(band_index(r[v]));
      size[b] += 1.0;
      if (p[v] == r[v]) correct[b] += 1.0;
    }
    double ba = 0.0;
    for (int b = 0; b < kNumBands; ++b) {
      if (size[static_cast<std::size_t>(b)] == 0.0) {
        report.empty_reference_bands.emplace_back(t, band_from_index(b));
        continue;
      }
      ba += correct[static_cast<std::size_t>(b)] / size[static_cast<std::size_t>(b)];
    }
    report.per_slice.push_back(ba / kNumBands);
  }
  if (!report.per_slice.empty()) {
    report.overall = std::accumulate(report.per_slice.begin(), report.per_slice.end(), 0.0) /
                     static_cast<double>(report.per_slice.size());
  }
  return report;
}

AccuracyReport method_agreement(const BandAssignment& a, const BandAssignment& reference) {
  return balanced_accuracy(a, reference);
}

BandAssignment truth_assignment(const TemporalNetwork& net) {
  BandAssignment out;
  out.bands = net.true_bands();
  out.degenerate.assign(out.bands.size(), false);
  return out;
}

void write_band_assignment(const BandAssignment& assign, const TemporalNetwork& net,
                           const std::filesystem::path& csv) {
  std::ofstream out(csv);
  if (!out) throw InputError(fmt::format("cannot write {}", csv.string()));
  out << "node,community";
  for (int t = 1; t <= assign.num_slices(); ++t) out << ",band_t" << t;
  out << '\n';
  for (NodeId v = 0; v < assign.num_nodes(); ++v) {
    out << net.node_name(v) << ',' << net.community_name(net.community(v));
    for (const auto& slice : assign.bands) out << ',' << static_cast<int>(slice[v]);
    out << '\n';
  }
}

BandAssignment read_band_assignment(const TemporalNetwork& net, const std::filesystem::path& csv) {
  std::ifstream in(csv);
  if (!in) throw InputError(fmt::format("cannot open {}", csv.string()));
  std::string line;
  if (!std::getline(in, line)) throw InputError(fmt::format("{}: empty file", csv.string()));
  const auto header = detail::split(line, ',');
  if (header.size() < 3 || header[0] != "node") {
    throw InputError(fmt::format("{}: expected node,community,band_t1..", csv.string()));
  }
  const std::size_t slices = header.size() - 2;
  std::unordered_map<std::string, NodeId> index;
  for (NodeId v = 0; v < net.num_nodes(); ++v) index.emplace(net.node_name(v), v);

  BandAssignment out;
  out.bands.assign(slices, std::vector<BandId>(net.num_nodes(), BandId::Three));
  out.degenerate.assign(slices, false);
  std::vector<bool> seen(net.num_nodes(), false);
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (detail::trim(line).empty()) continue;
    const auto fields = detail::split(line, ',');
    if (fields.size() != slices + 2) {
      throw InputError(fmt::format("{} row {}: wrong field count", csv.string(), row));
    }
    const auto it = index.find(std::string(fields[0]));
    if (it == index.end()) {
      throw InputError(fmt::format("{} row {}: unknown node {}", csv.string(), row, fields[0]));
    }
    seen[it->second] = true;
    for (std::size_t s = 0; s < slices; ++s) {
      const auto b = detail::parse_number<int>(fields[s + 2]);
      if (!b || *b < 1 || *b > kNumBands) {
        throw InputError(fmt::format("{} row {}: band outside 1..3", csv.string(), row));
      }
      out.bands[s][it->second] = static_cast<BandId>(*b);
    }
  }
  if (std::find(seen.begin(), seen.end(), false) != seen.end()) {
    throw InputError(fmt::format("{}: not every node has a band", csv.string()));
  }
  return out;
}

void write_band_flow(const std::vector<FlowMatrix>& flows, const std::filesystem::path& csv) {
  std::ofstream out(csv);
  if (!out) throw InputError(fmt::format("cannot write {}", csv.string()));
  out << "t,from_band,to_band,count\n";
  for (std::size_t t = 0; t < flows.size(); ++t) {
    for (int i = 0; i < kNumBands; ++i) {
      for (int j = 0; j < kNumBands; ++j) {
        out << t + 1 << ',' << i + 1 << ',' << j + 1 << ','
            << flows[t][static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] << '\n';
      }
    }
  }
}

}  // namespace tempinf
