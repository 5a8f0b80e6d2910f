#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <string>
#include <unordered_map>

#include <fmt/format.h>

#include "tempinf/errors.hpp"
#include "tempinf/network.hpp"
#include "text_util.hpp"

namespace tempinf {

namespace {

struct RawEdge {
  std::string slice;
  NodeId src;
  NodeId dst;
  std::size_t row;
};

std::ifstream open_input(const std::filesystem::path& p) {
  std::ifstream in(p);
  if (!in) throw InputError(fmt::format("cannot open {}", p.string()));
  return in;
}

BandId parse_band(std::string_view token, std::size_t row) {
  const auto b = detail::parse_number<int>(token);
  if (!b || *b < 1 || *b > kNumBands) {
    throw InputError(fmt::format("meta row {}: band '{}' outside 1..3", row, token));
  }
  return static_cast<BandId>(*b);
}

}  // namespace

TemporalNetwork load_temporal_network(const std::filesystem::path& edge_file,
                                      const std::filesystem::path& meta_file) {
  TemporalNetwork::Parts parts;

  // Metadata first: it fixes the node set and the dense id order.
  std::unordered_map<std::string, NodeId> node_index;
  std::vector<std::string> community_tokens;
  std::vector<std::vector<BandId>> node_bands;  // [node][slice]
  std::size_t band_columns = 0;
  {
    auto in = open_input(meta_file);
    std::string line;
    std::size_t row = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
      ++row;
      const auto stripped = detail::trim(line);
      if (stripped.empty() || stripped.front() == '#') continue;
      const auto fields = detail::split(stripped, ',');
      if (!header_seen) {
        header_seen = true;
        if (fields.size() < 2 || fields[0] != "node" || fields[1] != "community") {
          throw InputError(fmt::format("{}: header must start with node,community",
                                       meta_file.string()));
        }
        band_columns = fields.size() - 2;
        continue;
      }
      if (fields.size() != band_columns + 2) {
        throw InputError(fmt::format("meta row {}: expected {} fields, got {}", row,
                                     band_columns + 2, fields.size()));
      }
      if (fields[0].empty()) throw InputError(fmt::format("meta row {}: empty node id", row));
      if (fields[1].empty()) {
        throw InputError(fmt::format("meta row {}: missing community label for node {}",
                                     row, fields[0]));
      }
      const auto id = static_cast<NodeId>(parts.node_names.size());
      if (!node_index.emplace(std::string(fields[0]), id).second) {
        throw InputError(fmt::format("meta row {}: node {} listed twice", row, fields[0]));
      }
      parts.node_names.emplace_back(fields[0]);
      community_tokens.emplace_back(fields[1]);
      std::vector<BandId> bands;
      for (std::size_t k = 0; k < band_columns; ++k) bands.push_back(parse_band(fields[k + 2], row));
      node_bands.push_back(std::move(bands));
    }
    if (!header_seen) throw InputError(fmt::format("{}: empty metadata file", meta_file.string()));
  }

  std::set<std::string, decltype([](const std::string& a, const std::string& b) {
             return detail::natural_less(a, b);
           })>
      community_set(community_tokens.begin(), community_tokens.end());
  std::map<std::string, CommunityId> community_index;
  for (const auto& name : community_set) {
    community_index.emplace(name, static_cast<CommunityId>(parts.community_names.size()));
    parts.community_names.push_back(name);
  }
  for (const auto& token : community_tokens) parts.community_of.push_back(community_index.at(token));

  std::vector<RawEdge> raw;
  std::vector<std::string> declared_slices;
  {
    auto in = open_input(edge_file);
    std::string line;
    std::size_t row = 0;
    while (std::getline(in, line)) {
      ++row;
      const auto stripped = detail::trim(line);
      if (stripped.starts_with("# slices")) {
        const auto tokens = detail::split_whitespace(stripped.substr(8));
        declared_slices.assign(tokens.begin(), tokens.end());
        continue;
      }
      if (stripped.empty() || stripped.front() == '#') continue;
      auto fields = stripped.find('\t') != std::string_view::npos ? detail::split(stripped, '\t')
                                                                  : detail::split_whitespace(stripped);
      if (fields.size() != 3) {
        throw InputError(fmt::format("edge row {}: expected slice, src, dst", row));
      }
      if (fields[0] == "slice" && fields[1] == "src" && fields[2] == "dst") continue;
      const auto src = node_index.find(std::string(fields[1]));
      const auto dst = node_index.find(std::string(fields[2]));
      if (src == node_index.end() || dst == node_index.end()) {
        throw InputError(fmt::format("edge row {}: unknown node {}", row,
                                     src == node_index.end() ? fields[1] : fields[2]));
      }
      if (src->second == dst->second) {
        throw InputError(fmt::format("edge row {}: self-loop on node {}", row, fields[1]));
      }
      raw.push_back({std::string(fields[0]), src->second, dst->second, row});
    }
  }

  std::vector<std::string> slice_tokens = declared_slices;
  for (const auto& e : raw) slice_tokens.push_back(e.slice);
  std::sort(slice_tokens.begin(), slice_tokens.end(), detail::natural_less);
  slice_tokens.erase(std::unique(slice_tokens.begin(), slice_tokens.end()), slice_tokens.end());
  if (slice_tokens.empty()) {
    // A file without edges still describes one (empty) slice per band column.
    for (std::size_t k = 1; k <= std::max<std::size_t>(band_columns, 1); ++k) {
      slice_tokens.push_back(std::to_string(k));
    }
  }
  if (band_columns != 0 && band_columns < slice_tokens.size()) {
    throw InputError(fmt::format("metadata has {} band columns but edges use {} slices",
                                 band_columns, slice_tokens.size()));
  }
  // Trailing edgeless slices can only be declared through band columns.
  for (std::size_t k = slice_tokens.size(); k < band_columns; ++k) {
    slice_tokens.push_back(std::to_string(k + 1));
  }

  std::map<std::string, std::size_t> slice_index;
  for (std::size_t s = 0; s < slice_tokens.size(); ++s) slice_index.emplace(slice_tokens[s], s);
  parts.slice_names = slice_tokens;
  parts.slices.assign(slice_tokens.size(), {});
  std::vector<std::set<std::pair<NodeId, NodeId>>> seen(slice_tokens.size());
  for (const auto& e : raw) {
    const std::size_t s = slice_index.at(e.slice);
    if (!seen[s].emplace(e.src, e.dst).second) {
      throw InputError(fmt::format("edge row {}: duplicate edge {}->{} in slice {}", e.row,
                                   parts.node_names[e.src], parts.node_names[e.dst], e.slice));
    }
    parts.slices[s].push_back({e.src, e.dst});
  }

  if (band_columns > 0) {
    BandSeries bands(slice_tokens.size(), std::vector<BandId>(parts.node_names.size()));
    for (std::size_t v = 0; v < node_bands.size(); ++v) {
      for (std::size_t s = 0; s < slice_tokens.size(); ++s) bands[s][v] = node_bands[v][s];
    }
    parts.true_bands = std::move(bands);
  }
  return TemporalNetwork(std::move(parts));
}

void save_temporal_network(const TemporalNetwork& net, const std::filesystem::path& edge_file,
                           const std::filesystem::path& meta_file) {
  std::ofstream edges(edge_file);
  if (!edges) throw InputError(fmt::format("cannot write {}", edge_file.string()));
  edges << "# slices";
  for (int t = 1; t <= net.num_slices(); ++t) edges << ' ' << net.slice_name(t);
  edges << '\n';
  for (int t = 1; t <= net.num_slices(); ++t) {
    for (const Edge& e : net.slice(t)) {
      edges << net.slice_name(t) << '\t' << net.node_name(e.src) << '\t' << net.node_name(e.dst)
            << '\n';
    }
  }

  std::ofstream meta(meta_file);
  if (!meta) throw InputError(fmt::format("cannot write {}", meta_file.string()));
  meta << "node,community";
  if (net.has_true_bands()) {
    for (int t = 1; t <= net.num_slices(); ++t) meta << ",band_t" << t;
  }
  meta << '\n';
  for (NodeId v = 0; v < net.num_nodes(); ++v) {
    meta << net.node_name(v) << ',' << net.community_name(net.community(v));
    if (net.has_true_bands()) {
      for (int t = 1; t <= net.num_slices(); ++t) {
        meta << ',' << static_cast<int>(net.true_bands()[static_cast<std::size_t>(t - 1)][v]);
      }
    }
    meta << '\n';
  }
}

}  // namespace tempinf
