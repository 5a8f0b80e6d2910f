#include "tempinf/score_table.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <string>
#include <unordered_map>

#include <fmt/format.h>

#include "tempinf/aggregate.hpp"
#include "tempinf/errors.hpp"
#include "text_util.hpp"

namespace tempinf {

std::string_view method_name(Method m) noexcept {
  switch (m) {
    case Method::TICM: return "ticm";
    case Method::Degree: return "degree";
    case Method::Closeness: return "closeness";
    case Method::Eigenvector: return "eigenvector";
    case Method::PageRank: return "pagerank";
    case Method::Katz: return "katz";
  }
  return "unknown";
}

std::optional<Method> parse_method(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "t-icm") lower = "ticm";
  for (Method m : kAllMethods) {
    if (method_name(m) == lower) return m;
  }
  return std::nullopt;
}

ScoreTable ScoreTable::from_joint(Method method, Eigen::MatrixXd joint,
                                  const TemporalNetwork& net) {
  if (static_cast<std::size_t>(joint.rows()) != net.num_nodes() ||
      joint.cols() != net.num_slices()) {
    throw InputError(fmt::format("score matrix is {}x{}, network is {}x{}", joint.rows(),
                                 joint.cols(), net.num_nodes(), net.num_slices()));
  }
  for (Eigen::Index i = 0; i < joint.size(); ++i) {
    const double x = joint.data()[i];
    if (!std::isfinite(x) || x < 0.0) {
      throw InputError(fmt::format("{} scores contain invalid value {}", method_name(method), x));
    }
  }
  ScoreTable table;
  table.method = method;
  table.joint = std::move(joint);
  table.mnc.resize(net.num_nodes());
  for (Eigen::Index v = 0; v < table.joint.rows(); ++v) table.mnc[v] = table.joint.row(v).sum();
  table.mlc.resize(static_cast<std::size_t>(net.num_slices()));
  for (Eigen::Index t = 0; t < table.joint.cols(); ++t) table.mlc[t] = table.joint.col(t).sum();
  table.mcc = marginal_community_centrality(table.mnc, net).raw;
  return table;
}

std::vector<double> ScoreTable::slice_scores(int t) const {
  if (t < 1 || t > num_slices()) throw InputError(fmt::format("slice {} out of range", t));
  const auto col = joint.col(t - 1);
  return {col.begin(), col.end()};
}

void write_score_table(const ScoreTable& table, const TemporalNetwork& net,
                       const std::filesystem::path& csv,
                       const std::filesystem::path& summary_csv) {
  std::ofstream out(csv);
  if (!out) throw InputError(fmt::format("cannot write {}", csv.string()));
  out << "node,community";
  for (int t = 1; t <= table.num_slices(); ++t) out << ",t" << t;
  out << ",mnc\n";
  for (NodeId v = 0; v < table.num_nodes(); ++v) {
    out << net.node_name(v) << ',' << net.community_name(net.community(v));
    for (int t = 0; t < table.num_slices(); ++t) out << fmt::format(",{:.17g}", table.joint(v, t));
    out << fmt::format(",{:.17g}\n", table.mnc[v]);
  }

  std::ofstream summary(summary_csv);
  if (!summary) throw InputError(fmt::format("cannot write {}", summary_csv.string()));
  summary << "row";
  for (int t = 1; t <= table.num_slices(); ++t) summary << ",t" << t;
  summary << ",mcc\n";
  summary << "mlc";
  for (double x : table.mlc) summary << fmt::format(",{:.17g}", x);
  summary << ",\n";
  const auto mcc = marginal_community_centrality(table.mnc, net);
  for (CommunityId c = 0; c < net.num_communities(); ++c) {
    summary << "mcc:" << net.community_name(c);
    for (int t = 0; t < table.num_slices(); ++t) summary << ',';
    summary << fmt::format(",{:.17g}\n", mcc.raw[c]);
  }
}

ScoreTable read_score_table(Method method, const TemporalNetwork& net,
                            const std::filesystem::path& csv) {
  std::ifstream in(csv);
  if (!in) throw InputError(fmt::format("cannot open {}", csv.string()));
  std::string line;
  if (!std::getline(in, line)) throw InputError(fmt::format("{}: empty file", csv.string()));
  const auto header = detail::split(line, ',');
  const int slices = static_cast<int>(header.size()) - 3;
  if (slices != net.num_slices() || header[0] != "node") {
    throw InputError(fmt::format("{}: header does not match network", csv.string()));
  }
  std::unordered_map<std::string, NodeId> index;
  for (NodeId v = 0; v < net.num_nodes(); ++v) index.emplace(net.node_name(v), v);

  Eigen::MatrixXd joint = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(net.num_nodes()), slices);
  std::vector<bool> seen(net.num_nodes(), false);
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (detail::trim(line).empty()) continue;
    const auto fields = detail::split(line, ',');
    if (static_cast<int>(fields.size()) != slices + 3) {
      throw InputError(fmt::format("{} row {}: wrong field count", csv.string(), row));
    }
    const auto it = index.find(std::string(fields[0]));
    if (it == index.end()) {
      throw InputError(fmt::format("{} row {}: unknown node {}", csv.string(), row, fields[0]));
    }
    seen[it->second] = true;
    for (int t = 0; t < slices; ++t) {
      const auto x = detail::parse_number<double>(fields[static_cast<std::size_t>(t + 2)]);
      if (!x) throw InputError(fmt::format("{} row {}: bad number", csv.string(), row));
      joint(it->second, t) = *x;
    }
  }
  if (std::find(seen.begin(), seen.end(), false) != seen.end()) {
    throw InputError(fmt::format("{}: not every node has scores", csv.string()));
  }
  return ScoreTable::from_joint(method, std::move(joint), net);
}

}  // namespace tempinf
