#include "tempinf/aggregate.hpp"

#include <fstream>

#include <fmt/format.h>

#include "tempinf/errors.hpp"

namespace tempinf {

CommunityCentrality marginal_community_centrality(std::span<const double> mnc,
                                                  const TemporalNetwork& net) {
  if (mnc.size() != net.num_nodes()) throw InputError("MNC vector does not match the network");
  CommunityCentrality out;
  double total = 0.0;
  for (CommunityId c = 0; c < net.num_communities(); ++c) {
    const auto& members = net.community_members(c);
    if (members.empty()) {
      throw InputError(fmt::format("community {} is empty", net.community_name(c)));
    }
    double sum = 0.0;
    for (NodeId v : members) sum += mnc[v];
    out.raw.push_back(sum / static_cast<double>(members.size()));
    total += out.raw.back();
  }
  for (double x : out.raw) {
    out.share.push_back(total > 0.0 ? x / total : 1.0 / static_cast<double>(out.raw.size()));
  }
  return out;
}

CommunityCentrality marginal_community_centrality(const ScoreTable& scores,
                                                  const TemporalNetwork& net) {
  return marginal_community_centrality(scores.mnc, net);
}

CommunityTimeTable community_time(const ScoreTable& scores, const TemporalNetwork& net) {
  const auto communities = static_cast<Eigen::Index>(net.num_communities());
  CommunityTimeTable table;
  table.method = scores.method;
  table.cells = Eigen::MatrixXd::Zero(communities, scores.num_slices());
  for (CommunityId c = 0; c < net.num_communities(); ++c) {
    const auto& members = net.community_members(c);
    if (members.empty()) {
      throw InputError(fmt::format("community {} is empty", net.community_name(c)));
    }
    for (NodeId v : members) table.cells.row(c) += scores.joint.row(v);
    table.cells.row(c) /= static_cast<double>(members.size());
  }
  const double total = table.cells.sum();
  if (total > 0.0) table.cells /= total;
  for (Eigen::Index t = 0; t < table.cells.cols(); ++t) table.mlc.push_back(table.cells.col(t).sum());
  table.mcc = marginal_community_centrality(scores.mnc, net);
  return table;
}

Band1Membership band1_membership(const BandAssignment& assign, const TemporalNetwork& net) {
  Band1Membership out;
  out.counts = Eigen::MatrixXi::Zero(static_cast<Eigen::Index>(net.num_communities()),
                                     assign.num_slices());
  for (int t = 0; t < assign.num_slices(); ++t) {
    const auto& slice = assign.bands[static_cast<std::size_t>(t)];
    for (NodeId v = 0; v < slice.size(); ++v) {
      if (slice[v] == BandId::One) ++out.counts(net.community(v), t);
    }
    out.empty_band.push_back(out.counts.col(t).sum() == 0);
  }
  return out;
}

void write_community_time(const CommunityTimeTable& table, const TemporalNetwork& net,
                          const std::filesystem::path& csv) {
  std::ofstream out(csv);
  if (!out) throw InputError(fmt::format("cannot write {}", csv.string()));
  out << "community";
  for (Eigen::Index t = 1; t <= table.cells.cols(); ++t) out << ",t" << t;
  out << ",mcc,mcc_share\n";
  for (CommunityId c = 0; c < net.num_communities(); ++c) {
    out << net.community_name(c);
    for (Eigen::Index t = 0; t < table.cells.cols(); ++t) out << fmt::format(",{:.17g}", table.cells(c, t));
    out << fmt::format(",{:.17g},{:.17g}\n", table.mcc.raw[c], table.mcc.share[c]);
  }
  out << "mlc";
  for (double x : table.mlc) out << fmt::format(",{:.17g}", x);
  out << ",,\n";
}

void write_band1_membership(const Band1Membership& m, const TemporalNetwork& net,
                            const std::filesystem::path& csv) {
  std::ofstream out(csv);
  if (!out) throw InputError(fmt::format("cannot write {}", csv.string()));
  out << "community";
  for (Eigen::Index t = 1; t <= m.counts.cols(); ++t) out << ",t" << t;
  out << '\n';
  for (CommunityId c = 0; c < net.num_communities(); ++c) {
    out << net.community_name(c);
    for (Eigen::Index t = 0; t < m.counts.cols(); ++t) out << ',' << m.counts(c, t);
    out << '\n';
  }
  out << "empty_band1";
  for (bool e : m.empty_band) out << ',' << (e ? 1 : 0);
  out << '\n';
}

}  // namespace tempinf
