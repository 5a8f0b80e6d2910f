#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tempinf/bands.hpp"
#include "tempinf/cascade.hpp"
#include "tempinf/centrality.hpp"
#include "tempinf/generate.hpp"
#include "tempinf/network.hpp"
#include "tempinf/score_table.hpp"

namespace tempinf {

/// Everything that influences a report run. Serialised verbatim into the
/// manifest so a run can be replayed from it.
struct ReportConfig {
  std::optional<std::string> preset;
  std::optional<std::filesystem::path> spec_file;
  std::optional<std::filesystem::path> edges;
  std::optional<std::filesystem::path> meta;
  bool randomize = false;
  double rho = 0.1;
  long runs = 1000;
  double epsilon = 1.0;
  std::uint64_t seed = 42;
  CascadeVariant variant = CascadeVariant::Persistent;
  std::filesystem::path out = "report";

  void validate() const;
};

std::string to_json(const ReportConfig& cfg);
ReportConfig report_config_from_json(const std::string& text);

/// In-memory results of a full run.
struct ReportBundle {
  std::map<Method, ScoreTable> scores;
  std::map<Method, BandAssignment> bands;
  std::map<Method, std::vector<FlowMatrix>> flows;
  /// accuracy_vs_truth[m] present only when the network carries true bands.
  std::map<Method, AccuracyReport> accuracy_vs_truth;
  /// agreement[{a, b}] = method_agreement(bands[a], bands[b]).
  std::map<std::pair<Method, Method>, AccuracyReport> agreement;
  std::vector<double> katz_aggregate;
  SubcriticalityReport subcriticality;
};

/// Loads or generates the network named by `cfg`.
TemporalNetwork resolve_network(const ReportConfig& cfg);

/// Runs all six methods, bands, flows and accuracy tables. Independent
/// methods run concurrently when more than one worker is available.
ReportBundle run_analysis(const TemporalNetwork& net, const ReportConfig& cfg);

/// resolve_network + run_analysis + writes every artifact and the manifest
/// into cfg.out.
ReportBundle run_report(const ReportConfig& cfg);

void write_accuracy_table(const std::map<Method, AccuracyReport>& acc, int slices,
                          const std::filesystem::path& csv);

}  // namespace tempinf
