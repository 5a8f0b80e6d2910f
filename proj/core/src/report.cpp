#include "tempinf/report.hpp"

#include <fstream>
#include <mutex>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "tempinf/aggregate.hpp"
#include "tempinf/errors.hpp"
#include "tempinf/parallel.hpp"

namespace tempinf {

using nlohmann::json;

namespace {

std::string_view variant_name(CascadeVariant v) {
  return v == CascadeVariant::Persistent ? "persistent" : "reinfection";
}

CascadeVariant parse_variant(const std::string& s) {
  if (s == "persistent") return CascadeVariant::Persistent;
  if (s == "reinfection") return CascadeVariant::Reinfection;
  throw ConfigError(fmt::format("unknown cascade variant '{}'", s));
}

void write_text(const std::filesystem::path& p, const std::string& text) {
  std::ofstream out(p);
  if (!out) throw InputError(fmt::format("cannot write {}", p.string()));
  out << text;
}

}  // namespace

void ReportConfig::validate() const {
  const int sources = (preset ? 1 : 0) + (spec_file ? 1 : 0) + (edges || meta ? 1 : 0);
  if (sources != 1) throw ConfigError("give exactly one of --preset, --spec or --in/--meta");
  if ((edges.has_value()) != (meta.has_value())) throw ConfigError("--in and --meta go together");
  if (!(rho > 0.0 && rho <= 1.0)) throw ConfigError(fmt::format("rho must lie in (0, 1], got {}", rho));
  if (runs < 1) throw ConfigError("runs must be at least 1");
  if (!(epsilon > 0.0)) throw ConfigError("epsilon must be positive");
}

std::string to_json(const ReportConfig& cfg) {
  json j;
  j["preset"] = cfg.preset ? json(*cfg.preset) : json(nullptr);
  j["spec"] = cfg.spec_file ? json(cfg.spec_file->string()) : json(nullptr);
  j["in"] = cfg.edges ? json(cfg.edges->string()) : json(nullptr);
  j["meta"] = cfg.meta ? json(cfg.meta->string()) : json(nullptr);
  j["randomize"] = cfg.randomize;
  j["rho"] = cfg.rho;
  j["runs"] = cfg.runs;
  j["epsilon"] = cfg.epsilon;
  j["seed"] = cfg.seed;
  j["variant"] = variant_name(cfg.variant);
  j["out"] = cfg.out.string();
  return j.dump(2);
}

ReportConfig report_config_from_json(const std::string& text) {
  ReportConfig cfg;
  try {
    const json j = json::parse(text);
    const json& c = j.contains("config") ? j.at("config") : j;
    if (!c.at("preset").is_null()) cfg.preset = c.at("preset").get<std::string>();
    if (!c.at("spec").is_null()) cfg.spec_file = c.at("spec").get<std::string>();
    if (!c.at("in").is_null()) cfg.edges = c.at("in").get<std::string>();
    if (!c.at("meta").is_null()) cfg.meta = c.at("meta").get<std::string>();
    cfg.randomize = c.at("randomize").get<bool>();
    cfg.rho = c.at("rho").get<double>();
    cfg.runs = c.at("runs").get<long>();
    cfg.epsilon = c.at("epsilon").get<double>();
    cfg.seed = c.at("seed").get<std::uint64_t>();
    cfg.variant = parse_variant(c.at("variant").get<std::string>());
    cfg.out = c.at("out").get<std::string>();
  } catch (const json::exception& e) {
    throw ConfigError(fmt::format("bad manifest: {}", e.what()));
  }
  return cfg;
}

TemporalNetwork resolve_network(const ReportConfig& cfg) {
  cfg.validate();
  std::optional<TemporalNetwork> net;
  if (cfg.preset || cfg.spec_file) {
    GeneratorSpec spec = cfg.preset ? preset_spec(*cfg.preset) : load_generator_spec(*cfg.spec_file);
    spec.rng_seed = cfg.seed;
    net.emplace(bandnet(spec));
  } else {
    net.emplace(load_temporal_network(*cfg.edges, *cfg.meta));
  }
  if (cfg.randomize) return config_randomize(*net, cfg.seed);
  return std::move(*net);
}

ReportBundle run_analysis(const TemporalNetwork& net, const ReportConfig& cfg) {
  cfg.validate();
  CentralityConfig ccfg;
  ccfg.epsilon = cfg.epsilon;
  CascadeConfig icfg;
  icfg.rho = cfg.rho;
  icfg.runs = cfg.runs;
  icfg.rng_seed = cfg.seed;
  icfg.variant = cfg.variant;

  ReportBundle bundle;
  std::mutex guard;
  parallel_for(kAllMethods.size(), [&](std::size_t i) {
    const Method m = kAllMethods[i];
    std::optional<ScoreTable> table;
    std::vector<double> katz_q;
    switch (m) {
      case Method::TICM: table = ticm_scores(net, icfg); break;
      case Method::Degree: table = temporal_degree(net); break;
      case Method::Closeness: table = temporal_closeness(net); break;
      case Method::Eigenvector: table = temporal_eigenvector(net, ccfg); break;
      case Method::PageRank: table = temporal_pagerank(net, ccfg); break;
      case Method::Katz: {
        auto katz = temporal_katz(net, ccfg);
        katz_q = std::move(katz.aggregate);
        table = std::move(katz.table);
        break;
      }
    }
    BandAssignment bands = assign_bands(*table);
    auto flows = band_flow(bands);
    std::lock_guard lock(guard);
    if (m == Method::Katz) bundle.katz_aggregate = std::move(katz_q);
    bundle.scores.emplace(m, std::move(*table));
    bundle.bands.emplace(m, std::move(bands));
    bundle.flows.emplace(m, std::move(flows));
  });

  if (net.has_true_bands()) {
    const BandAssignment truth = truth_assignment(net);
    for (Method m : kAllMethods) bundle.accuracy_vs_truth.emplace(m, balanced_accuracy(bundle.bands.at(m), truth));
  }
  for (Method a : kAllMethods) {
    for (Method b : kAllMethods) {
      bundle.agreement.emplace(std::pair{a, b}, method_agreement(bundle.bands.at(a), bundle.bands.at(b)));
    }
  }
  bundle.subcriticality = subcriticality_check(net, cfg.rho, bundle.scores.at(Method::TICM));
  return bundle;
}

void write_accuracy_table(const std::map<Method, AccuracyReport>& acc, int slices,
                          const std::filesystem::path& csv) {
  std::ofstream out(csv);
  if (!out) throw InputError(fmt::format("cannot write {}", csv.string()));
  out << "method";
  for (int t = 1; t <= slices; ++t) out << ",t" << t;
  out << ",overall\n";
  for (const auto& [m, report] : acc) {
    out << method_name(m);
    for (double x : report.per_slice) out << fmt::format(",{:.6f}", x);
    out << fmt::format(",{:.6f}\n", report.overall);
  }
}

ReportBundle run_report(const ReportConfig& cfg) {
  cfg.validate();
  const TemporalNetwork net = resolve_network(cfg);
  std::filesystem::create_directories(cfg.out);
  const auto& dir = cfg.out;

  std::vector<std::string> files;
  auto file = [&](std::string name) {
    files.push_back(name);
    return dir / name;
  };

  // Manifest first, so an interrupted run still records how it was started.
  json manifest;
  manifest["tool"] = "tempinf";
  manifest["config"] = json::parse(to_json(cfg));
  manifest["network"] = {{"nodes", net.num_nodes()},
                         {"slices", net.num_slices()},
                         {"communities", net.num_communities()},
                         {"edges", net.total_edges()},
                         {"true_bands", net.has_true_bands()}};
  manifest["conventions"] = {
      {"orientation", "row = source, column = destination"},
      {"community_time", "per-capita community mean, table scaled to sum 1"},
      {"pagerank_p", 0.85},
      {"katz_alpha", "1 / max_t zeta(A_t) - 0.01"},
      {"power_iteration", {{"tol", 1e-10}, {"max_iter", 100000}}},
      {"bands", "complete linkage, elbow on second difference, k <= 10"}};
  write_text(dir / "manifest.json", manifest.dump(2) + "\n");

  const ReportBundle bundle = run_analysis(net, cfg);

  save_temporal_network(net, file("network_edges.tsv"), file("network_meta.csv"));
  for (Method m : kAllMethods) {
    const std::string name(method_name(m));
    const ScoreTable& scores = bundle.scores.at(m);
    write_score_table(scores, net, file("scores_" + name + ".csv"),
                      file("scores_" + name + "_summary.csv"));
    write_band_assignment(bundle.bands.at(m), net, file("bands_" + name + ".csv"));
    write_band_flow(bundle.flows.at(m), file("flow_" + name + ".csv"));
    write_community_time(community_time(scores, net), net, file("community_time_" + name + ".csv"));
    write_band1_membership(band1_membership(bundle.bands.at(m), net), net,
                           file("band1_" + name + ".csv"));
  }
  {
    std::ofstream out(file("katz_aggregate.csv"));
    out << "node,community,q\n";
    for (NodeId v = 0; v < net.num_nodes(); ++v) {
      out << net.node_name(v) << ',' << net.community_name(net.community(v))
          << fmt::format(",{:.17g}\n", bundle.katz_aggregate[v]);
    }
  }
  if (!bundle.accuracy_vs_truth.empty()) {
    write_accuracy_table(bundle.accuracy_vs_truth, net.num_slices(), file("accuracy_truth.csv"));
  }
  {
    std::ofstream out(file("agreement.csv"));
    out << "method";
    for (Method b : kAllMethods) out << ',' << method_name(b);
    out << '\n';
    for (Method a : kAllMethods) {
      out << method_name(a);
      for (Method b : kAllMethods) out << fmt::format(",{:.6f}", bundle.agreement.at({a, b}).overall);
      out << '\n';
    }
  }
  {
    const auto& s = bundle.subcriticality;
    json j = {{"rho_used", s.rho},
              {"spectral_proxy", s.spectral_proxy},
              {"mean_cascade", s.mean_cascade},
              {"fraction_of_full_graph_reached", s.fraction_reached},
              {"supercritical_suspect", s.supercritical_suspect}};
    write_text(file("subcriticality.json"), j.dump(2) + "\n");
  }

  manifest["files"] = files;
  write_text(dir / "manifest.json", manifest.dump(2) + "\n");
  return bundle;
}

}  // namespace tempinf
