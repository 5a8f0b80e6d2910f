// tempinf: command line front end for the temporal influence toolkit.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "tempinf/aggregate.hpp"
#include "tempinf/bands.hpp"
#include "tempinf/cascade.hpp"
#include "tempinf/centrality.hpp"
#include "tempinf/errors.hpp"
#include "tempinf/generate.hpp"
#include "tempinf/report.hpp"
#include "tempinf/score_table.hpp"
#include "tempinf/supra.hpp"

namespace fs = std::filesystem;
using namespace tempinf;

namespace {

enum ExitCode { kOk = 0, kFailure = 1, kInput = 2, kNumerical = 3, kConfig = 4 };

// Options naming where the network comes from; shared by most subcommands.
struct Source {
  std::string preset;
  std::string spec;
  std::string in;
  std::string meta;
  std::uint64_t seed = 42;

  void add_to(CLI::App* cmd, bool allow_generate = true) {
    if (allow_generate) {
      cmd->add_option("--preset", preset, "Shipped generator preset")
          ->check(CLI::IsMember({"bandnet1", "bandnet2", "bandnet3"}));
      cmd->add_option("--spec", spec, "Generator spec (INI)");
    }
    cmd->add_option("--in", in, "Edge list (slice src dst)");
    cmd->add_option("--meta", meta, "Node metadata CSV");
    cmd->add_option("--seed", seed, "RNG seed");
  }

  void fill(ReportConfig& cfg) const {
    if (!preset.empty()) cfg.preset = preset;
    if (!spec.empty()) cfg.spec_file = spec;
    if (!in.empty()) cfg.edges = in;
    if (!meta.empty()) cfg.meta = meta;
    cfg.seed = seed;
  }

  TemporalNetwork load() const {
    ReportConfig cfg;
    fill(cfg);
    return resolve_network(cfg);
  }
};

CascadeVariant variant_from(const std::string& s) {
  return s == "reinfection" ? CascadeVariant::Reinfection : CascadeVariant::Persistent;
}

fs::path prepare_out(const std::string& out) {
  fs::create_directories(out);
  return out;
}

void write_subcriticality(const SubcriticalityReport& s, const fs::path& file) {
  nlohmann::json j = {{"rho_used", s.rho},
                      {"spectral_proxy", s.spectral_proxy},
                      {"mean_cascade", s.mean_cascade},
                      {"fraction_of_full_graph_reached", s.fraction_reached},
                      {"supercritical_suspect", s.supercritical_suspect}};
  std::ofstream(file) << j.dump(2) << '\n';
}

void print_accuracy(const AccuracyReport& acc) {
  for (std::size_t t = 0; t < acc.per_slice.size(); ++t) {
    fmt::print("t{}\t{:.4f}\n", t + 1, acc.per_slice[t]);
  }
  fmt::print("overall\t{:.4f}\n", acc.overall);
  for (const auto& [t, b] : acc.empty_reference_bands) {
    fmt::print(stderr, "warning: reference band {} empty in slice {}\n", band_index(b) + 1, t);
  }
}

int run(int argc, char** argv) {
  CLI::App app{"Influence scores and bands on temporal networks"};
  app.require_subcommand(1);

  // generate
  Source gen_src;
  std::string gen_out = "network";
  auto* gen = app.add_subcommand("generate", "Generate a synthetic banded network");
  gen_src.add_to(gen);
  gen->add_option("--out", gen_out, "Output directory");

  // randomize
  Source rnd_src;
  std::string rnd_out = "randomized";
  auto* rnd = app.add_subcommand("randomize", "Stub-preserving configuration-model null network");
  rnd_src.add_to(rnd);
  rnd->add_option("--out", rnd_out, "Output directory");

  // centrality
  Source cen_src;
  std::string cen_out = "centrality";
  std::string cen_method = "all";
  std::string cen_dump;
  CentralityConfig cen_cfg;
  auto* cen = app.add_subcommand("centrality", "Deterministic temporal centralities");
  cen_src.add_to(cen);
  cen->add_option("--method", cen_method, "degree, closeness, eigenvector, pagerank, katz or all")
      ->check(CLI::IsMember({"all", "degree", "closeness", "eigenvector", "pagerank", "katz"}));
  cen->add_option("--epsilon", cen_cfg.epsilon, "Slice coupling weight");
  cen->add_option("--katz-alpha", cen_cfg.katz_alpha, "Override the Katz attenuation");
  cen->add_option("--dump-supra", cen_dump, "Write the supra-matrix as gzip triplets");
  cen->add_option("--out", cen_out, "Output directory");

  // icm
  Source icm_src;
  std::string icm_out = "icm";
  std::string icm_variant = "persistent";
  std::string icm_dump;
  CascadeConfig icm_cfg;
  auto* icm = app.add_subcommand("icm", "Temporal independent cascade scores");
  icm_src.add_to(icm);
  icm->add_option("--rho", icm_cfg.rho, "Transmission probability");
  icm->add_option("--runs", icm_cfg.runs, "Monte-Carlo runs per seed");
  icm->add_option("--variant", icm_variant)->check(CLI::IsMember({"persistent", "reinfection"}));
  icm->add_flag("--first-slice-only", icm_cfg.first_slice_only, "Seed only in the first slice");
  icm->add_option("--dump-supra", icm_dump, "Write the cascade supra-matrix as gzip triplets");
  icm->add_option("--out", icm_out, "Output directory");

  // bands
  Source band_src;
  std::string band_scores;
  std::string band_method;
  std::string band_out = "bands";
  auto* band = app.add_subcommand("bands", "Cluster a score table into three influence bands");
  band_src.add_to(band);
  band->add_option("--scores", band_scores, "Score table CSV")->required();
  band->add_option("--method", band_method, "Method that produced the scores")->required();
  band->add_option("--out", band_out, "Output directory");

  // compare
  Source cmp_src;
  std::string cmp_bands;
  std::string cmp_reference;
  auto* cmp = app.add_subcommand("compare", "Balanced accuracy of a band assignment");
  cmp_src.add_to(cmp);
  cmp->add_option("--bands", cmp_bands, "Band assignment CSV to score")->required();
  cmp->add_option("--reference", cmp_reference,
                  "Reference band assignment CSV; the network's true bands when omitted");

  // report
  ReportConfig rep_cfg;
  Source rep_src;
  std::string rep_variant = "persistent";
  std::string rep_manifest;
  std::string rep_out = "report";
  auto* rep = app.add_subcommand("report", "Full pipeline into one artifact directory");
  rep_src.add_to(rep);
  rep->add_flag("--randomize", rep_cfg.randomize, "Analyse the configuration-model null network");
  rep->add_option("--rho", rep_cfg.rho, "T-ICM transmission probability");
  rep->add_option("--runs", rep_cfg.runs, "T-ICM runs per seed");
  rep->add_option("--epsilon", rep_cfg.epsilon, "Slice coupling weight");
  rep->add_option("--variant", rep_variant)->check(CLI::IsMember({"persistent", "reinfection"}));
  rep->add_option("--manifest", rep_manifest, "Replay the configuration recorded in a manifest");
  rep->add_option("--out", rep_out, "Output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfig;
  }

  if (*gen) {
    if (!gen_src.in.empty() || !gen_src.meta.empty()) throw ConfigError("generate takes --preset or --spec");
    const TemporalNetwork net = gen_src.load();
    const fs::path dir = prepare_out(gen_out);
    save_temporal_network(net, dir / "edges.tsv", dir / "meta.csv");
    fmt::print("{} nodes, {} slices, {} edges -> {}\n", net.num_nodes(), net.num_slices(),
               net.total_edges(), dir.string());
  } else if (*rnd) {
    const TemporalNetwork net = config_randomize(rnd_src.load(), rnd_src.seed);
    const fs::path dir = prepare_out(rnd_out);
    save_temporal_network(net, dir / "edges.tsv", dir / "meta.csv");
    fmt::print("{} edges -> {}\n", net.total_edges(), dir.string());
  } else if (*cen) {
    cen_cfg.validate();
    if (!cen_dump.empty() && cen_method == "all") {
      throw ConfigError("--dump-supra needs a single --method");
    }
    const TemporalNetwork net = cen_src.load();
    const fs::path dir = prepare_out(cen_out);
    for (Method m : kAllMethods) {
      if (m == Method::TICM) continue;
      const std::string name(method_name(m));
      if (cen_method != "all" && cen_method != name) continue;
      std::optional<ScoreTable> table;
      switch (m) {
        case Method::Degree: table = temporal_degree(net); break;
        case Method::Closeness: table = temporal_closeness(net); break;
        case Method::Eigenvector: table = temporal_eigenvector(net, cen_cfg); break;
        case Method::PageRank: table = temporal_pagerank(net, cen_cfg); break;
        case Method::Katz: {
          auto katz = temporal_katz(net, cen_cfg);
          fmt::print("katz: alpha {:.6g}, spectral radius {:.6g}\n", katz.alpha, katz.spectral_radius);
          table = std::move(katz.table);
          break;
        }
        case Method::TICM: break;
      }
      write_score_table(*table, net, dir / ("scores_" + name + ".csv"),
                        dir / ("scores_" + name + "_summary.csv"));
      if (!cen_dump.empty()) {
        std::vector<SliceOperator> per_slice;
        for (int t = 1; t <= net.num_slices(); ++t) {
          per_slice.push_back(m == Method::PageRank
                                  ? pagerank_slice_matrix(net, t, cen_cfg.pagerank_p)
                                  : SliceOperator{slice_adjacency(net, t), 0.0});
        }
        if (m == Method::Katz) {
          dump_supra_matrix(build_kim_anderson(net), cen_dump);
        } else if (m == Method::Eigenvector || m == Method::PageRank) {
          dump_supra_matrix(build_taylor(net, per_slice, cen_cfg.epsilon), cen_dump);
        } else {
          throw ConfigError(fmt::format("{} has no supra-matrix", name));
        }
      }
      fmt::print("{} -> {}\n", name, (dir / ("scores_" + name + ".csv")).string());
    }
  } else if (*icm) {
    icm_cfg.rng_seed = icm_src.seed;
    icm_cfg.variant = variant_from(icm_variant);
    icm_cfg.validate();
    const TemporalNetwork net = icm_src.load();
    const ScoreTable table = ticm_scores(net, icm_cfg);
    const fs::path dir = prepare_out(icm_out);
    write_score_table(table, net, dir / "scores_ticm.csv", dir / "scores_ticm_summary.csv");
    const auto sub = subcriticality_check(net, icm_cfg.rho, table);
    write_subcriticality(sub, dir / "subcriticality.json");
    if (!icm_dump.empty()) dump_supra_matrix(build_cascade(net, icm_cfg.rho), icm_dump);
    fmt::print("mean cascade {:.4f} ({:.2f}% of N){}\n", sub.mean_cascade, 100.0 * sub.fraction_reached,
               sub.supercritical_suspect ? ", SUPERCRITICAL SUSPECT" : "");
  } else if (*band) {
    const TemporalNetwork net = band_src.load();
    const auto parsed = parse_method(band_method);
    if (!parsed) throw ConfigError(fmt::format("unknown method '{}'", band_method));
    const Method m = *parsed;
    const ScoreTable table = read_score_table(m, net, band_scores);
    const BandAssignment assign = assign_bands(table);
    const fs::path dir = prepare_out(band_out);
    const std::string name(method_name(m));
    write_band_assignment(assign, net, dir / ("bands_" + name + ".csv"));
    write_band_flow(band_flow(assign), dir / ("flow_" + name + ".csv"));
    write_community_time(community_time(table, net), net, dir / ("community_time_" + name + ".csv"));
    write_band1_membership(band1_membership(assign, net), net, dir / ("band1_" + name + ".csv"));
    for (int t = 1; t <= assign.num_slices(); ++t) {
      const auto pop = assign.populations(t);
      fmt::print("t{}: {} / {} / {}{}\n", t, pop[0], pop[1], pop[2],
                 assign.degenerate[t - 1] ? " (degenerate)" : "");
    }
  } else if (*cmp) {
    const TemporalNetwork net = cmp_src.load();
    const BandAssignment pred = read_band_assignment(net, cmp_bands);
    if (cmp_reference.empty()) {
      if (!net.has_true_bands()) throw InputError("network has no true bands; pass --reference");
      print_accuracy(balanced_accuracy(pred, truth_assignment(net)));
    } else {
      print_accuracy(method_agreement(pred, read_band_assignment(net, cmp_reference)));
    }
  } else if (*rep) {
    ReportConfig cfg;
    if (!rep_manifest.empty()) {
      std::ifstream in(rep_manifest);
      if (!in) throw InputError(fmt::format("cannot read {}", rep_manifest));
      std::stringstream text;
      text << in.rdbuf();
      cfg = report_config_from_json(text.str());
      if (rep->count("--out") > 0) cfg.out = rep_out;
    } else {
      cfg = rep_cfg;
      rep_src.fill(cfg);
      cfg.variant = variant_from(rep_variant);
      cfg.out = rep_out;
    }
    const ReportBundle bundle = run_report(cfg);
    fmt::print("method\toverall BA vs truth\n");
    for (const auto& [m, acc] : bundle.accuracy_vs_truth) {
      fmt::print("{}\t{:.2f}\n", method_name(m), acc.overall);
    }
    if (bundle.subcriticality.supercritical_suspect) {
      fmt::print(stderr, "warning: mean cascade reaches {:.1f}% of the network; rho may be supercritical\n",
                 100.0 * bundle.subcriticality.fraction_reached);
    }
    fmt::print("report -> {}\n", cfg.out.string());
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const InputError& e) {
    fmt::print(stderr, "input error: {}\n", e.what());
    return kInput;
  } catch (const NumericalError& e) {
    fmt::print(stderr, "numerical error: {} (residual {:.3g})\n", e.what(), e.residual());
    return kNumerical;
  } catch (const ConfigError& e) {
    fmt::print(stderr, "config error: {}\n", e.what());
    return kConfig;
  } catch (const fs::filesystem_error& e) {
    fmt::print(stderr, "input error: {}\n", e.what());
    return kInput;
  } catch (const std::exception& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return kFailure;
  }
}
