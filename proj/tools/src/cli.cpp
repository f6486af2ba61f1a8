#include "trimedge_cli/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "trimedge/distributions.hpp"
#include "trimedge/edgeworth.hpp"
#include "trimedge/errors.hpp"
#include "trimedge/population.hpp"
#include "trimedge/ustat.hpp"
#include "trimedge_cli/sample_io.hpp"

namespace trimedge::cli {
namespace fs = std::filesystem;

namespace {

BetaHatVariant parse_variant(std::string_view name) {
  if (name == "matches_population") return BetaHatVariant::kMatchesPopulation;
  if (name == "as_printed") return BetaHatVariant::kAsPrinted;
  throw InvalidArgument("unknown beta-hat variant '" + std::string(name) + "'");
}

std::vector<StatisticKind> parse_kinds(std::string_view name) {
  if (name == "both") return {StatisticKind::kNormalized, StatisticKind::kStudentized};
  return {parse_kind(name)};
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
}

void prepare_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create output directory '" + dir.string() + "'");
}

template <class T>
T get_field(const Json& doc, const char* key) {
  try {
    return doc.at(key).get<T>();
  } catch (const Json::exception& e) {
    throw InvalidArgument(fmt::format("config field '{}': {}", key, e.what()));
  }
}

std::string size_range(const std::vector<std::size_t>& n_list) {
  if (n_list.empty()) return "";
  const auto [lo, hi] = std::minmax_element(n_list.begin(), n_list.end());
  return fmt::format("n={}..{}", *lo, *hi);
}

// Flags shared by the randomized and model-based subcommands.
struct ModelFlags {
  std::string family;
  std::vector<double> params;
  double alpha = 0.1;
  double beta = 0.9;
  std::vector<std::size_t> n_list;
  std::size_t reps = 0;
  std::uint64_t seed = 0;
  unsigned workers = 0;
  std::string out_dir;

  CLI::Option* family_opt = nullptr;
  CLI::Option* params_opt = nullptr;
  CLI::Option* alpha_opt = nullptr;
  CLI::Option* beta_opt = nullptr;
  CLI::Option* n_list_opt = nullptr;
  CLI::Option* reps_opt = nullptr;
  CLI::Option* seed_opt = nullptr;
  CLI::Option* workers_opt = nullptr;

  void add_model(CLI::App* app) {
    family_opt = app->add_option("--family", family, "distribution family")
                     ->check(CLI::IsMember(catalog_families()));
    params_opt = app->add_option("--params", params, "family parameters, comma separated")
                     ->delimiter(',');
    alpha_opt = app->add_option("--alpha", alpha, "lower trimming proportion");
    beta_opt = app->add_option("--beta", beta, "upper trimming proportion");
  }
  void add_replication(CLI::App* app) {
    n_list_opt = app->add_option("--n-list", n_list, "sample sizes, comma separated")
                     ->delimiter(',');
    reps_opt = app->add_option("--reps", reps, "replicates per sample size");
    seed_opt = app->add_option("--seed", seed, "base seed (required)");
    workers_opt = app->add_option("--workers", workers, "worker threads; 0 = all cores");
    app->add_option("--out-dir", out_dir, "directory for CSV and JSON output")->required();
  }

  DistributionModel model() const {
    if (family.empty()) throw InvalidArgument("--family is required");
    return make_model(family, params.empty() ? default_params(family) : params);
  }
  void require_seed() const {
    if (seed_opt->count() == 0) throw InvalidArgument("--seed is required for randomized commands");
  }
};

int cmd_analyze(const std::string& file, double alpha, double beta, std::optional<double> level,
                const std::string& variant, const std::string& out_dir, std::ostream& out) {
  const auto values = read_sample_file(file);
  const auto report = analyze_sample(values, file, alpha, beta, level, parse_variant(variant));
  const std::string text = report.dump(2) + "\n";
  out << text;
  if (!out_dir.empty()) {
    prepare_dir(out_dir);
    write_text(fs::path(out_dir) / "analysis.json", text);
  }
  return kExitOk;
}

int cmd_population(const ModelFlags& f, std::optional<std::size_t> n, std::ostream& out) {
  const auto model = f.model();
  const auto levels = TrimLevels::make(f.alpha, f.beta);
  const auto pop = compute_functionals(model, levels);
  Json doc{{"family", model.name()},
           {"params", f.params.empty() ? default_params(f.family) : f.params},
           {"functionals", to_json(pop)}};
  if (n) {
    const TrimSpec spec(levels, *n);
    doc["spec"] = to_json(spec);
    doc["beta_n"] = bias_term(pop, spec);
    doc["expansions"] = {to_json(population_expansion(pop, spec, StatisticKind::kNormalized)),
                         to_json(population_expansion(pop, spec, StatisticKind::kStudentized))};
  }
  out << doc.dump(2) << "\n";
  return kExitOk;
}

struct SimulateFlags {
  std::string config_path;
  std::string kind;
  std::vector<std::string> targets;
  std::size_t expansion_reps = 200;
  std::string variant = "matches_population";
  bool dump_sample = false;

  CLI::Option* kind_opt = nullptr;
  CLI::Option* targets_opt = nullptr;
  CLI::Option* expansion_reps_opt = nullptr;
  CLI::Option* variant_opt = nullptr;
};

int cmd_simulate(const ModelFlags& f, const SimulateFlags& s, std::ostream& out) {
  SimulationConfig config;
  bool seed_given = false;
  if (!s.config_path.empty()) {
    std::ifstream in(s.config_path, std::ios::binary);
    if (!in) throw InvalidArgument("cannot open config file '" + s.config_path + "'");
    Json doc;
    try {
      doc = Json::parse(in);
    } catch (const Json::exception& e) {
      throw InvalidArgument(fmt::format("config file is not valid JSON: {}", e.what()));
    }
    config = simulation_config_from_json(doc);
    seed_given = doc.contains("seed");
  }
  if (f.family_opt->count()) config.model.family = f.family;
  if (f.params_opt->count()) config.model.params = f.params;
  if (config.model.family.empty()) throw InvalidArgument("--family (or config 'family') is required");
  if (config.model.params.empty()) config.model.params = default_params(config.model.family);
  if (f.alpha_opt->count()) config.alpha = f.alpha;
  if (f.beta_opt->count()) config.beta = f.beta;
  if (f.n_list_opt->count()) config.n_list = f.n_list;
  if (f.reps_opt->count()) config.reps = f.reps;
  if (f.seed_opt->count()) {
    config.base_seed = f.seed;
    seed_given = true;
  }
  if (!seed_given) throw InvalidArgument("--seed is required for randomized commands");
  if (f.workers_opt->count()) config.workers = f.workers;
  if (s.kind_opt->count()) config.kinds = parse_kinds(s.kind);
  if (s.targets_opt->count()) {
    config.targets.clear();
    for (const auto& t : s.targets) config.targets.push_back(parse_target(t));
  }
  if (s.expansion_reps_opt->count()) config.expansion_reps = s.expansion_reps;
  if (s.variant_opt->count()) config.beta_hat_variant = parse_variant(s.variant);
  if (s.dump_sample) config.dump_sample = true;

  const auto result = run_simulation(config);
  const auto files = write_simulation_outputs(result, f.out_dir);
  for (const auto& r : result.sup_rows) {
    out << fmt::format("n={} {} vs {}: sup={} (se {}) sqrtN*sup={}\n", r.n, kind_name(r.kind),
                       target_name(r.target), format_number(r.sup_distance),
                       format_number(r.mc_standard_error), format_number(r.sqrt_n_scaled));
  }
  for (const auto& r : result.empirical_rows) {
    out << fmt::format("n={} {} vs own empirical expansion: median sup={} p95={}\n", r.n,
                       kind_name(r.kind), format_number(r.median_sup), format_number(r.p95_sup));
  }
  for (const auto& p : files) out << "wrote " << p.string() << "\n";
  out << fmt::format("runtime {:.2f}s\n", result.runtime_seconds);
  return kExitOk;
}

struct DiagnoseDefaults {
  std::vector<std::size_t> n_list;
  std::size_t reps;
};

DiagnoseDefaults diagnose_defaults(std::string_view lemma) {
  if (lemma == "lemma61") return {{100, 1000, 10000, 100000}, 200};
  if (lemma == "lemma62") return {{100, 1000, 10000}, 1000};
  if (lemma == "moments") return {{400}, 100000};
  if (lemma == "bias") return {{100}, 1000000};
  return {{100, 400, 1600, 6400}, 10000};
}

int cmd_diagnose(const ModelFlags& f, const std::string& lemma, std::ostream& out) {
  f.require_seed();
  const auto model = f.model();
  const auto levels = TrimLevels::make(f.alpha, f.beta);
  const auto defaults = diagnose_defaults(lemma);
  const auto n_list = f.n_list_opt->count() ? f.n_list : defaults.n_list;
  const std::size_t reps = f.reps_opt->count() ? f.reps : defaults.reps;

  Json doc{{"diagnostic", lemma},
           {"family", model.name()},
           {"params", f.params.empty() ? default_params(f.family) : f.params},
           {"alpha", f.alpha},
           {"beta", f.beta},
           {"seed", seed_provenance(f.seed)}};
  std::string csv;
  std::string summary;

  if (lemma == "lemma61" || lemma == "lemma62") {
    std::vector<RateStudy> studies;
    if (lemma == "lemma61") {
      studies.push_back(density_rate_study(model, levels, n_list, reps, false, f.seed, f.workers));
      studies.push_back(density_rate_study(model, levels, n_list, reps, true, f.seed, f.workers));
    } else {
      for (int r = 1; r <= 3; ++r) {
        studies.push_back(moment_rate_study(model, levels, n_list, reps, r, f.seed, f.workers));
      }
    }
    Json arr = Json::array();
    for (const auto& st : studies) {
      arr.push_back(to_json(st));
      summary += fmt::format("{}: log-median slope {}\n", st.quantity,
                             format_number(st.log_median_slope));
    }
    doc["studies"] = arr;
    csv = rate_csv(studies);
  } else if (lemma == "moments") {
    const auto pop = compute_functionals(model, levels);
    std::vector<MomentCheckReport> reports;
    Json arr = Json::array();
    for (std::size_t n : n_list) {
      reports.push_back(third_moment_check(model, pop, n, reps, f.seed, f.workers));
      const auto& r = reports.back();
      arr.push_back(to_json(r));
      summary += fmt::format("n={}: var {} (sigma2_W {}), skewness {} (theory {})\n", n,
                             format_number(r.variance), format_number(r.sigma2_W),
                             format_number(r.skewness), format_number(r.skewness_theory));
    }
    doc["reports"] = arr;
    csv = moment_csv(reports);
  } else if (lemma == "bias") {
    std::vector<BiasReport> reports;
    Json arr = Json::array();
    for (std::size_t n : n_list) {
      reports.push_back(bias_study(model, levels, n, reps, f.seed, f.workers));
      const auto& r = reports.back();
      arr.push_back(to_json(r));
      summary += fmt::format("n={}: mc bias {} (se {}), beta_N {}, z {}\n", n,
                             format_number(r.mc_bias), format_number(r.standard_error),
                             format_number(r.beta_n), format_number(r.z_score));
    }
    doc["reports"] = arr;
    csv = bias_csv(reports);
  } else {
    const auto kind = parse_remainder_kind(lemma);
    const auto study = remainder_study(model, levels, n_list, reps, kind, f.seed, f.workers);
    doc["study"] = to_json(study);
    csv = remainder_csv(study);
    summary = fmt::format("{} ({}): log-median slope {}, p99 scaled ratio {}\n", lemma,
                          size_range(n_list), format_number(study.log_median_slope),
                          format_number(study.p99_scaled_ratio));
  }

  prepare_dir(f.out_dir);
  const fs::path csv_path = fs::path(f.out_dir) / fmt::format("diagnose_{}.csv", lemma);
  const fs::path json_path = fs::path(f.out_dir) / fmt::format("diagnose_{}.json", lemma);
  write_text(csv_path, csv);
  write_text(json_path, doc.dump(2) + "\n");
  out << summary << "wrote " << csv_path.string() << "\nwrote " << json_path.string() << "\n";
  return kExitOk;
}

}  // namespace

Json analyze_sample(const std::vector<double>& values, const std::string& source, double alpha,
                    double beta, std::optional<double> level, BetaHatVariant variant) {
  if (values.size() < 4) {
    throw InvalidArgument(fmt::format("need at least 4 values, got {}", values.size()));
  }
  const TrimSpec spec(alpha, beta, values.size());
  const SortedSample sample(values);
  const auto est = compute_plugins(sample, spec, variant);
  if (est.variance_degenerate) {
    throw DegenerateData("Winsorized sample variance is zero; the Studentized statistic is undefined");
  }

  Json warnings = Json::array();
  const auto g = empirical_expansion(est, StatisticKind::kNormalized);
  const auto h = empirical_expansion(est, StatisticKind::kStudentized);
  for (const auto& w : h.warnings) warnings.push_back(w);

  Json spec_json = to_json(spec);
  spec_json["beta_hat_variant"] =
      variant == BetaHatVariant::kAsPrinted ? "as_printed" : "matches_population";

  Json report{{"input", {{"source", source}, {"n", values.size()}}},
              {"spec", spec_json},
              {"estimates", to_json(est)},
              {"expansions",
               {{"normalized", to_json(g.coefficients)},
                {"studentized", to_json(h.coefficients)}}}};

  if (level) {
    const double lv = *level;
    if (!(lv > 0.0 && lv <= 0.998)) {
      throw InvalidArgument("--level must lie in (0, 0.998]");
    }
    const double gamma = 1.0 - lv;
    const auto upper_q = invert_expansion(h.coefficients, 1.0 - gamma / 2.0);
    const auto lower_q = invert_expansion(h.coefficients, gamma / 2.0);
    for (const auto* q : {&upper_q, &lower_q}) {
      if (q->fell_back) warnings.push_back(q->warning);
    }
    const double scale =
        est.s_n() / (spec.beta() - spec.alpha()) / std::sqrt(static_cast<double>(spec.n()));
    report["confidence_interval"] = {{"level", lv},
                                     {"lower", est.t_n - scale * upper_q.x},
                                     {"upper", est.t_n - scale * lower_q.x},
                                     {"quantile_upper", upper_q.x},
                                     {"quantile_lower", lower_q.x},
                                     {"scale", scale}};
  } else {
    report["confidence_interval"] = nullptr;
  }
  report["warnings"] = warnings;
  return report;
}

SimulationConfig simulation_config_from_json(const Json& doc) {
  static const std::vector<std::string> known = {
      "family", "params", "alpha",          "beta",             "n_list",      "reps",
      "seed",   "kind",   "targets",        "expansion_reps",   "dump_sample", "workers",
      "beta_hat_variant"};
  if (!doc.is_object()) throw InvalidArgument("config must be a JSON object");
  for (const auto& [key, value] : doc.items()) {
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      throw InvalidArgument("unknown config field '" + key + "'");
    }
  }
  SimulationConfig c;
  if (doc.contains("family")) c.model.family = get_field<std::string>(doc, "family");
  if (doc.contains("params")) c.model.params = get_field<std::vector<double>>(doc, "params");
  if (doc.contains("alpha")) c.alpha = get_field<double>(doc, "alpha");
  if (doc.contains("beta")) c.beta = get_field<double>(doc, "beta");
  if (doc.contains("n_list")) c.n_list = get_field<std::vector<std::size_t>>(doc, "n_list");
  if (doc.contains("reps")) c.reps = get_field<std::size_t>(doc, "reps");
  if (doc.contains("seed")) c.base_seed = get_field<std::uint64_t>(doc, "seed");
  if (doc.contains("kind")) c.kinds = parse_kinds(get_field<std::string>(doc, "kind"));
  if (doc.contains("targets")) {
    c.targets.clear();
    for (const auto& t : get_field<std::vector<std::string>>(doc, "targets")) {
      c.targets.push_back(parse_target(t));
    }
  }
  if (doc.contains("expansion_reps")) {
    c.expansion_reps = get_field<std::size_t>(doc, "expansion_reps");
  }
  if (doc.contains("dump_sample")) c.dump_sample = get_field<bool>(doc, "dump_sample");
  if (doc.contains("workers")) c.workers = get_field<unsigned>(doc, "workers");
  if (doc.contains("beta_hat_variant")) {
    c.beta_hat_variant = parse_variant(get_field<std::string>(doc, "beta_hat_variant"));
  }
  return c;
}

std::vector<fs::path> write_simulation_outputs(const SimulationResult& result, const fs::path& dir) {
  prepare_dir(dir);
  std::vector<fs::path> files;
  if (!result.sup_rows.empty()) {
    files.push_back(dir / "sup_distance.csv");
    write_text(files.back(), sup_rows_csv(result.sup_rows));
  }
  if (!result.empirical_rows.empty()) {
    files.push_back(dir / "empirical_expansion.csv");
    write_text(files.back(), empirical_rows_csv(result.empirical_rows));
  }
  for (const auto& d : result.dumped) {
    files.push_back(dir / fmt::format("sample_n{}.txt", d.n));
    const std::vector<std::string> header = {
        fmt::format("replicate 0 of n={} drawn from {}", d.n, result.config.model.family),
        fmt::format("seed {}", result.config.base_seed)};
    write_sample_file(files.back(), d.values, header);
  }
  files.push_back(dir / "summary.json");
  write_text(files.back(), simulation_summary(result).dump(2) + "\n");
  return files;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Edgeworth expansions for trimmed means", "trimedge"};
  app.require_subcommand(1);

  // analyze
  auto* analyze = app.add_subcommand("analyze", "plug-in estimates and expansion for a sample file");
  std::string file;
  double a_alpha = 0.1;
  double a_beta = 0.9;
  double level = 0.95;
  std::string a_variant = "matches_population";
  std::string a_out_dir;
  analyze->add_option("file", file, "sample file, one value per line")->required();
  analyze->add_option("--alpha", a_alpha, "lower trimming proportion");
  analyze->add_option("--beta", a_beta, "upper trimming proportion");
  auto* level_opt = analyze->add_option("--level", level, "confidence level for an interval");
  analyze->add_option("--beta-hat-variant", a_variant, "matches_population or as_printed");
  analyze->add_option("--out-dir", a_out_dir, "also write analysis.json here");

  // population
  auto* population = app.add_subcommand("population", "population functionals of a model");
  ModelFlags pop_flags;
  pop_flags.add_model(population);
  std::size_t pop_n = 0;
  auto* pop_n_opt = population->add_option("--n", pop_n, "sample size for beta_N and coefficients");

  // simulate
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo sup-distance study");
  ModelFlags sim_flags;
  sim_flags.add_model(simulate);
  sim_flags.add_replication(simulate);
  SimulateFlags sim;
  simulate->add_option("--config", sim.config_path, "JSON config mirroring the flags");
  sim.kind_opt = simulate->add_option("--kind", sim.kind, "normalized, studentized or both");
  sim.targets_opt = simulate
                        ->add_option("--targets", sim.targets,
                                     "normal,population_expansion,empirical_expansion")
                        ->delimiter(',');
  sim.expansion_reps_opt =
      simulate->add_option("--expansion-reps", sim.expansion_reps,
                           "replicates whose own empirical expansion is scored");
  sim.variant_opt =
      simulate->add_option("--beta-hat-variant", sim.variant, "matches_population or as_printed");
  simulate->add_flag("--dump-sample", sim.dump_sample, "write replicate 0 of each size");

  // diagnose
  auto* diagnose = app.add_subcommand("diagnose", "remainder and consistency diagnostics");
  ModelFlags diag_flags;
  diag_flags.add_model(diagnose);
  diag_flags.add_replication(diagnose);
  std::string lemma;
  diagnose
      ->add_option("--lemma", lemma,
                   "lemma31, corollary31_first, corollary31_second, lemma41, lemma51, lemma61, "
                   "lemma62, moments or bias")
      ->required()
      ->check(CLI::IsMember({"lemma31", "corollary31_first", "corollary31_second", "lemma41",
                             "lemma51", "lemma61", "lemma62", "moments", "bias"}));

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*analyze) {
      std::optional<double> lv;
      if (level_opt->count()) lv = level;
      return cmd_analyze(file, a_alpha, a_beta, lv, a_variant, a_out_dir, out);
    }
    if (*population) {
      std::optional<std::size_t> n;
      if (pop_n_opt->count()) n = pop_n;
      return cmd_population(pop_flags, n, out);
    }
    if (*simulate) return cmd_simulate(sim_flags, sim, out);
    if (*diagnose) return cmd_diagnose(diag_flags, lemma, out);
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DegenerateData& e) {
    err << "degenerate data: " << e.what() << "\n";
    return kExitDegenerate;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitUsage;
}

}  // namespace trimedge::cli
