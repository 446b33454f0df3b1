#include "fsro/cli.hpp"

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <vector>

#include <CLI11.hpp>

#include "fsro/csv.hpp"
#include "fsro/report.hpp"
#include "fsro/simd/kernels.hpp"

namespace fsro::cli {
namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitConfig = 2;

bool all_digits(const std::string& s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

void apply_simd(const std::string& name) {
  if (name == "auto") {
    simd::set_backend(simd::best_backend());
  } else if (name == "scalar") {
    simd::set_backend(simd::Backend::Scalar);
  } else if (name == "avx2") {
    simd::set_backend(simd::Backend::Avx2);
  } else if (name == "neon") {
    simd::set_backend(simd::Backend::Neon);
  } else {
    throw ConfigError("unknown --simd backend '" + name + "'");
  }
}

std::string config_text(const RunConfig& c, bool compare) {
  const auto& e = c.experiment;
  std::ostringstream o;
  auto real = [](double v) { return csv::format_real(v); };
  if (!c.dataset_path.empty()) o << "dataset=\"" << c.dataset_path << "\"\n";
  if (!c.synthetic.empty()) o << "synthetic=\"" << c.synthetic << "\"\n";
  o << "data-seed=" << c.data_seed << '\n';
  if (!c.label_column.empty()) o << "label-column=\"" << c.label_column << "\"\n";
  o << "no-header=" << (c.no_header ? "true" : "false") << '\n'
    << "drop-missing=" << (c.drop_missing ? "true" : "false") << '\n'
    << "algorithm=" << to_string(c.algorithm) << '\n';
  if (compare) {
    o << "baseline=" << to_string(c.baseline) << '\n';
    if (c.baseline_runs) o << "baseline-runs=" << c.baseline_runs << '\n';
  }
  o << "runs=" << c.runs << '\n'
    << "iterations=" << c.iterations << '\n'
    << "pop-size=" << c.population << '\n'
    << "seed=" << c.seed << '\n'
    << "alpha=" << real(e.fitness.alpha) << '\n'
    << "knn-k=" << e.fitness.k_neighbors << '\n'
    << "train-fraction=" << real(e.fitness.train_fraction) << '\n'
    << "max-dis=" << real(e.fsro.max_dis) << '\n'
    << "decision-dis=" << real(e.fsro.decision_dis) << '\n'
    << "w1=" << real(e.fsro.w1) << '\n'
    << "w2=" << real(e.fsro.w2) << '\n'
    << "d1=" << real(e.fsro.d1) << '\n'
    << "d2=" << real(e.fsro.d2) << '\n'
    << "ess-threshold=" << e.fsro.ess_threshold << '\n'
    << "share-floor=" << real(e.fsro.share_floor) << '\n'
    << "crossover-rate=" << real(e.ga.crossover_rate) << '\n'
    << "mutation-rate=" << real(e.ga.mutation_rate) << '\n'
    << "inertia=" << real(e.bpso.inertia_weight) << '\n'
    << "cognitive=" << real(e.bpso.cognitive_factor) << '\n'
    << "social=" << real(e.bpso.social_factor) << '\n'
    << "velocity-clamp=" << real(e.bpso.velocity_clamp) << '\n';
  return o.str();
}

void print_summary(std::ostream& out, std::string_view algorithm, const Dataset& ds,
                   const ExperimentSummary& s) {
  out << "algorithm " << algorithm << " on " << ds.name << " (" << ds.n_features << " features, "
      << ds.n_instances() << " instances, " << ds.n_classes() << " classes), M = " << s.runs
      << '\n';
  const auto flags = out.flags();
  out << std::fixed << std::setprecision(4);
  out << "  mean fitness       " << s.mean_fitness << '\n'
      << "  best fitness       " << s.best_fitness << '\n'
      << "  worst fitness      " << s.worst_fitness << '\n'
      << "  std fitness        " << s.std_fitness << '\n'
      << "  average accuracy   " << s.average_accuracy << '\n'
      << std::setprecision(1)
      << "  average reduction  " << s.average_reduction << " of " << ds.n_features << '\n'
      << std::setprecision(3)
      << "  average time (s)   " << s.average_time << '\n';
  out.flags(flags);
}

fs::path prepare_out_dir(const std::string& dir) {
  fs::path p(dir);
  std::error_code ec;
  fs::create_directories(p, ec);
  if (ec) throw DataError("cannot create output directory " + dir + ": " + ec.message());
  return p;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream o(path, std::ios::binary);
  o << text;
  if (!o) throw DataError("write failed for " + path.string());
}

} // namespace

void RunConfig::finalize() {
  if (dataset_path.empty() == synthetic.empty())
    throw ConfigError("exactly one of --dataset or --synthetic is required");
  if (runs == 0) throw ConfigError("--runs must be at least 1");
  if (iterations == 0) throw ConfigError("--iterations must be at least 1");
  experiment.set_population(population);
  experiment.set_iterations(iterations);
  experiment.validate(algorithm);
  experiment.validate(baseline);
  if (!synthetic.empty()) {
    const std::string prefix = "m-of-n:";
    if (synthetic.rfind(prefix, 0) != 0)
      throw ConfigError("unsupported synthetic spec '" + synthetic + "' (expected m-of-n:...)");
    const auto spec = parse_m_of_n_spec(std::string_view(synthetic).substr(prefix.size()));
    if (spec.m > spec.n_relevant) throw ConfigError("m-of-n: m must not exceed n_relevant");
  }
  apply_simd(simd);
}

Dataset load_dataset(const RunConfig& c) {
  if (!c.synthetic.empty()) {
    const auto spec = parse_m_of_n_spec(std::string_view(c.synthetic).substr(7));
    Rng rng(c.data_seed);
    Dataset ds = generate_m_of_n(spec.n_relevant, spec.m, spec.n_noise, spec.n_instances, rng);
    ds.validate();
    return ds;
  }
  CsvOptions opt;
  opt.has_header = !c.no_header;
  opt.missing = c.drop_missing ? MissingPolicy::DropRows : MissingPolicy::Error;
  if (all_digits(c.label_column))
    opt.label_column = static_cast<std::size_t>(std::stoull(c.label_column));
  else if (!c.label_column.empty())
    opt.label_column = c.label_column;
  return load_csv(c.dataset_path, opt);
}

int cmd_run(const RunConfig& c, std::ostream& out, std::ostream& err) {
  try {
    const Dataset ds = load_dataset(c);
    const Experiment ex = run_experiment(c.algorithm, ds, c.experiment, c.runs, c.seed);
    const fs::path dir = prepare_out_dir(c.out_dir);
    const auto algo = to_string(c.algorithm);
    report::write_summary(dir / "summary.csv", algo, ds.name, ex.summary);
    report::write_runs(dir / "runs.csv", ex.runs);
    report::write_timing(dir / "timing.csv", ex.runs);
    for (const auto& r : ex.runs) report::write_trace(dir / report::trace_file_name(r.seed), r.trace);
    write_text(dir / "config.ini", config_text(c, false));
    print_summary(out, algo, ds, ex.summary);
    return kExitOk;
  } catch (const ConfigError& e) {
    err << "configuration error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

int cmd_compare(const RunConfig& c, std::ostream& out, std::ostream& err) {
  try {
    if (c.baseline_runs != 0 && c.baseline_runs != c.runs)
      throw ConfigError("paired comparison needs equal run counts (--runs " +
                        std::to_string(c.runs) + " vs --baseline-runs " +
                        std::to_string(c.baseline_runs) + ")");
    const Dataset ds = load_dataset(c);
    const Experiment a = run_experiment(c.algorithm, ds, c.experiment, c.runs, c.seed);
    const Experiment b = run_experiment(c.baseline, ds, c.experiment, c.runs, c.seed);

    std::vector<double> fa, fb, aa, ab;
    for (std::size_t k = 0; k < c.runs; ++k) {
      fa.push_back(a.runs[k].best_fitness);
      fb.push_back(b.runs[k].best_fitness);
      aa.push_back(a.runs[k].test_accuracy);
      ab.push_back(b.runs[k].test_accuracy);
    }
    const auto wf = wilcoxon_signed_rank(fa, fb);
    const auto wa = wilcoxon_signed_rank(aa, ab);

    const fs::path dir = prepare_out_dir(c.out_dir);
    {
      std::ofstream o(dir / "paired.csv", std::ios::binary);
      o << "seed,fitness_a,fitness_b,accuracy_a,accuracy_b,selected_a,selected_b\n";
      for (std::size_t k = 0; k < c.runs; ++k)
        o << a.runs[k].seed << ',' << csv::format_real(fa[k]) << ',' << csv::format_real(fb[k])
          << ',' << csv::format_real(aa[k]) << ',' << csv::format_real(ab[k]) << ','
          << a.runs[k].selected_count << ',' << b.runs[k].selected_count << '\n';
      if (!o) throw DataError("write failed for paired.csv");
    }
    {
      std::ofstream o(dir / "wilcoxon.csv", std::ios::binary);
      o << "metric,algorithm_a,algorithm_b,p_value,decision,w_plus,w_minus,n_nonzero,exact\n";
      for (const auto& [metric, w] : {std::pair{"fitness", wf}, std::pair{"accuracy", wa}})
        o << metric << ',' << to_string(c.algorithm) << ',' << to_string(c.baseline) << ','
          << csv::format_real(w.p_value) << ',' << notation(w.decision) << ','
          << csv::format_real(w.w_plus) << ',' << csv::format_real(w.w_minus) << ','
          << w.n_nonzero << ',' << (w.exact ? 1 : 0) << '\n';
      if (!o) throw DataError("write failed for wilcoxon.csv");
    }
    write_text(dir / "config.ini", config_text(c, true));

    print_summary(out, to_string(c.algorithm), ds, a.summary);
    print_summary(out, to_string(c.baseline), ds, b.summary);
    out << "wilcoxon " << to_string(c.algorithm) << " vs " << to_string(c.baseline)
        << ": fitness p = " << csv::format_real(wf.p_value) << " (" << notation(wf.decision)
        << "), accuracy p = " << csv::format_real(wa.p_value) << " (" << notation(wa.decision)
        << ")\n";
    return kExitOk;
  } catch (const ConfigError& e) {
    err << "configuration error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

int cmd_gen(const RunConfig& c, std::ostream& out, std::ostream& err) {
  try {
    const Dataset ds = load_dataset(c);
    write_csv(ds, c.out_dir);
    out << "wrote " << ds.n_instances() << " x " << ds.n_features << " dataset to " << c.out_dir
        << '\n';
    return kExitOk;
  } catch (const ConfigError& e) {
    err << "configuration error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

namespace {

void add_data_options(CLI::App* sub, RunConfig& c) {
  sub->add_option("--dataset", c.dataset_path, "CSV dataset path");
  sub->add_option("--synthetic", c.synthetic, "Synthetic dataset, e.g. m-of-n:6,3,7,1000");
  sub->add_option("--data-seed", c.data_seed, "Seed of the synthetic dataset generator");
  sub->add_option("--label-column", c.label_column, "Label column: 0-based index or name (default: last)");
  sub->add_flag("--no-header", c.no_header, "CSV has no header row");
  sub->add_flag("--drop-missing", c.drop_missing, "Drop rows with missing cells instead of failing");
}

void add_experiment_options(CLI::App* sub, RunConfig& c) {
  auto& e = c.experiment;
  sub->add_option("--runs", c.runs, "Independent runs M");
  sub->add_option("--iterations", c.iterations, "Iterations per run");
  sub->add_option("--pop-size", c.population, "Population size N");
  sub->add_option("--seed", c.seed, "Base seed; run k uses seed + k");
  sub->add_option("--alpha", e.fitness.alpha, "Error weight of the fitness");
  sub->add_option("--knn-k", e.fitness.k_neighbors, "Neighbors of the KNN classifier");
  sub->add_option("--train-fraction", e.fitness.train_fraction, "Training share of the split");
  sub->add_option("--out", c.out_dir, "Output directory");
  sub->add_option("--threads", e.threads, "Worker threads (0 = all cores)");
  sub->add_option("--simd", c.simd, "Kernel backend: auto, scalar, avx2, neon");
  sub->add_option("--max-dis", e.fsro.max_dis, "FSRO max distance");
  sub->add_option("--decision-dis", e.fsro.decision_dis, "FSRO decision distance");
  sub->add_option("--w1", e.fsro.w1, "FSRO first-move slope");
  sub->add_option("--w2", e.fsro.w2, "FSRO second-move slope");
  sub->add_option("--d1", e.fsro.d1, "FSRO first-move minimum avoidance");
  sub->add_option("--d2", e.fsro.d2, "FSRO second-move minimum avoidance");
  sub->add_option("--ess-threshold", e.fsro.ess_threshold, "FSRO ESS group-size threshold");
  sub->add_option("--share-floor", e.fsro.share_floor, "FSRO minimum group share");
  sub->add_option("--crossover-rate", e.ga.crossover_rate, "GA crossover rate");
  sub->add_option("--mutation-rate", e.ga.mutation_rate, "GA mutation rate");
  sub->add_option("--inertia", e.bpso.inertia_weight, "BPSO inertia weight");
  sub->add_option("--cognitive", e.bpso.cognitive_factor, "BPSO cognitive factor");
  sub->add_option("--social", e.bpso.social_factor, "BPSO social factor");
  sub->add_option("--velocity-clamp", e.bpso.velocity_clamp, "BPSO velocity clamp");
}

CLI::IsMember algorithm_names() { return CLI::IsMember({"fsro", "ga", "bpso"}); }

// Fills options not given on the command line from a key=value file.
void apply_config_file(CLI::App* sub, const std::string& path) {
  if (path.empty()) return;
  if (!fs::is_regular_file(path)) throw ConfigError("config file not found: " + path);
  std::vector<CLI::ConfigItem> items;
  try {
    items = CLI::ConfigINI().from_file(path);
  } catch (const CLI::Error& e) {
    throw ConfigError("cannot read config file " + path + ": " + e.what());
  }
  for (const auto& item : items) {
    if (item.name == "++" || item.name == "--") continue;
    const std::string key = item.fullname();
    CLI::Option* opt = sub->get_option_no_throw("--" + key);
    if (opt == nullptr || key == "config")
      throw ConfigError("unknown key '" + key + "' in " + path);
    if (opt->count() > 0) continue;
    try {
      opt->add_result(item.inputs);
      opt->run_callback();
    } catch (const CLI::Error& e) {
      throw ConfigError("bad value for '" + key + "' in " + path + ": " + e.what());
    }
  }
}

} // namespace

int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Frog-snake predation search for wrapper feature selection"};
  app.require_subcommand(1);
  RunConfig run_cfg, cmp_cfg, gen_cfg;

  auto* run = app.add_subcommand("run", "Run M seeded experiments and write result files");
  std::string run_config_path, cmp_config_path;
  run->add_option("--config", run_config_path, "key=value file setting any flag (flags win)");
  add_data_options(run, run_cfg);
  add_experiment_options(run, run_cfg);
  std::string run_algo = "fsro", cmp_algo = "fsro", cmp_base = "ga";
  run->add_option("--algorithm", run_algo, "fsro, ga or bpso")->check(algorithm_names());

  auto* cmp = app.add_subcommand("compare", "Paired comparison of two algorithms with a Wilcoxon test");
  cmp->add_option("--config", cmp_config_path, "key=value file setting any flag (flags win)");
  add_data_options(cmp, cmp_cfg);
  add_experiment_options(cmp, cmp_cfg);
  cmp->add_option("--algorithm", cmp_algo, "First algorithm")->check(algorithm_names());
  cmp->add_option("--baseline", cmp_base, "Second algorithm")->check(algorithm_names());
  cmp->add_option("--baseline-runs", cmp_cfg.baseline_runs, "Run count of the second algorithm");

  auto* gen = app.add_subcommand("gen", "Write a synthetic dataset to CSV");
  gen->add_option("--synthetic", gen_cfg.synthetic, "e.g. m-of-n:6,3,7,1000")->required();
  gen->add_option("--data-seed", gen_cfg.data_seed, "Generator seed");
  gen->add_option("--out", gen_cfg.out_dir, "Output CSV path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (run->parsed()) {
      apply_config_file(run, run_config_path);
      run_cfg.algorithm = parse_algorithm(run_algo);
      run_cfg.finalize();
      return cmd_run(run_cfg, out, err);
    }
    if (cmp->parsed()) {
      apply_config_file(cmp, cmp_config_path);
      cmp_cfg.algorithm = parse_algorithm(cmp_algo);
      cmp_cfg.baseline = parse_algorithm(cmp_base);
      cmp_cfg.finalize();
      return cmd_compare(cmp_cfg, out, err);
    }
    if (gen->parsed()) {
      if (gen_cfg.synthetic.rfind("m-of-n:", 0) != 0)
        throw ConfigError("unsupported synthetic spec '" + gen_cfg.synthetic + "'");
      return cmd_gen(gen_cfg, out, err);
    }
  } catch (const ConfigError& e) {
    err << "configuration error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitConfig;
}

} // namespace fsro::cli
