#include "tailcond_cli/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "tailcond/copulas.hpp"
#include "tailcond/csv.hpp"
#include "tailcond/error.hpp"
#include "tailcond/experiment.hpp"
#include "tailcond/pickands.hpp"
#include "tailcond/sampling.hpp"
#include "tailcond/serialization.hpp"
#include "tailcond_cli/svg.hpp"

namespace tailcond::cli {

namespace {

namespace fs = std::filesystem;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Writes to `path`, or to `fallback` when the path is empty or "-".
void emit(const std::string& path, std::ostream& fallback, const std::function<void(std::ostream&)>& write) {
  if (path.empty() || path == "-") {
    write(fallback);
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open '" + path + "' for writing");
  write(file);
  if (!file) throw std::runtime_error("failed writing '" + path + "'");
}

void write_file(const fs::path& path, const std::string& text) {
  emit(path.string(), std::cout, [&](std::ostream& o) { o << text; });
}

std::vector<double> default_n_grid() { return {1e2, 1e3, 1e4, 1e5, 1e6}; }

// ---------------------------------------------------------------------------
// Model flags shared by eval, conditional, probe and sample.

struct ModelFlags {
  std::string family = "gumbel";
  double theta = 3.0;
  std::size_t dim = 0;
  std::string norm = "sum";
  double q = 2.0;
  std::vector<double> lower;
};

void add_model_flags(CLI::App* app, ModelFlags& m) {
  app->add_option("--family", m.family, "gumbel, clayton, frank or logistic")->capture_default_str();
  app->add_option("--theta", m.theta, "Generator parameter")->capture_default_str();
  app->add_option("--d", m.dim, "Dimension (inferred from the point when omitted)");
  app->add_option("--norm", m.norm, "D-norm: sum (Archimedean), logistic or sup")->capture_default_str();
  app->add_option("--q", m.q, "Exponent of the logistic D-norm")->capture_default_str();
  app->add_option("--u0", m.lower, "Lower corner of the validity region: one value or d values")->delimiter(',');
}

Generator model_generator(const ModelFlags& m) { return {parse_family(m.family), m.theta}; }

CopulaModel build_model(const ModelFlags& m, std::size_t dim) {
  if (m.dim != 0 && m.dim != dim) {
    throw DimensionError("--d " + std::to_string(m.dim) + " does not match the " + std::to_string(dim) +
                         " coordinates implied by the point");
  }
  const Generator g = model_generator(m);
  const NormKind kind = parse_norm_kind(m.norm);
  const DNorm norm = kind == NormKind::Sum ? DNorm::sum(dim)
                     : kind == NormKind::Sup ? DNorm::sup(dim)
                                             : DNorm::logistic(m.q, dim);
  if (m.lower.empty()) return {g, norm};
  if (m.lower.size() != 1 && m.lower.size() != dim) throw DimensionError("--u0 needs one value or d values");
  return {g, norm, m.lower.size() == 1 ? std::vector<double>(dim, m.lower[0]) : m.lower};
}

std::size_t conditioned_slot(std::size_t j1, std::size_t dim) {
  if (j1 == 0) return dim - 1;
  if (j1 > dim) throw DimensionError("--j " + std::to_string(j1) + " exceeds the dimension " + std::to_string(dim));
  return j1 - 1;
}

// ---------------------------------------------------------------------------
// Experiment flags shared by maxima, experiment and figure. Only flags that
// were given override the preset and the config file.

struct ConfigFlags {
  std::string preset = "full";
  std::string scale;
  std::string config_path;
  std::string family, critical, slice_mode, maxima_scale;
  double theta = 0, level = 0, eps = 0, alpha = 0;
  std::size_t dim = 0, n = 0, k = 0, maxima = 0, runs = 0, j = 0, reps = 0, threads = 0;
  std::uint64_t seed = 0, critical_seed = 0;
  std::map<std::string, CLI::Option*> given;
};

void add_config_flags(CLI::App* app, ConfigFlags& c) {
  app->add_option("--preset", c.preset, "full or desk")->capture_default_str();
  app->add_option("--scale", c.scale, "Override the sample sizes with those of a preset: full or desk");
  app->add_option("--config", c.config_path, "JSON file with experiment settings");
  auto& g = c.given;
  g["family"] = app->add_option("--family", c.family, "Generator family");
  g["theta"] = app->add_option("--theta", c.theta, "Generator parameter");
  g["d"] = app->add_option("--d", c.dim, "Dimension");
  g["n"] = app->add_option("--n", c.n, "Rows per block of the unconditional step");
  g["k"] = app->add_option("--k", c.k, "Rows per conditional block");
  g["u"] = app->add_option("--u", c.level, "Conditioning level");
  g["eps"] = app->add_option("--eps", c.eps, "Half width of the conditioning window");
  g["j"] = app->add_option("--j", c.j, "Conditioned coordinate, 1-based (default d)");
  g["N"] = app->add_option("--N", c.maxima, "Maxima per test sample");
  g["M"] = app->add_option("--M", c.runs, "Outer repetitions");
  g["alpha"] = app->add_option("--alpha", c.alpha, "Test level");
  g["seed"] = app->add_option("--seed", c.seed, "Master seed (default 20190705)");
  g["critical"] = app->add_option("--critical", c.critical, "Critical values: mc or builtin");
  g["reps"] = app->add_option("--reps", c.reps, "Monte Carlo replicates for critical values");
  g["critical-seed"] = app->add_option("--critical-seed", c.critical_seed, "Seed of the critical value simulation");
  g["slice-mode"] = app->add_option("--slice-mode", c.slice_mode, "exact or scan");
  g["maxima-scale"] = app->add_option("--maxima-scale", c.maxima_scale, "first-order or literal");
  g["threads"] = app->add_option("--threads", c.threads, "Worker threads (default TAILCOND_THREADS or hardware)");
}

ExperimentConfig preset_config(const std::string& name) {
  std::string lower = name;
  std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char ch) { return std::tolower(ch); });
  if (lower == "full") return ExperimentConfig::full();
  if (lower == "desk") return ExperimentConfig::desk();
  throw InvalidParameter("unknown preset '" + name + "' (expected full or desk)");
}

ExperimentConfig resolve_config(const ConfigFlags& c, std::optional<double> theta_default = std::nullopt) {
  ExperimentConfig config = preset_config(c.preset);
  if (theta_default) config.theta = *theta_default;
  if (!c.scale.empty()) {
    const auto sizes = preset_config(c.scale);
    config.sample_size = sizes.sample_size;
    config.slice_size = sizes.slice_size;
    config.maxima_count = sizes.maxima_count;
    config.runs = sizes.runs;
  }
  if (!c.config_path.empty()) {
    std::ifstream in(c.config_path);
    if (!in) throw InvalidParameter("cannot read config file '" + c.config_path + "'");
    json doc;
    try {
      doc = json::parse(in);
    } catch (const json::parse_error& e) {
      throw InvalidParameter("config file '" + c.config_path + "' is not valid JSON: " + e.what());
    }
    config = config_from_json(doc, config);
  }
  auto has = [&](const char* key) { return c.given.at(key)->count() > 0; };
  if (has("family")) config.family = parse_family(c.family);
  if (has("theta")) config.theta = c.theta;
  if (has("d")) config.dim = c.dim;
  if (has("n")) config.sample_size = c.n;
  if (has("k")) config.slice_size = c.k;
  if (has("u")) config.level = c.level;
  if (has("eps")) config.half_width = c.eps;
  if (has("j")) {
    if (c.j == 0) throw InvalidParameter("--j is 1-based");
    config.conditioned = c.j - 1;
  }
  if (has("N")) config.maxima_count = c.maxima;
  if (has("M")) config.runs = c.runs;
  if (has("alpha")) config.alpha = c.alpha;
  if (has("seed")) config.seed = c.seed;
  if (has("critical")) config.critical = parse_critical_source(c.critical, config.critical.reps, config.critical.seed);
  if (has("reps")) config.critical.reps = c.reps;
  if (has("critical-seed")) config.critical.seed = c.critical_seed;
  if (has("slice-mode")) config.slice_mode = parse_slice_mode(c.slice_mode);
  if (has("maxima-scale")) config.scale = parse_maxima_scale(c.maxima_scale);
  if (has("threads")) config.threads = c.threads;
  if (config.critical.kind == CriticalSourceKind::MonteCarlo && config.critical.reps == 0) {
    config.critical.reps = CriticalSource::monte_carlo().reps;
  }
  config.validate();
  return config;
}

CriticalSource auto_critical(const std::string& name, std::size_t dim, double alpha, std::size_t reps,
                             std::uint64_t seed) {
  if (name == "auto") {
    return builtin_critical_value(dim, alpha) ? CriticalSource::builtin() : CriticalSource::monte_carlo(reps, seed);
  }
  return parse_critical_source(name, reps, seed);
}

MaximaSample load_maxima(const std::string& path) {
  if (path == "-") return read_maxima_csv(std::cin);
  std::ifstream in(path);
  if (!in) throw InvalidParameter("cannot read maxima file '" + path + "'");
  return read_maxima_csv(in);
}

// ---------------------------------------------------------------------------
// Probe series for the generator tail conditions.

struct Series {
  std::vector<double> s, values;
  double target;
};

Series condition_series(const Generator& g, const std::string& kind, double x) {
  Series out{default_limit_grid(), {}, 0.0};
  const double p = g.tail_index();
  const double a = g.slope_const().value_or(std::nan(""));
  if (kind == "C0") {
    out.values = tail_index_probe(g, x, out.s);
    out.target = std::pow(x, p);
    return out;
  }
  for (double s : out.s) {
    if (kind == "C1") out.values.push_back(g.phi_upper(s) / std::pow(s, p));
    if (kind == "C2") out.values.push_back(-g.phi_prime_upper(s) / std::pow(s, p - 1.0));
    if (kind == "C3") out.values.push_back(-s * g.phi_prime_upper(s) / g.phi_upper(s));
  }
  out.target = kind == "C1" ? a : kind == "C2" ? p * a : p;
  return out;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Archimedean and Archimax copulas: conditional laws, tail probes and the tail-independence experiment",
               "tailcond"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Help for every verb");

  std::string out_path;

  // eval
  ModelFlags eval_model;
  std::vector<double> eval_u;
  auto* eval = app.add_subcommand("eval", "Copula df C(u)");
  add_model_flags(eval, eval_model);
  eval->add_option("--u", eval_u, "Point, comma separated")->delimiter(',')->required();

  // conditional
  ModelFlags cond_model;
  double cond_level = 0.0;
  std::vector<double> cond_v;
  std::size_t cond_j = 0;
  auto* conditional = app.add_subcommand("conditional", "Conditional df and survival given U_j = u");
  add_model_flags(conditional, cond_model);
  conditional->add_option("--u", cond_level, "Conditioning level")->required();
  conditional->add_option("--v", cond_v, "Values of the other d-1 coordinates")->delimiter(',')->required();
  conditional->add_option("--j", cond_j, "Conditioned coordinate, 1-based (default d)");

  // probe
  ModelFlags probe_model;
  std::string probe_kind;
  std::vector<double> probe_x;
  std::vector<double> probe_n = default_n_grid();
  double probe_level = 0.99;
  std::size_t probe_j = 0;
  auto* probe = app.add_subcommand("probe", "Tail conditions, domain of attraction and conditional limit probes");
  add_model_flags(probe, probe_model);
  probe->add_option("--kind", probe_kind, "C0, C1, C2, C3, doa or conditional")
      ->required()
      ->check(CLI::IsMember({"C0", "C1", "C2", "C3", "doa", "conditional"}));
  probe->add_option("--x", probe_x, "C0: the ratio argument; doa/conditional: the limit point")->delimiter(',');
  probe->add_option("--n-grid", probe_n, "Block sizes for doa/conditional")->delimiter(',');
  probe->add_option("--u", probe_level, "Conditioning level (conditional)")->capture_default_str();
  probe->add_option("--j", probe_j, "Conditioned coordinate, 1-based (default d)");

  // sample
  ModelFlags sample_model;
  std::size_t sample_n = 0;
  std::uint64_t sample_seed = kDefaultSeed;
  auto* sample = app.add_subcommand("sample", "Draw observations from an Archimedean copula as CSV");
  add_model_flags(sample, sample_model);
  sample->add_option("--n", sample_n, "Number of rows")->required();
  sample->add_option("--seed", sample_seed, "Seed")->capture_default_str();
  sample->add_option("--out", out_path, "Output CSV (default stdout)");

  // maxima
  ConfigFlags maxima_flags;
  std::string maxima_kind = "unconditional";
  std::size_t maxima_rep = 0;
  auto* maxima = app.add_subcommand("maxima", "Normalised componentwise maxima of one experiment repetition");
  add_config_flags(maxima, maxima_flags);
  maxima->add_option("--kind", maxima_kind, "unconditional or conditional")
      ->capture_default_str()
      ->check(CLI::IsMember({"unconditional", "conditional"}));
  maxima->add_option("--rep", maxima_rep, "Repetition index")->capture_default_str();
  maxima->add_option("--out", out_path, "Output CSV (default stdout)");

  // pickands
  std::string in_path;
  double mesh = 0.0;
  auto* pickands = app.add_subcommand("pickands", "Pickands dependence function estimate from a maxima CSV");
  pickands->add_option("--in", in_path, "Maxima CSV ('-' for stdin)")->required();
  pickands->add_option("--mesh", mesh, "Simplex grid mesh (default by dimension)");
  pickands->add_option("--out", out_path, "Output CSV (default stdout)");

  // test
  std::string test_critical = "auto";
  double test_alpha = 0.05;
  std::size_t test_reps = 2000, test_threads = 0;
  std::uint64_t test_seed = kDefaultSeed;
  auto* test = app.add_subcommand("test", "Tail independence test on a maxima CSV");
  test->add_option("--in", in_path, "Maxima CSV ('-' for stdin)")->required();
  test->add_option("--alpha", test_alpha, "Level")->capture_default_str();
  test->add_option("--critical", test_critical, "auto, builtin or mc")->capture_default_str();
  test->add_option("--reps", test_reps, "Monte Carlo replicates")->capture_default_str();
  test->add_option("--critical-seed", test_seed, "Seed of the critical value simulation")->capture_default_str();
  test->add_option("--threads", test_threads, "Worker threads");
  test->add_option("--out", out_path, "Output JSON (default stdout)");

  // experiment
  ConfigFlags exp_flags;
  bool table = false;
  std::vector<std::size_t> table_dims{3, 4, 5};
  std::vector<double> table_thetas{2, 3, 4, 5, 6};
  auto* experiment = app.add_subcommand("experiment", "Rejection rates of both tests over M repetitions");
  add_config_flags(experiment, exp_flags);
  experiment->add_flag("--table", table, "Run the grid of dimensions and parameters, writing table1.csv");
  experiment->add_option("--dims", table_dims, "Dimensions of the table")->delimiter(',');
  experiment->add_option("--thetas", table_thetas, "Parameters of the table")->delimiter(',');
  experiment->add_option("--out", out_path, "Output directory (report.json, runs.csv or table1.csv)");

  // figure
  ConfigFlags fig_flags;
  std::size_t fig_rep = 0;
  auto* figure = app.add_subcommand("figure", "Maxima clouds and Pickands estimates as CSV and SVG panels");
  add_config_flags(figure, fig_flags);
  figure->add_option("--rep", fig_rep, "Repetition index")->capture_default_str();
  figure->add_option("--out", out_path, "Output directory")->required();

  // calibrate
  std::size_t cal_dim = 0, cal_n = 100, cal_reps = 2000, cal_threads = 0;
  double cal_alpha = 0.05;
  std::uint64_t cal_seed = kDefaultSeed;
  auto* calibrate = app.add_subcommand("calibrate", "Monte Carlo critical value of the test statistic");
  calibrate->add_option("--d", cal_dim, "Dimension")->required();
  calibrate->add_option("--N", cal_n, "Sample size")->capture_default_str();
  calibrate->add_option("--alpha", cal_alpha, "Level")->capture_default_str();
  calibrate->add_option("--reps", cal_reps, "Replicates")->capture_default_str();
  calibrate->add_option("--seed", cal_seed, "Seed")->capture_default_str();
  calibrate->add_option("--threads", cal_threads, "Worker threads");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsageError;
  }

  try {
    if (*eval) {
      const auto model = build_model(eval_model, eval_u.size());
      out << format_double(cdf(model, eval_u)) << '\n';
    } else if (*conditional) {
      const std::size_t d = cond_v.size() + 1;
      const auto model = build_model(cond_model, d);
      const std::size_t j = conditioned_slot(cond_j, d);
      json doc;
      doc["model"] = to_json(model);
      doc["j"] = j + 1;
      doc["u"] = cond_level;
      doc["v"] = cond_v;
      doc["value"] = conditional_cdf(model, j, cond_level, cond_v);
      doc["survival"] = conditional_survival(model, j, cond_level, cond_v);
      out << doc.dump(2) << '\n';
    } else if (*probe) {
      if (probe_kind == "doa" || probe_kind == "conditional") {
        if (probe_x.empty()) throw UsageError("probe --kind " + probe_kind + " needs --x");
        const bool doa = probe_kind == "doa";
        const std::size_t d = doa ? probe_x.size() : probe_x.size() + 1;
        const auto model = build_model(probe_model, d);
        const auto rows = doa ? doa_convergence_probe(model, probe_x, probe_n)
                              : conditional_limit_probe(model, probe_level, conditioned_slot(probe_j, d), probe_x,
                                                        probe_n);
        write_probe_csv(out, rows);
      } else {
        Generator g = model_generator(probe_model);
        if (parse_norm_kind(probe_model.norm) == NormKind::Logistic) g = g.power(probe_model.q);
        const double x = probe_x.empty() ? 2.0 : probe_x.front();
        const auto series = condition_series(g, probe_kind, x);
        const auto limit = extrapolate_limit(series.s, series.values);
        out << "# kind=" << probe_kind << " generator=" << g.describe();
        if (probe_kind == "C0") out << " x=" << format_double(x);
        out << " target=" << format_double(series.target) << " limit=" << format_double(limit.value)
            << " converged=" << (limit.converged ? 1 : 0) << '\n';
        out << "s,value\n";
        for (std::size_t i = 0; i < series.s.size(); ++i) {
          out << format_double(series.s[i]) << ',' << format_double(series.values[i]) << '\n';
        }
      }
    } else if (*sample) {
      const auto model = build_model(sample_model, sample_model.dim == 0 ? 3 : sample_model.dim);
      const auto s = sample_archimedean(model, sample_n, sample_seed);
      emit(out_path, out, [&](std::ostream& o) { write_sample_csv(o, s); });
    } else if (*maxima) {
      const auto config = resolve_config(maxima_flags);
      if (maxima_kind == "unconditional") {
        const auto m = unconditional_maxima(config, maxima_rep);
        emit(out_path, out, [&](std::ostream& o) { write_maxima_csv(o, m); });
      } else {
        const auto m = conditional_maxima(config, maxima_rep);
        if (m.shortfall) throw ShortfallError("conditional slice fell short of k rows after one retry");
        emit(out_path, out, [&](std::ostream& o) { write_maxima_csv(o, m.sample); });
      }
    } else if (*pickands) {
      const auto m = load_maxima(in_path);
      const auto grid = mesh > 0.0 ? SimplexGrid::regular(m.cols(), mesh) : SimplexGrid::default_for(m.cols());
      const auto a = estimate_pickands(m, grid);
      emit(out_path, out, [&](std::ostream& o) { write_pickands_csv(o, grid, a); });
    } else if (*test) {
      const auto m = load_maxima(in_path);
      const auto source = auto_critical(test_critical, m.cols(), test_alpha, test_reps, test_seed);
      const auto result = run_test(m, test_alpha, source, test_threads);
      emit(out_path, out, [&](std::ostream& o) { o << to_json(result).dump(2) << '\n'; });
    } else if (*experiment) {
      const auto config = resolve_config(exp_flags);
      if (!out_path.empty()) fs::create_directories(out_path);
      if (table) {
        const auto cells = run_table(config, table_dims, table_thetas, [&](const TableCell& cell) {
          err << "d=" << cell.dim << " theta=" << format_double(cell.theta) << ": ";
          if (cell.report) {
            err << "conditional " << format_double(cell.report->rejection_rate_conditional) << "%, unconditional "
                << format_double(cell.report->rejection_rate_unconditional) << "%\n";
          } else {
            err << "error: " << cell.error << '\n';
          }
        });
        const std::string path = out_path.empty() ? "" : (fs::path(out_path) / "table1.csv").string();
        emit(path, out, [&](std::ostream& o) { write_table_csv(o, cells); });
        const bool any_error = std::any_of(cells.begin(), cells.end(), [](const TableCell& c) { return !c.error.empty(); });
        return any_error ? kExitDataError : kExitOk;
      }
      const auto report = run_experiment(config);
      const std::string text = to_json(report).dump(2) + "\n";
      out << text;
      if (!out_path.empty()) {
        write_file(fs::path(out_path) / "report.json", text);
        std::ostringstream runs;
        write_runs_csv(runs, report);
        write_file(fs::path(out_path) / "runs.csv", runs.str());
      }
    } else if (*figure) {
      const auto config = resolve_config(fig_flags, 4.0);
      const auto f = figure_data(config, fig_rep);
      fs::create_directories(out_path);
      const fs::path dir(out_path);
      const std::string d = std::to_string(config.dim);
      const std::string pair = std::to_string(f.pair[0] + 1) + "," + std::to_string(f.pair[1] + 1);
      struct Panel {
        std::string csv, svg;
      };
      auto maxima_panel = [](const MaximaSample& m, const std::string& title) {
        std::ostringstream csv;
        write_maxima_csv(csv, m);
        return Panel{csv.str(), svg::scatter(m, title)};
      };
      auto pickands_panel = [](const SimplexGrid& g, const std::vector<double>& a, const std::string& title) {
        std::ostringstream csv;
        write_pickands_csv(csv, g, a);
        return Panel{csv.str(), svg::pickands(g, a, title)};
      };
      const std::vector<Panel> panels{
          maxima_panel(f.unconditional, d + "-dimensional maxima"),
          pickands_panel(f.unconditional_grid, f.unconditional_pickands, "Pickands estimate, d = " + d),
          maxima_panel(f.pair_maxima, "maxima of coordinates " + pair),
          pickands_panel(f.pair_grid, f.pair_pickands, "Pickands estimate, coordinates " + pair),
          maxima_panel(f.conditional, "conditional maxima"),
          pickands_panel(f.conditional_grid, f.conditional_pickands, "Pickands estimate, conditional maxima"),
      };
      json doc;
      doc["config"] = to_json(config);
      doc["rep"] = fig_rep;
      doc["pair"] = {f.pair[0] + 1, f.pair[1] + 1};
      const std::size_t n = config.maxima_count;
      doc["statistic_unconditional"] = test_statistic(f.unconditional_pickands, n);
      doc["statistic_pair"] = test_statistic(f.pair_pickands, n);
      doc["statistic_conditional"] = test_statistic(f.conditional_pickands, n);
      doc["files"] = json::array();
      for (std::size_t i = 0; i < panels.size(); ++i) {
        const std::string stem = "fig1_panel" + std::to_string(i + 1);
        write_file(dir / (stem + ".csv"), panels[i].csv);
        write_file(dir / (stem + ".svg"), panels[i].svg);
        doc["files"].push_back(stem + ".csv");
        doc["files"].push_back(stem + ".svg");
      }
      out << doc.dump(2) << '\n';
    } else if (*calibrate) {
      const auto source = CriticalSource::monte_carlo(cal_reps, cal_seed);
      const double value = critical_value(cal_dim, cal_alpha, source, cal_n, cal_threads);
      json doc;
      doc["dim"] = cal_dim;
      doc["sample_size"] = cal_n;
      doc["alpha"] = cal_alpha;
      doc["critical_source"] = to_json(source);
      doc["critical_value"] = value;
      if (const auto builtin = builtin_critical_value(cal_dim, cal_alpha)) {
        doc["builtin"] = *builtin;
        doc["difference"] = value - *builtin;
      }
      out << doc.dump(2) << '\n';
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsageError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitDataError;
  }
  return kExitOk;
}

}  // namespace tailcond::cli
