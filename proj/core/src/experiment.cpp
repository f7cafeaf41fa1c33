#include "tailcond/experiment.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <limits>
#include <sstream>

#include "tailcond/error.hpp"
#include "tailcond/parallel.hpp"
#include "tailcond/sampling.hpp"

namespace tailcond {

namespace {

// Tags separating the stream families of one outer repetition.
constexpr std::uint64_t kStepUnconditional = 1;
constexpr std::uint64_t kStepConditional = 2;

SliceSample scan_slice(const FrailtySampler& sampler, const ExperimentConfig& config, std::uint64_t seed) {
  const std::size_t j = config.conditioned_index();
  const double lo = config.level - config.half_width;
  const double hi = config.level + config.half_width;
  SliceSample slice;
  slice.cols = config.dim - 1;
  slice.level = config.level;
  slice.window = config.half_width;
  slice.j = j;
  slice.requested_k = config.slice_size;
  slice.data.reserve(config.slice_size * slice.cols);
  sampler.generate(config.sample_size, seed, [&](std::size_t, std::span<const double> row) {
    if (slice.achieved_k >= slice.requested_k || row[j] < lo || row[j] > hi) return;
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c != j) slice.data.push_back(row[c]);
    }
    ++slice.achieved_k;
  });
  return slice;
}

}  // namespace

std::string_view slice_mode_name(SliceMode mode) noexcept { return mode == SliceMode::Exact ? "exact" : "scan"; }

SliceMode parse_slice_mode(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "exact") return SliceMode::Exact;
  if (lower == "scan") return SliceMode::Scan;
  throw InvalidParameter("unknown slice mode '" + std::string(name) + "'");
}

ExperimentConfig ExperimentConfig::full() { return ExperimentConfig{}; }

ExperimentConfig ExperimentConfig::desk() {
  ExperimentConfig config;
  config.sample_size = 20000;
  config.slice_size = 500;
  config.maxima_count = 100;
  config.runs = 200;
  return config;
}

CopulaModel ExperimentConfig::model() const { return CopulaModel::archimedean(Generator(family, theta), dim); }

void ExperimentConfig::validate() const {
  auto fail = [](const std::string& what) { throw InvalidParameter("experiment config: " + what); };
  if (dim < 3) fail("dimension must be at least 3 so the conditional sample has two coordinates");
  if (sample_size == 0) fail("sample_size must be positive");
  if (slice_size == 0) fail("slice_size must be positive");
  if (maxima_count < 20) fail("maxima_count must be at least 20");
  if (runs == 0) fail("runs must be positive");
  if (!(level > 0.0 && level < 1.0)) fail("level must lie in (0,1)");
  if (!(half_width > 0.0 && half_width < std::min(level, 1.0 - level))) {
    fail("half_width must be positive and below min(level, 1 - level)");
  }
  if (!(alpha > 0.0 && alpha < 1.0)) fail("alpha must lie in (0,1)");
  if (conditioned && *conditioned >= dim) fail("conditioned coordinate out of range");
  if (critical.kind == CriticalSourceKind::MonteCarlo && critical.reps == 0) fail("Monte Carlo reps must be positive");
  const Generator g(family, theta);
  if (!g.samplable()) fail("family " + std::string(family_name(family)) + " cannot be sampled");
  if (critical.kind == CriticalSourceKind::BuiltIn &&
      (!builtin_critical_value(dim, alpha) || !builtin_critical_value(dim - 1, alpha))) {
    fail("no built-in critical values for this dimension/alpha; use the Monte Carlo source");
  }
}

CriticalValues experiment_critical_values(const ExperimentConfig& config) {
  const auto threads = resolve_threads(config.threads);
  return {critical_value(config.dim, config.alpha, config.critical, config.maxima_count, threads),
          critical_value(config.dim - 1, config.alpha, config.critical, config.maxima_count, threads)};
}

MaximaSample unconditional_maxima(const ExperimentConfig& config, std::size_t rep) {
  const FrailtySampler sampler(config.model());
  MaximaSample out(config.dim, unconditional_norming(config.sample_size, config.scale));
  for (std::size_t i = 0; i < config.maxima_count; ++i) {
    RunningMax running(config.dim);
    const auto seed = derive_seed(config.seed, {rep, kStepUnconditional, i});
    sampler.generate(config.sample_size, seed, [&](std::size_t, std::span<const double> row) { running.update(row); });
    out.append(normalize_unconditional(running.values(), config.sample_size, config.scale));
  }
  return out;
}

ConditionalMaxima conditional_maxima(const ExperimentConfig& config, std::size_t rep) {
  const CopulaModel model = config.model();
  const FrailtySampler sampler(model);
  const std::size_t j = config.conditioned_index();
  const auto norming = norming_constants(model, config.level, j, config.slice_size);
  ConditionalMaxima out{MaximaSample(config.dim - 1, conditional_norming(norming)), false, 0};

  for (std::size_t i = 0; i < config.maxima_count; ++i) {
    SliceSample slice;
    if (config.slice_mode == SliceMode::Exact) {
      const auto seed = derive_seed(config.seed, {rep, kStepConditional, i});
      slice = sample_window_conditional(model, j, config.level, config.half_width, config.slice_size, seed);
    } else {
      for (std::uint64_t attempt = 0; attempt < 2; ++attempt) {
        if (attempt > 0) ++out.retries;
        const auto seed = derive_seed(config.seed, {rep, kStepConditional, i, attempt});
        slice = scan_slice(sampler, config, seed);
        if (slice.complete()) break;
      }
      if (!slice.complete()) {
        out.shortfall = true;
        break;
      }
    }
    out.sample.append(componentwise_max_conditional(slice, norming));
  }
  return out;
}

RunMaxima run_maxima(const ExperimentConfig& config, std::size_t rep) {
  auto conditional = conditional_maxima(config, rep);
  return {unconditional_maxima(config, rep), std::move(conditional.sample), conditional.shortfall,
          conditional.retries};
}

RunResult run_single(const ExperimentConfig& config, std::size_t rep, const CriticalValues& critical) {
  const RunMaxima maxima = run_maxima(config, rep);
  RunResult result;
  result.rep = rep;
  result.retries = maxima.retries;
  result.shortfall = maxima.shortfall;

  const auto grid_full = SimplexGrid::default_for(config.dim);
  const auto unconditional = run_test(maxima.unconditional, config.alpha, config.critical, critical.unconditional, grid_full);
  result.s_unconditional = unconditional.statistic;
  result.reject_unconditional = unconditional.reject;

  if (maxima.shortfall) {
    result.s_conditional = std::numeric_limits<double>::quiet_NaN();
    return result;
  }
  const auto grid_cond = SimplexGrid::default_for(config.dim - 1);
  const auto conditional = run_test(maxima.conditional, config.alpha, config.critical, critical.conditional, grid_cond);
  result.s_conditional = conditional.statistic;
  result.reject_conditional = conditional.reject;
  return result;
}

ExperimentReport run_experiment(const ExperimentConfig& config, const CriticalValues& critical) {
  config.validate();
  const auto start = std::chrono::steady_clock::now();
  ExperimentReport report;
  report.config = config;
  report.critical = critical;
  report.runs.resize(config.runs);
  parallel_for(config.runs, resolve_threads(config.threads),
               [&](std::size_t rep) { report.runs[rep] = run_single(config, rep, critical); });

  std::size_t rejects_unconditional = 0, rejects_conditional = 0;
  for (const auto& run : report.runs) {
    rejects_unconditional += run.reject_unconditional ? 1 : 0;
    if (run.shortfall) {
      ++report.shortfall_count;
    } else {
      rejects_conditional += run.reject_conditional ? 1 : 0;
    }
  }
  const std::size_t completed = config.runs - report.shortfall_count;
  report.rejection_rate_unconditional = 100.0 * static_cast<double>(rejects_unconditional) / static_cast<double>(config.runs);
  report.rejection_rate_conditional =
      completed == 0 ? std::numeric_limits<double>::quiet_NaN()
                     : 100.0 * static_cast<double>(rejects_conditional) / static_cast<double>(completed);
  report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

ExperimentReport run_experiment(const ExperimentConfig& config) {
  config.validate();
  return run_experiment(config, experiment_critical_values(config));
}

std::vector<TableCell> run_table(const ExperimentConfig& base, const std::vector<std::size_t>& dims,
                                 const std::vector<double>& thetas,
                                 const std::function<void(const TableCell&)>& on_cell) {
  std::vector<TableCell> cells;
  for (std::size_t d : dims) {
    for (double theta : thetas) {
      TableCell cell{d, theta, std::nullopt, {}};
      try {
        ExperimentConfig config = base;
        config.dim = d;
        config.theta = theta;
        if (config.conditioned && *config.conditioned >= d) config.conditioned.reset();
        cell.report = run_experiment(config);
      } catch (const std::exception& e) {
        cell.error = e.what();
      }
      if (on_cell) on_cell(cell);
      cells.push_back(std::move(cell));
    }
  }
  return cells;
}

FigureData figure_data(const ExperimentConfig& config, std::size_t rep) {
  config.validate();
  RunMaxima maxima = run_maxima(config, rep);
  if (maxima.shortfall) throw ShortfallError("figure_data: conditional slice fell short of k rows");
  const std::vector<std::size_t> pair{0, 1};
  MaximaSample pair_maxima = maxima.unconditional.project(pair);

  auto grid_full = SimplexGrid::default_for(config.dim);
  auto grid_pair = SimplexGrid::default_for(2);
  auto grid_cond = SimplexGrid::default_for(config.dim - 1);
  auto a_full = estimate_pickands(maxima.unconditional, grid_full);
  auto a_pair = estimate_pickands(pair_maxima, grid_pair);
  auto a_cond = estimate_pickands(maxima.conditional, grid_cond);
  return FigureData{config,
                    pair,
                    std::move(maxima.unconditional),
                    std::move(grid_full),
                    std::move(a_full),
                    std::move(pair_maxima),
                    std::move(grid_pair),
                    std::move(a_pair),
                    std::move(maxima.conditional),
                    std::move(grid_cond),
                    std::move(a_cond)};
}

}  // namespace tailcond
