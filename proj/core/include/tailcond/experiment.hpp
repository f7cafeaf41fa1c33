#ifndef TAILCOND_EXPERIMENT_HPP
#define TAILCOND_EXPERIMENT_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "tailcond/copulas.hpp"
#include "tailcond/maxima.hpp"
#include "tailcond/pickands.hpp"
#include "tailcond/random.hpp"

namespace tailcond {

/// How the conditional sample of the second step is produced.
///   Exact  k rows drawn directly from the law of a row given that its conditioned
///          coordinate fell in the window (what scanning an unbounded stream yields).
///   Scan   draw sample_size rows and keep the first k inside the window; a
///          shortfall is retried once on a fresh stream, then reported.
enum class SliceMode { Exact, Scan };

std::string_view slice_mode_name(SliceMode mode) noexcept;
SliceMode parse_slice_mode(std::string_view name);

struct ExperimentConfig {
  Family family = Family::GumbelHougaard;
  double theta = 3.0;
  std::size_t dim = 3;
  std::size_t sample_size = 110000;  // rows per block for the unconditional maxima
  double level = 0.99;               // conditioning level u
  double half_width = 0.0005;        // window [u - eps, u + eps]
  std::size_t slice_size = 1000;     // rows per conditional block (k)
  std::optional<std::size_t> conditioned;  // 0-based; defaults to the last coordinate
  std::size_t maxima_count = 100;    // maxima per test sample (N)
  std::size_t runs = 1000;           // outer repetitions (M)
  double alpha = 0.05;
  std::uint64_t seed = kDefaultSeed;
  CriticalSource critical = CriticalSource::monte_carlo();
  std::size_t threads = 0;           // 0: TAILCOND_THREADS or hardware
  SliceMode slice_mode = SliceMode::Exact;
  MaximaScale scale = MaximaScale::FirstOrder;

  /// n = 110000, u = 0.99, eps = 0.0005, k = 1000, N = 100, M = 1000, alpha = 0.05.
  static ExperimentConfig full();
  /// n = 20000, k = 500, N = 100, M = 200; same level and window.
  static ExperimentConfig desk();

  [[nodiscard]] std::size_t conditioned_index() const noexcept { return conditioned.value_or(dim - 1); }
  [[nodiscard]] CopulaModel model() const;
  /// Throws InvalidParameter naming the first violated constraint.
  void validate() const;
};

struct RunResult {
  std::size_t rep = 0;
  double s_unconditional = 0.0;
  double s_conditional = 0.0;
  bool reject_unconditional = false;
  bool reject_conditional = false;
  bool shortfall = false;
  std::size_t retries = 0;
};

struct CriticalValues {
  double unconditional;
  double conditional;
};

/// Critical values for the d-dimensional and (d-1)-dimensional tests of a config.
CriticalValues experiment_critical_values(const ExperimentConfig& config);

/// The N x d unconditional and N x (d-1) conditional maxima of one outer repetition.
struct RunMaxima {
  MaximaSample unconditional;
  MaximaSample conditional;
  bool shortfall = false;
  std::size_t retries = 0;
};

RunMaxima run_maxima(const ExperimentConfig& config, std::size_t rep);

struct ConditionalMaxima {
  MaximaSample sample;
  bool shortfall = false;
  std::size_t retries = 0;
};

/// The two halves of run_maxima, on the same streams.
MaximaSample unconditional_maxima(const ExperimentConfig& config, std::size_t rep);
ConditionalMaxima conditional_maxima(const ExperimentConfig& config, std::size_t rep);

/// Both steps of one outer repetition and the two tests; a pure function of (config, rep).
RunResult run_single(const ExperimentConfig& config, std::size_t rep, const CriticalValues& critical);

struct ExperimentReport {
  ExperimentConfig config;
  CriticalValues critical{0.0, 0.0};
  std::vector<RunResult> runs;
  double rejection_rate_unconditional = 0.0;  // percent
  double rejection_rate_conditional = 0.0;    // percent, over runs without shortfall
  std::size_t shortfall_count = 0;
  double wall_seconds = 0.0;                  // informational, not part of serialized output
};

ExperimentReport run_experiment(const ExperimentConfig& config);
ExperimentReport run_experiment(const ExperimentConfig& config, const CriticalValues& critical);

struct TableCell {
  std::size_t dim;
  double theta;
  std::optional<ExperimentReport> report;
  std::string error;
};

/// One experiment per (d, theta); a failing cell records its error and the rest continue.
std::vector<TableCell> run_table(const ExperimentConfig& base, const std::vector<std::size_t>& dims,
                                 const std::vector<double>& thetas,
                                 const std::function<void(const TableCell&)>& on_cell = {});

/// Data behind the six panels of the maxima / Pickands figure.
struct FigureData {
  ExperimentConfig config;
  std::vector<std::size_t> pair;
  MaximaSample unconditional;
  SimplexGrid unconditional_grid;
  std::vector<double> unconditional_pickands;
  MaximaSample pair_maxima;
  SimplexGrid pair_grid;
  std::vector<double> pair_pickands;
  MaximaSample conditional;
  SimplexGrid conditional_grid;
  std::vector<double> conditional_pickands;
};

FigureData figure_data(const ExperimentConfig& config, std::size_t rep = 0);

}  // namespace tailcond

#endif  // TAILCOND_EXPERIMENT_HPP
