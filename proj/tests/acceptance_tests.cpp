// Acceptance suite: one line per criterion, exit status 1 if any criterion fails.
// Criterion 2 runs at n = 110000, k = 1000; TAILCOND_ACCEPTANCE_DESK=1 selects n = 20000, k = 500.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "tailcond/copulas.hpp"
#include "tailcond/csv.hpp"
#include "tailcond/experiment.hpp"
#include "tailcond/pickands.hpp"
#include "tailcond/sampling.hpp"
#include "tailcond/serialization.hpp"
#include "tailcond/statistics.hpp"

using namespace tailcond;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* pattern, double a, double b = 0, double c = 0, double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, pattern, a, b, c, d);
  return buf;
}

// Exact binomial 99% acceptance region [lo, hi] for the count of rejections.
std::pair<int, int> binomial_band(int m, double p, double level = 0.99) {
  const double tail = (1.0 - level) / 2.0;
  std::vector<double> pmf(m + 1);
  for (int x = 0; x <= m; ++x) {
    pmf[x] = std::exp(std::lgamma(m + 1.0) - std::lgamma(x + 1.0) - std::lgamma(m - x + 1.0) + x * std::log(p) +
                      (m - x) * std::log1p(-p));
  }
  int lo = 0;
  double below = 0.0;
  while (lo < m && below + pmf[lo] <= tail) below += pmf[lo++];
  int hi = m;
  double above = 0.0;
  while (hi > 0 && above + pmf[hi] <= tail) above += pmf[hi--];
  return {lo, hi};
}

std::string serialize(const ExperimentReport& r) {
  std::ostringstream out;
  out << to_json(r).dump(2) << '\n';
  write_runs_csv(out, r);
  return out.str();
}

const std::vector<std::pair<std::size_t, double>> kTableCells{{3, 2.0}, {3, 3.0}, {4, 3.0}};

ExperimentConfig table_config(std::size_t d, double theta, std::size_t threads) {
  ExperimentConfig c = ExperimentConfig::desk();
  c.dim = d;
  c.theta = theta;
  c.critical = CriticalSource::monte_carlo(2000);
  c.threads = threads;
  return c;
}

ExperimentConfig contrast_config(std::size_t threads) {
  const bool desk = std::getenv("TAILCOND_ACCEPTANCE_DESK") != nullptr;
  ExperimentConfig c = desk ? ExperimentConfig::desk() : ExperimentConfig::full();
  c.theta = 3.0;
  c.dim = 3;
  c.runs = 100;
  c.critical = CriticalSource::monte_carlo(2000);
  c.threads = threads;
  return c;
}

std::vector<std::string> table_reports;
std::string contrast_report;

Outcome criterion_table() {
  const auto [lo, hi] = binomial_band(200, 0.05);
  bool pass = true;
  std::string detail = fmt("band [%.1f%%, %.1f%%];", lo / 2.0, hi / 2.0);
  for (const auto& [d, theta] : kTableCells) {
    const auto r = run_experiment(table_config(d, theta, 0));
    table_reports.push_back(serialize(r));
    const double rate = r.rejection_rate_conditional;
    const bool ok = r.shortfall_count == 0 && rate >= lo / 2.0 && rate <= hi / 2.0;
    pass = pass && ok;
    detail += fmt(" d=%.0f theta=%.0f: %.1f%% (unconditional %.1f%%)", static_cast<double>(d), theta, rate,
                  r.rejection_rate_unconditional);
    detail += ok ? ";" : " OUT;";
  }
  return {pass, detail};
}

Outcome criterion_contrast() {
  const auto c = contrast_config(0);
  const auto r = run_experiment(c);
  contrast_report = serialize(r);
  int both = 0;
  double med_u = 0, med_c = 0;
  std::vector<double> su, sc;
  for (const auto& run : r.runs) {
    const bool ok = !run.shortfall && run.s_unconditional > r.critical.unconditional &&
                    run.s_conditional < r.critical.conditional;
    both += ok ? 1 : 0;
    su.push_back(run.s_unconditional);
    sc.push_back(run.s_conditional);
  }
  std::sort(su.begin(), su.end());
  std::sort(sc.begin(), sc.end());
  med_u = su[su.size() / 2];
  med_c = sc[sc.size() / 2];
  std::string detail = fmt("n=%.0f: %.0f/100 runs with S_unc > %.3f and S_cond < %.3f", static_cast<double>(c.sample_size),
                           both, r.critical.unconditional, r.critical.conditional);
  detail += fmt("; median pair (%.3f, %.3f)", med_u, med_c);
  return {both >= 95, detail};
}

Outcome criterion_conditional_oracle() {
  std::mt19937_64 engine(2024);
  std::uniform_real_distribution<double> unif(0.501, 0.999);
  const std::vector<Generator> gens{Generator::gumbel(1.5), Generator::gumbel(3.0), Generator::clayton(1.0),
                                    Generator::clayton(2.0), Generator::frank(5.0)};
  double worst = 0.0;
  int points = 0;
  for (const auto& g : gens) {
    for (std::size_t d : {2u, 3u, 4u}) {
      const auto m = CopulaModel::archimedean(g, d);
      for (int i = 0; i < 200; ++i) {
        std::vector<double> u(d);
        for (double& x : u) x = unif(engine);
        const std::size_t j = engine() % d;
        std::vector<double> v;
        for (std::size_t k = 0; k < d; ++k) {
          if (k != j) v.push_back(u[k]);
        }
        // Five-point central difference, step scaled by the distance to 1.
        const double h = 1e-3 * (1.0 - u[j]);
        auto at = [&](double offset) {
          auto shifted = u;
          shifted[j] = u[j] + offset;
          return cdf(m, shifted);
        };
        const double fd = (8.0 * (at(h) - at(-h)) - (at(2.0 * h) - at(-2.0 * h))) / (12.0 * h);
        const double analytic = conditional_cdf(m, j, u[j], v);
        worst = std::max(worst, std::abs(analytic - fd) / std::abs(fd));
        ++points;
      }
    }
  }
  return {worst < 1e-5, fmt("%.0f points, max rel error %.2e (tol 1e-5)", points, worst)};
}

Outcome criterion_conditional_limit() {
  const std::vector<double> grid{1e6};
  const std::vector<double> x{-1.0, -1.0};
  const auto g = conditional_limit_probe(CopulaModel::archimedean(Generator::gumbel(3.0), 3), 0.99, 2, x, grid).back();
  const auto c = conditional_limit_probe(CopulaModel::archimedean(Generator::clayton(2.0), 3), 0.99, 2, x, grid).back();
  const bool pass = std::abs(g.value - 2.0) <= 0.1 && std::abs(c.value - 2.0) <= 0.1 && g.target == 2.0 &&
                    c.target == 2.0;
  return {pass, fmt("gumbel(3) %.4f, clayton(2) %.4f, target 2 (tol 5%%)", g.value, c.value)};
}

Outcome criterion_doa() {
  const std::vector<Generator> gens{Generator::gumbel(1.0), Generator::gumbel(2.0), Generator::gumbel(3.0),
                                    Generator::gumbel(4.0), Generator::clayton(1.0), Generator::clayton(2.0),
                                    Generator::frank(1.0),  Generator::frank(5.0)};
  const std::vector<std::vector<double>> xs{{-1.0, -1.0}, {-1.0, -2.0}, {-0.3, -1.0, -2.5}};
  const std::vector<double> grid{1e6};
  double worst = 0.0;
  int probes = 0;
  for (const auto& g : gens) {
    for (const auto& x : xs) {
      const std::size_t d = x.size();
      for (const auto& norm : {DNorm::sum(d), DNorm::sup(d), DNorm::logistic(2.0, d), DNorm::logistic(4.5, d)}) {
        const CopulaModel m(g, norm);
        // Independent target: ||(|x_i|^p)||_D^{1/p} evaluated from the definition.
        const double p = g.tail_index();
        std::vector<double> powered(d);
        for (std::size_t i = 0; i < d; ++i) powered[i] = std::pow(std::abs(x[i]), p);
        const double target = std::pow(norm(powered), 1.0 / p);
        const auto row = doa_convergence_probe(m, x, grid).back();
        worst = std::max(worst, std::abs(row.value - target) / target);
        ++probes;
      }
    }
  }
  return {worst < 5e-3, fmt("%.0f probes at n=1e6, max rel error %.2e (tol 5e-3)", probes, worst)};
}

Outcome criterion_reduction() {
  const CopulaModel archimax(Generator::gumbel(2.0), DNorm::logistic(3.0, 3));
  const auto gumbel6 = CopulaModel::archimedean(Generator::gumbel(6.0), 3);
  std::mt19937_64 engine(6);
  std::uniform_real_distribution<double> unif(0.5, 1.0);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    std::vector<double> u(3);
    for (double& x : u) x = unif(engine);
    worst = std::max(worst, std::abs(cdf(archimax, u) - cdf(gumbel6, u)));
  }
  return {worst <= 1e-12, fmt("1000 points, max abs difference %.2e (tol 1e-12)", worst)};
}

Outcome criterion_sampler() {
  const std::size_t n = 100000;
  std::mt19937_64 engine(7);
  std::uniform_real_distribution<double> unif(0.2, 0.95);
  double worst_z = 0.0;
  for (const auto& g : {Generator::gumbel(3.0), Generator::clayton(2.0), Generator::frank(5.0)}) {
    const CopulaModel m(g, DNorm::sum(3), std::vector<double>(3, 1e-6));
    const auto s = sample_archimedean(m, n, kDefaultSeed);
    for (int p = 0; p < 20; ++p) {
      std::vector<double> u(3);
      for (double& x : u) x = unif(engine);
      std::size_t hits = 0;
      for (std::size_t r = 0; r < n; ++r) {
        const auto row = s.row(r);
        hits += (row[0] <= u[0] && row[1] <= u[1] && row[2] <= u[2]) ? 1 : 0;
      }
      const double c = cdf(m, u);
      worst_z = std::max(worst_z, std::abs(static_cast<double>(hits) / n - c) / std::sqrt(c * (1 - c) / n));
    }
  }
  double worst_tau = 0.0;
  for (double theta : {2.0, 3.0, 4.0}) {
    const auto s = sample_archimedean(CopulaModel::archimedean(Generator::gumbel(theta), 2), n, kDefaultSeed + 1);
    std::vector<double> a(n), b(n);
    for (std::size_t r = 0; r < n; ++r) {
      a[r] = s(r, 0);
      b[r] = s(r, 1);
    }
    worst_tau = std::max(worst_tau, std::abs(kendall_tau(a, b) - (1.0 - 1.0 / theta)));
  }
  return {worst_z <= 3.0 && worst_tau <= 0.01,
          fmt("max |z| %.2f over 60 probes (tol 3); max tau error %.4f (tol 0.01)", worst_z, worst_tau)};
}

Outcome criterion_null_size() {
  const std::size_t reps = 400, maxima = 100, block = 1000;
  bool pass = true;
  std::string detail;
  for (std::size_t d : {2u, 3u}) {
    const auto grid = SimplexGrid::default_for(d);
    const double critical = critical_value(d, 0.05, CriticalSource::monte_carlo(2000), maxima, grid);
    const auto model = CopulaModel::archimedean(Generator::gumbel(1.0), d);
    const FrailtySampler sampler(model);
    std::size_t rejects = 0;
    for (std::size_t rep = 0; rep < reps; ++rep) {
      MaximaSample sample(d, unconditional_norming(block, MaximaScale::FirstOrder));
      for (std::size_t i = 0; i < maxima; ++i) {
        RunningMax running(d);
        sampler.generate(block, derive_seed(0xacce, {d, rep, i}),
                         [&](std::size_t, std::span<const double> row) { running.update(row); });
        sample.append(normalize_unconditional(running.values(), block, MaximaScale::FirstOrder));
      }
      rejects += run_test(sample, 0.05, CriticalSource::monte_carlo(2000), critical, grid).reject ? 1 : 0;
    }
    const double rate = 100.0 * static_cast<double>(rejects) / reps;
    pass = pass && rate >= 2.5 && rate <= 8.0;
    detail += fmt("d=%.0f: %.2f%% (critical %.3f); ", static_cast<double>(d), rate, critical);
  }
  return {pass, detail + "band [2.5%, 8%]"};
}

Outcome criterion_sup_norm() {
  std::mt19937_64 engine(9);
  std::uniform_real_distribution<double> unif(0.5, 1.0);
  int mismatches = 0;
  for (const auto& g : {Generator::gumbel(3.0), Generator::clayton(2.0)}) {
    const CopulaModel m(g, DNorm::sup(4));
    for (int i = 0; i < 1000; ++i) {
      std::vector<double> u(4);
      for (double& x : u) x = unif(engine);
      mismatches += cdf(m, u) == *std::min_element(u.begin(), u.end()) ? 0 : 1;
    }
  }
  return {mismatches == 0, fmt("2000 points, %.0f inexact", mismatches)};
}

Outcome criterion_determinism() {
  if (table_reports.size() != kTableCells.size() || contrast_report.empty()) {
    return {false, "criteria 1 and 2 did not produce reports"};
  }
  bool same = true;
  for (std::size_t i = 0; i < kTableCells.size(); ++i) {
    const auto& [d, theta] = kTableCells[i];
    same = same && serialize(run_experiment(table_config(d, theta, 1))) == table_reports[i];
  }
  same = same && serialize(run_experiment(contrast_config(3))) == contrast_report;
  return {same, same ? "reports byte-identical at 1 and 3 threads vs default" : "reports differ across thread counts"};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"table reproduction (desk scale)", criterion_table},
      {"two-statistic contrast", criterion_contrast},
      {"conditional df oracle", criterion_conditional_oracle},
      {"conditional limit", criterion_conditional_limit},
      {"domain of attraction", criterion_doa},
      {"archimax logistic reduction", criterion_reduction},
      {"sampler goodness of fit", criterion_sampler},
      {"null size", criterion_null_size},
      {"sup-norm counterexample", criterion_sup_norm},
      {"determinism", criterion_determinism},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome{false, ""};
    try {
      outcome = criteria[i].second();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("[%s] criterion %zu %s: %s (%.1fs)\n", outcome.pass ? "PASS" : "FAIL", i + 1, criteria[i].first,
                outcome.detail.c_str(), secs);
    std::fflush(stdout);
    failures += outcome.pass ? 0 : 1;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
