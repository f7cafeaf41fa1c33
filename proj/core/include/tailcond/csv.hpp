#ifndef TAILCOND_CSV_HPP
#define TAILCOND_CSV_HPP

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "tailcond/copulas.hpp"
#include "tailcond/experiment.hpp"
#include "tailcond/maxima.hpp"
#include "tailcond/pickands.hpp"
#include "tailcond/sampling.hpp"

namespace tailcond {

/// Shortest round-trip form with at most 17 significant digits, '.' as the decimal point.
std::string format_double(double value);

/// Rows of numbers under a header line; lines starting with '#' are metadata.
struct CsvTable {
  std::vector<std::string> metadata;
  std::vector<std::string> header;
  std::size_t cols = 0;
  std::vector<double> data;

  [[nodiscard]] std::size_t rows() const noexcept { return cols == 0 ? 0 : data.size() / cols; }
};

CsvTable read_csv(std::istream& in);

void write_csv_row(std::ostream& out, std::span<const double> values);

/// Header u1..ud, one observation per line.
void write_sample_csv(std::ostream& out, const SampleMatrix& sample);

/// '# norming=... scale=... c=... a=... n=...' line, then header m1..md.
void write_maxima_csv(std::ostream& out, const MaximaSample& maxima);
MaximaSample read_maxima_csv(std::istream& in);

/// Header t1..td,A.
void write_pickands_csv(std::ostream& out, const SimplexGrid& grid, std::span<const double> a_hat);

/// Header n,value,target,rel_error,clamped.
void write_probe_csv(std::ostream& out, std::span<const ProbeRow> rows);

/// Per-run statistics of an experiment.
void write_runs_csv(std::ostream& out, const ExperimentReport& report);

/// One line per (d, theta) cell: rates, shortfalls and critical values.
void write_table_csv(std::ostream& out, std::span<const TableCell> cells);

}  // namespace tailcond

#endif  // TAILCOND_CSV_HPP
