#include "tailcond/csv.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "tailcond/error.hpp"

namespace tailcond {

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, sep)) {
    if (!field.empty() && field.back() == '\r') field.pop_back();
    out.push_back(field);
  }
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

double parse_number(const std::string& text) {
  if (text == "nan") return std::nan("");
  if (text == "inf") return HUGE_VAL;
  if (text == "-inf") return -HUGE_VAL;
  double value = 0.0;
  const char* first = text.data();
  const char* last = first + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) throw InvalidParameter("csv: cannot parse number '" + text + "'");
  return value;
}

void write_header(std::ostream& out, const std::string& prefix, std::size_t count) {
  for (std::size_t i = 0; i < count; ++i) out << (i ? "," : "") << prefix << (i + 1);
}

// Value of key=... in a metadata line, or empty.
std::string meta_value(const std::vector<std::string>& metadata, const std::string& key) {
  for (const auto& line : metadata) {
    std::istringstream in(line);
    std::string token;
    while (in >> token) {
      if (token.rfind(key + "=", 0) == 0) return token.substr(key.size() + 1);
    }
  }
  return {};
}

}  // namespace

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  (void)ec;
  return {buf, ptr};
}

CsvTable read_csv(std::istream& in) {
  CsvTable table;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      table.metadata.push_back(line.substr(1));
      continue;
    }
    if (table.header.empty()) {
      table.header = split(line, ',');
      table.cols = table.header.size();
      continue;
    }
    const auto fields = split(line, ',');
    if (fields.size() != table.cols) {
      std::ostringstream msg;
      msg << "csv: row " << table.rows() + 1 << " has " << fields.size() << " fields, header has " << table.cols;
      throw DimensionError(msg.str());
    }
    for (const auto& f : fields) table.data.push_back(parse_number(f));
  }
  if (table.header.empty()) throw InvalidParameter("csv: missing header row");
  return table;
}

void write_csv_row(std::ostream& out, std::span<const double> values) {
  for (std::size_t i = 0; i < values.size(); ++i) out << (i ? "," : "") << format_double(values[i]);
  out << '\n';
}

void write_sample_csv(std::ostream& out, const SampleMatrix& sample) {
  write_header(out, "u", sample.cols);
  out << '\n';
  for (std::size_t r = 0; r < sample.rows; ++r) write_csv_row(out, sample.row(r));
}

void write_maxima_csv(std::ostream& out, const MaximaSample& maxima) {
  const auto& nm = maxima.norming();
  out << "# norming=" << (nm.kind == NormingKind::Unconditional ? "unconditional" : "conditional");
  if (nm.kind == NormingKind::Unconditional) {
    out << " scale=" << maxima_scale_name(nm.scale) << " b=" << format_double(nm.b);
  }
  out << " c=" << format_double(nm.c) << " a=" << format_double(nm.a) << " n=" << nm.block << '\n';
  write_header(out, "m", maxima.cols());
  out << '\n';
  for (std::size_t r = 0; r < maxima.rows(); ++r) write_csv_row(out, maxima.row(r));
}

MaximaSample read_maxima_csv(std::istream& in) {
  const CsvTable table = read_csv(in);
  MaximaNorming nm;
  if (meta_value(table.metadata, "norming") == "conditional") nm.kind = NormingKind::Conditional;
  if (auto s = meta_value(table.metadata, "scale"); !s.empty()) nm.scale = parse_maxima_scale(s);
  if (auto s = meta_value(table.metadata, "b"); !s.empty()) nm.b = parse_number(s);
  if (auto s = meta_value(table.metadata, "c"); !s.empty()) nm.c = parse_number(s);
  if (auto s = meta_value(table.metadata, "a"); !s.empty()) nm.a = parse_number(s);
  if (auto s = meta_value(table.metadata, "n"); !s.empty()) nm.block = static_cast<std::size_t>(parse_number(s));
  MaximaSample out(table.cols, nm);
  for (std::size_t r = 0; r < table.rows(); ++r) {
    out.append(std::span<const double>(table.data.data() + r * table.cols, table.cols));
  }
  return out;
}

void write_pickands_csv(std::ostream& out, const SimplexGrid& grid, std::span<const double> a_hat) {
  if (a_hat.size() != grid.size()) throw DimensionError("write_pickands_csv: estimate and grid differ in size");
  write_header(out, "t", grid.dim());
  out << ",A\n";
  std::vector<double> row(grid.dim() + 1);
  for (std::size_t g = 0; g < grid.size(); ++g) {
    const auto t = grid.point(g);
    std::copy(t.begin(), t.end(), row.begin());
    row.back() = a_hat[g];
    write_csv_row(out, row);
  }
}

void write_probe_csv(std::ostream& out, std::span<const ProbeRow> rows) {
  out << "n,value,target,rel_error,clamped\n";
  for (const auto& r : rows) {
    out << format_double(r.n) << ',' << format_double(r.value) << ',' << format_double(r.target) << ','
        << format_double(r.rel_error) << ',' << (r.clamped ? 1 : 0) << '\n';
  }
}

void write_runs_csv(std::ostream& out, const ExperimentReport& report) {
  out << "rep,s_unconditional,s_conditional,reject_unconditional,reject_conditional,shortfall,retries\n";
  for (const auto& r : report.runs) {
    out << r.rep << ',' << format_double(r.s_unconditional) << ',' << format_double(r.s_conditional) << ','
        << (r.reject_unconditional ? 1 : 0) << ',' << (r.reject_conditional ? 1 : 0) << ','
        << (r.shortfall ? 1 : 0) << ',' << r.retries << '\n';
  }
}

void write_table_csv(std::ostream& out, std::span<const TableCell> cells) {
  out << "d,theta,runs,rejection_rate_conditional,rejection_rate_unconditional,shortfall_count,"
         "critical_unconditional,critical_conditional,error\n";
  const std::string nan = format_double(std::nan(""));
  for (const auto& cell : cells) {
    out << cell.dim << ',' << format_double(cell.theta) << ',';
    if (cell.report) {
      const auto& r = *cell.report;
      out << r.config.runs << ',' << format_double(r.rejection_rate_conditional) << ','
          << format_double(r.rejection_rate_unconditional) << ',' << r.shortfall_count << ','
          << format_double(r.critical.unconditional) << ',' << format_double(r.critical.conditional) << ",\n";
    } else {
      std::string error = cell.error;
      for (char& ch : error) {
        if (ch == ',' || ch == '\n' || ch == '"') ch = ';';
      }
      out << "0," << nan << ',' << nan << ",0," << nan << ',' << nan << ',' << error << '\n';
    }
  }
}

}  // namespace tailcond
