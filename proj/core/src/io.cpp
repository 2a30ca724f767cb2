#include "shuttle/io.hpp"

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <system_error>

namespace shuttle::io {

namespace {

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) {
    while (!field.empty() && (field.back() == '\r' || field.back() == ' '))
      field.pop_back();
    std::size_t start = 0;
    while (start < field.size() && field[start] == ' ') ++start;
    out.push_back(field.substr(start));
  }
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double parse_field(const std::string& s, std::size_t line_no) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw std::invalid_argument("csv: bad numeric field '" + s + "' on line " +
                                std::to_string(line_no));
  return v;
}

}  // namespace

int CsvTable::column(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i)
    if (header[i] == name) return static_cast<int>(i);
  return -1;
}

int CsvTable::require_column(const std::string& name) const {
  const int c = column(name);
  if (c < 0) throw std::invalid_argument("csv: missing column '" + name + "'");
  return c;
}

CsvTable parse_csv(std::istream& in) {
  CsvTable t;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    if (t.header.empty()) {
      t.header = split_line(line);
      continue;
    }
    const auto fields = split_line(line);
    if (fields.size() != t.header.size())
      throw std::invalid_argument("csv: row width mismatch on line " +
                                  std::to_string(line_no));
    std::vector<double> row;
    row.reserve(fields.size());
    for (const auto& f : fields) row.push_back(parse_field(f, line_no));
    t.rows.push_back(std::move(row));
  }
  if (t.header.empty()) throw std::invalid_argument("csv: empty input");
  return t;
}

CsvTable read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("csv: cannot open " + path);
  return parse_csv(in);
}

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc()) throw std::runtime_error("format_double failed");
  return std::string(buf, ptr);
}

std::string format_csv(const std::vector<std::string>& header,
                       const std::vector<std::vector<double>>& rows) {
  std::string out;
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i) out += ',';
    out += header[i];
  }
  out += '\n';
  for (const auto& row : rows) {
    if (row.size() != header.size())
      throw std::invalid_argument("format_csv: row width mismatch");
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += format_double(row[i]);
    }
    out += '\n';
  }
  return out;
}

void write_text_atomic(const std::string& path, const std::string& content) {
  const std::filesystem::path target(path);
  const std::filesystem::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) throw std::runtime_error("write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, target, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw std::runtime_error("rename to " + path + " failed: " + ec.message());
  }
}

std::vector<infer::SurvivalPoint> load_survival_points(const CsvTable& t) {
  const int cn = t.require_column("n");
  const int cs = t.require_column("survival");
  const int ct = t.column("trials");
  std::vector<infer::SurvivalPoint> out;
  out.reserve(t.rows.size());
  for (const auto& r : t.rows)
    out.push_back({r[static_cast<std::size_t>(cn)],
                   r[static_cast<std::size_t>(cs)],
                   ct >= 0 ? r[static_cast<std::size_t>(ct)] : 0.0});
  return out;
}

std::vector<infer::TimedSurvivalPoint> load_timed_survival_points(
    const CsvTable& t) {
  const int cn = t.require_column("t_us");
  const int cs = t.require_column("survival");
  const int ct = t.column("trials");
  std::vector<infer::TimedSurvivalPoint> out;
  out.reserve(t.rows.size());
  for (const auto& r : t.rows)
    out.push_back({r[static_cast<std::size_t>(cn)],
                   r[static_cast<std::size_t>(cs)],
                   ct >= 0 ? r[static_cast<std::size_t>(ct)] : 0.0});
  return out;
}

std::vector<infer::MisalignmentPoint> load_mis_points(const CsvTable& t) {
  const int cd = t.require_column("delta_sq_nm2");
  const int cv = t.require_column("delta_t_uK");
  std::vector<infer::MisalignmentPoint> out;
  out.reserve(t.rows.size());
  for (const auto& r : t.rows)
    out.push_back({r[static_cast<std::size_t>(cd)],
                   r[static_cast<std::size_t>(cv)]});
  return out;
}

std::vector<infer::FidelityPoint> load_fidelity_points(const CsvTable& t) {
  const int cn = t.require_column("n");
  const int cf = t.require_column("fidelity");
  const int ce = t.column("stderr");
  std::vector<infer::FidelityPoint> out;
  out.reserve(t.rows.size());
  for (const auto& r : t.rows)
    out.push_back({r[static_cast<std::size_t>(cn)],
                   r[static_cast<std::size_t>(cf)],
                   ce >= 0 ? r[static_cast<std::size_t>(ce)] : 0.0});
  return out;
}

std::vector<infer::ScanPoint> load_scan_points(const CsvTable& t) {
  const int cx = t.require_column("fx_mhz");
  const int cy = t.require_column("fy_mhz");
  const int cs = t.require_column("survival");
  const int ct = t.column("trials");
  std::vector<infer::ScanPoint> out;
  out.reserve(t.rows.size());
  for (const auto& r : t.rows)
    out.push_back({r[static_cast<std::size_t>(cx)],
                   r[static_cast<std::size_t>(cy)],
                   r[static_cast<std::size_t>(cs)],
                   ct >= 0 ? r[static_cast<std::size_t>(ct)] : 0.0});
  return out;
}

}  // namespace shuttle::io
