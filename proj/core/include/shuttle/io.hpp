#ifndef SHUTTLE_IO_HPP
#define SHUTTLE_IO_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "shuttle/fits.hpp"

namespace shuttle::io {

/// Numeric CSV with one header row.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  int column(const std::string& name) const;           // -1 when absent
  int require_column(const std::string& name) const;   // throws when absent
};

CsvTable parse_csv(std::istream& in);
CsvTable read_csv(const std::string& path);

/// Shortest round-trip formatting, locale independent.
std::string format_double(double v);

std::string format_csv(const std::vector<std::string>& header,
                       const std::vector<std::vector<double>>& rows);

/// Write-then-rename so readers never observe a partial file.
void write_text_atomic(const std::string& path, const std::string& content);

// Typed loaders for the documented CSV schemas.
std::vector<infer::SurvivalPoint> load_survival_points(const CsvTable& t);
std::vector<infer::TimedSurvivalPoint> load_timed_survival_points(
    const CsvTable& t);
std::vector<infer::MisalignmentPoint> load_mis_points(const CsvTable& t);
std::vector<infer::FidelityPoint> load_fidelity_points(const CsvTable& t);
std::vector<infer::ScanPoint> load_scan_points(const CsvTable& t);

}  // namespace shuttle::io

#endif
