#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace nphase {

// Rectangular numeric table with named columns. Values are written as CSV
// with 15 significant digits via std::to_chars, so output is locale-free and
// byte-stable across runs. Boolean columns are carried as 0/1.
struct OutputTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  std::size_t columns() const { return header.size(); }

  void append_row(std::vector<double> row);
  void write_csv(std::ostream& os) const;
  std::string to_csv() const;
};

// Fixed-width decimal rendering used for every numeric cell (and by the CLI
// report lines): shortest of %.15g-style general format.
std::string format_value(double value);

// Parses text produced by write_csv, skipping "#" comment lines. Used by
// tests to check round-trips; rejects ragged rows or non-numeric cells.
OutputTable parse_csv(const std::string& text);

}  // namespace nphase
