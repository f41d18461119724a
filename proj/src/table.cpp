#include "nphase/table.hpp"

#include <charconv>
#include <ostream>
#include <sstream>
#include <system_error>

#include "nphase/errors.hpp"

namespace nphase {

std::string format_value(double value) {
  char buf[64];
  const auto result = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general, 15);
  return std::string(buf, result.ptr);
}

void OutputTable::append_row(std::vector<double> row) {
  if (row.size() != header.size()) {
    throw validation_error("row width does not match the table header");
  }
  rows.push_back(std::move(row));
}

void OutputTable::write_csv(std::ostream& os) const {
  for (std::size_t c = 0; c < header.size(); ++c) {
    if (c != 0) {
      os << ',';
    }
    os << header[c];
  }
  os << '\n';
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c != 0) {
        os << ',';
      }
      os << format_value(row[c]);
    }
    os << '\n';
  }
}

std::string OutputTable::to_csv() const {
  std::ostringstream os;
  write_csv(os);
  return os.str();
}

namespace {

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> cells;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string::npos) {
      cells.push_back(line.substr(start));
      break;
    }
    cells.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
  return cells;
}

}  // namespace

OutputTable parse_csv(const std::string& text) {
  OutputTable table;
  std::istringstream is(text);
  std::string line;
  // Skip "# ..." report lines emitted ahead of CSV data on a shared stream.
  do {
    if (!std::getline(is, line)) {
      throw validation_error("empty CSV input");
    }
  } while (line.empty() || line.front() == '#');
  table.header = split_line(line);
  while (std::getline(is, line)) {
    if (line.empty() || line.front() == '#') {
      continue;
    }
    const auto cells = split_line(line);
    if (cells.size() != table.header.size()) {
      throw validation_error("ragged CSV row");
    }
    std::vector<double> row;
    row.reserve(cells.size());
    for (const auto& cell : cells) {
      double value = 0.0;
      const auto result = std::from_chars(cell.data(), cell.data() + cell.size(), value);
      if (result.ec != std::errc() || result.ptr != cell.data() + cell.size()) {
        throw validation_error("non-numeric CSV cell: " + cell);
      }
      row.push_back(value);
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

}  // namespace nphase
