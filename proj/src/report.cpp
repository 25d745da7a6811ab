#include "vnd/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "vnd/errors.hpp"

namespace vnd {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void Table::add(std::vector<std::string> row) {
  if (row.size() != columns.size()) throw InvalidInput("Table: row width does not match header");
  rows.push_back(std::move(row));
}

void Table::stamp(const std::string& version, const std::string& flags) {
  columns.push_back("version");
  columns.push_back("flags");
  for (auto& r : rows) {
    r.push_back(version);
    r.push_back(flags);
  }
}

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

void Table::write_csv(std::ostream& os) const {
  for (std::size_t i = 0; i < columns.size(); ++i) os << (i ? "," : "") << csv_escape(columns[i]);
  os << "\n";
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << csv_escape(r[i]);
    os << "\n";
  }
}

std::string Table::csv() const {
  std::ostringstream os;
  write_csv(os);
  return os.str();
}

}  // namespace vnd
