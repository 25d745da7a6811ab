#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace vnd {

// 17 significant digits; "inf", "-inf", "nan" for non-finite values.
std::string format_double(double v);

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  void add(std::vector<std::string> row);
  // Appends the version and flags columns to every row.
  void stamp(const std::string& version, const std::string& flags);
  void write_csv(std::ostream& os) const;
  std::string csv() const;
};

std::string csv_escape(const std::string& field);

}  // namespace vnd
