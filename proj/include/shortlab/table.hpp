#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <variant>
#include <vector>

namespace shortlab {

// A rectangular result table with a fixed header, written as CSV or as a
// JSON array of records with the same keys.
class Table {
 public:
  using Cell = std::variant<double, std::int64_t, std::string, bool>;

  explicit Table(std::vector<std::string> columns);

  void add_row(std::vector<Cell> row);

  const std::vector<std::string>& columns() const { return columns_; }
  const std::vector<std::vector<Cell>>& rows() const { return rows_; }

  std::string to_csv() const;
  std::string to_json() const;

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<Cell>> rows_;
};

// Shortest round-trip decimal form of a double ("%.17g" trimmed).
std::string format_double(double v);

}  // namespace shortlab
