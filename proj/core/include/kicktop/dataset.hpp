#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

namespace kicktop {

using CellValue = std::variant<std::int64_t, double, std::string>;

/// A table with a fixed column schema plus a JSON metadata block.
struct Dataset {
  std::string kind;
  std::vector<std::string> columns;
  std::vector<std::vector<CellValue>> rows;
  nlohmann::json metadata = nlohmann::json::object();

  /// Throws std::invalid_argument if the row width differs from the schema.
  void add_row(std::vector<CellValue> row);

  /// Column `name` of every row as doubles (integers are converted, strings
  /// throw std::invalid_argument).
  std::vector<double> column(const std::string& name) const;

  void write_csv(std::ostream& os) const;

  /// Writes <dir>/<kind>.csv and <dir>/<kind>.meta.json, creating `dir`.
  void write_bundle(const std::filesystem::path& dir) const;
};

}  // namespace kicktop
