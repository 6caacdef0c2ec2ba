#include "kicktop/dataset.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>
#include <stdexcept>

#include "csv_format.hpp"
#include "kicktop/error.hpp"

namespace kicktop {

void Dataset::add_row(std::vector<CellValue> row) {
  if (row.size() != columns.size()) {
    throw std::invalid_argument("Dataset: row has " + std::to_string(row.size()) +
                                " cells, schema has " + std::to_string(columns.size()));
  }
  rows.push_back(std::move(row));
}

std::vector<double> Dataset::column(const std::string& name) const {
  const auto it = std::find(columns.begin(), columns.end(), name);
  if (it == columns.end()) throw std::invalid_argument("Dataset: no column '" + name + "'");
  const auto idx = static_cast<std::size_t>(it - columns.begin());
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& r : rows) {
    const auto& c = r[idx];
    if (const auto* d = std::get_if<double>(&c)) {
      out.push_back(*d);
    } else if (const auto* i = std::get_if<std::int64_t>(&c)) {
      out.push_back(static_cast<double>(*i));
    } else {
      throw std::invalid_argument("Dataset: column '" + name + "' is not numeric");
    }
  }
  return out;
}

namespace {

void write_text_field(std::ostream& os, const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) {
    os << s;
    return;
  }
  os << '"';
  for (char c : s) {
    if (c == '"') os << '"';
    os << c;
  }
  os << '"';
}

}  // namespace

void Dataset::write_csv(std::ostream& os) const {
  for (std::size_t i = 0; i < columns.size(); ++i) os << (i ? "," : "") << columns[i];
  os << '\n';
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (i) os << ',';
      std::visit(
          [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, double>) {
              os << detail::fmt_double(v);
            } else if constexpr (std::is_same_v<T, std::string>) {
              write_text_field(os, v);
            } else {
              os << v;
            }
          },
          r[i]);
    }
    os << '\n';
  }
}

void Dataset::write_bundle(const std::filesystem::path& dir) const {
  std::filesystem::create_directories(dir);
  {
    std::ofstream csv(dir / (kind + ".csv"), std::ios::binary);
    if (!csv) throw Error("cannot write " + (dir / (kind + ".csv")).string());
    write_csv(csv);
  }
  std::ofstream meta(dir / (kind + ".meta.json"), std::ios::binary);
  if (!meta) throw Error("cannot write " + (dir / (kind + ".meta.json")).string());
  meta << metadata.dump(2) << '\n';
}

}  // namespace kicktop
