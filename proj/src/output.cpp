#include "mesofluct/output.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include "json.hpp"

#include "mesofluct/error.hpp"

namespace mesofluct {

namespace {
constexpr const char* kSchemaLine = "# mesofluct v1";
constexpr const char* kSchemaName = "mesofluct v1";
}  // namespace

std::size_t Table::column_index(const std::string& name) const {
  for (std::size_t j = 0; j < columns.size(); ++j)
    if (columns[j] == name) return j;
  throw Error(ErrorKind::Input, "table has no column '" + name + "'");
}

std::string format_double(double v) {
  if (v == 0.0) return "0";  // folds -0
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string to_csv(const Table& t) {
  std::string out = kSchemaLine;
  out += '\n';
  for (std::size_t j = 0; j < t.columns.size(); ++j) {
    if (j) out += ',';
    out += t.columns[j];
  }
  out += '\n';
  for (const auto& row : t.rows) {
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (j) out += ',';
      if (row[j]) out += format_double(*row[j]);
    }
    out += '\n';
  }
  return out;
}

std::string to_json(const Table& t) {
  nlohmann::ordered_json doc;
  doc["format"] = kSchemaName;
  doc["columns"] = t.columns;
  auto rows = nlohmann::ordered_json::array();
  for (const auto& row : t.rows) {
    auto r = nlohmann::ordered_json::array();
    for (const auto& cell : row) {
      if (cell && std::isfinite(*cell))
        r.push_back(*cell == 0.0 ? 0.0 : *cell);
      else
        r.push_back(nullptr);
    }
    rows.push_back(std::move(r));
  }
  doc["rows"] = std::move(rows);
  return doc.dump(1) + "\n";
}

std::string render(const Table& t, Format f) {
  return f == Format::Csv ? to_csv(t) : to_json(t);
}

void write_table(const Table& t, const std::string& path, Format f) {
  const std::string text = render(t, f);
  if (path == "-") {
    std::cout << text << std::flush;
    return;
  }
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error(ErrorKind::Input, "cannot open '" + path + "' for writing");
  os << text;
  if (!os) throw Error(ErrorKind::Input, "write to '" + path + "' failed");
}

}  // namespace mesofluct
