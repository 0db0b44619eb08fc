#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace mesofluct {

enum class Format { Csv, Json };

using Cell = std::optional<double>;  // empty renders as "" in CSV and null in JSON

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  std::map<std::string, double> meta;  // run summaries, never written to the file

  std::size_t column_index(const std::string& name) const;
};

/// Shortest decimal that parses back to the same double.
std::string format_double(double v);

std::string to_csv(const Table& t);
std::string to_json(const Table& t);
std::string render(const Table& t, Format f);

/// Writes to `path`, or to stdout when path is "-".
void write_table(const Table& t, const std::string& path, Format f);

}  // namespace mesofluct
