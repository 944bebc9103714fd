#pragma once

#include <string>
#include <variant>
#include <vector>

namespace xpz {

using Cell = std::variant<double, long long, std::string>;

enum class EmitFormat { csv, json };

// Column-schema table rendered to RFC-4180 CSV (17 significant digits,
// '.' decimal separator) or a JSON array of objects.  Output bytes are a
// pure function of the content.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add_row(std::vector<Cell> row);
};

// Locale-independent shortest-width %.17g rendering.
std::string format_double(double v);

std::string render_table(const Table& table, EmitFormat format);
void write_table(const Table& table, EmitFormat format, const std::string& path);
void write_text(const std::string& path, const std::string& content);

EmitFormat parse_format(const std::string& name);

}  // namespace xpz
