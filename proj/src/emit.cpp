#include "xpz/emit.hpp"

#include <json.hpp>

#include <charconv>
#include <fstream>
#include <stdexcept>

namespace xpz {

void Table::add_row(std::vector<Cell> row) {
  if (row.size() != columns.size()) {
    throw std::invalid_argument("Table: row width does not match schema");
  }
  rows.push_back(std::move(row));
}

std::string format_double(double v) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

namespace {

std::string csv_quote(const std::string& field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
  std::string quoted = "\"";
  for (char c : field) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  quoted += '"';
  return quoted;
}

std::string cell_text(const Cell& c) {
  if (std::holds_alternative<double>(c)) return format_double(std::get<double>(c));
  if (std::holds_alternative<long long>(c)) return std::to_string(std::get<long long>(c));
  return std::get<std::string>(c);
}

}  // namespace

std::string render_table(const Table& table, EmitFormat format) {
  if (format == EmitFormat::csv) {
    std::string out;
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
      if (i) out += ',';
      out += csv_quote(table.columns[i]);
    }
    out += '\n';
    for (const auto& row : table.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) {
        if (i) out += ',';
        out += csv_quote(cell_text(row[i]));
      }
      out += '\n';
    }
    return out;
  }

  nlohmann::json arr = nlohmann::json::array();
  for (const auto& row : table.rows) {
    nlohmann::json obj = nlohmann::json::object();
    for (std::size_t i = 0; i < row.size(); ++i) {
      const Cell& c = row[i];
      if (std::holds_alternative<double>(c)) {
        obj[table.columns[i]] = std::get<double>(c);
      } else if (std::holds_alternative<long long>(c)) {
        obj[table.columns[i]] = std::get<long long>(c);
      } else {
        obj[table.columns[i]] = std::get<std::string>(c);
      }
    }
    arr.push_back(std::move(obj));
  }
  return arr.dump(2) + "\n";
}

void write_table(const Table& table, EmitFormat format, const std::string& path) {
  write_text(path, render_table(table, format));
}

void write_text(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << content;
  if (!out) throw std::runtime_error("write failed: " + path);
}

EmitFormat parse_format(const std::string& name) {
  if (name == "csv") return EmitFormat::csv;
  if (name == "json") return EmitFormat::json;
  throw std::invalid_argument("unknown format: " + name);
}

}  // namespace xpz
