#include "fracheat/csv.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "json.hpp"

namespace fracheat {
namespace {

bool needs_quoting(const std::string& s) {
  for (char c : s)
    if (c == ',' || c == '"' || c == '\n' || c == '\r') return true;
  return false;
}

std::string quoted(const std::string& s) {
  if (!needs_quoting(s)) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

CsvTable::CsvTable(std::vector<CsvColumn> columns) : columns_(std::move(columns)) {
  if (columns_.empty()) throw std::invalid_argument("CsvTable: no columns");
  for (const auto& c : columns_)
    if (c.kind != "number" && c.kind != "integer" && c.kind != "string")
      throw std::invalid_argument("CsvTable: unknown column kind '" + c.kind + "'");
}

void CsvTable::add_provenance(const std::string& key, const std::string& value) {
  provenance_.emplace_back(key, value);
}

void CsvTable::add_provenance(const std::string& key, double value) {
  provenance_.emplace_back(key, render(value));
}

void CsvTable::add_row(std::vector<std::string> cells) {
  if (cells.size() != columns_.size())
    throw std::invalid_argument("CsvTable: row width does not match declared columns");
  rows_.push_back(std::move(cells));
}

std::string CsvTable::render(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string CsvTable::render(long long v) {
  char buf[24];
  std::snprintf(buf, sizeof buf, "%lld", v);
  return buf;
}

void CsvTable::write(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("CsvTable: cannot open '" + path + "' for writing");

  for (const auto& [key, value] : provenance_) out << "# " << key << " = " << value << "\n";
  for (std::size_t c = 0; c < columns_.size(); ++c)
    out << (c ? "," : "") << quoted(columns_[c].name);
  out << "\n";
  for (const auto& row : rows_) {
    for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << quoted(row[c]);
    out << "\n";
  }
  if (!out) throw std::runtime_error("CsvTable: write to '" + path + "' failed");

  nlohmann::ordered_json schema;
  schema["columns"] = nlohmann::ordered_json::array();
  for (const auto& c : columns_)
    schema["columns"].push_back({{"name", c.name}, {"kind", c.kind}});
  schema["provenance"] = nlohmann::ordered_json::object();
  for (const auto& [key, value] : provenance_) schema["provenance"][key] = value;

  const std::string sidecar = path + ".schema.json";
  std::ofstream side(sidecar, std::ios::binary);
  if (!side) throw std::runtime_error("CsvTable: cannot open '" + sidecar + "' for writing");
  side << schema.dump(2) << "\n";
  if (!side) throw std::runtime_error("CsvTable: write to '" + sidecar + "' failed");
}

}  // namespace fracheat
