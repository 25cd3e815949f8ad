#pragma once

#include <string>
#include <utility>
#include <vector>

namespace fracheat {

// Tabular output with reproducibility guarantees: provenance comment lines
// ("# key = value") ahead of the header row, cells rendered with %.17g so a
// rerun with equal inputs is byte-identical, and the declared column schema
// mirrored into a sidecar JSON next to the table.
struct CsvColumn {
  std::string name;
  std::string kind;  // "number" | "integer" | "string"
};

class CsvTable {
 public:
  explicit CsvTable(std::vector<CsvColumn> columns);

  void add_provenance(const std::string& key, const std::string& value);
  void add_provenance(const std::string& key, double value);

  // Cells arrive pre-rendered; render() helpers keep the formatting uniform.
  void add_row(std::vector<std::string> cells);

  static std::string render(double v);
  static std::string render(long long v);

  const std::vector<CsvColumn>& columns() const { return columns_; }
  std::size_t rows() const { return rows_.size(); }

  // Writes the table to `path` and the schema sidecar to `path + ".schema.json"`.
  void write(const std::string& path) const;

 private:
  std::vector<CsvColumn> columns_;
  std::vector<std::pair<std::string, std::string>> provenance_;
  std::vector<std::vector<std::string>> rows_;
};

}  // namespace fracheat
