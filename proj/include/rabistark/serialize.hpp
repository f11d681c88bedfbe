#pragma once

#include <string>
#include <utility>
#include <vector>

#include "rabistark/observables.hpp"
#include "rabistark/sweep.hpp"

namespace rabistark {

// Generic columnar table behind both output formats. CSV carries
// '#'-prefixed metadata lines before the header row; JSON is a single
// {meta, columns, rows} object with the same content. Floats are printed
// with 12 significant digits in both.
struct Cell {
  enum class Kind { number, text } kind = Kind::number;
  double num = 0.0;
  std::string text;
};

Cell cell(double v);
Cell cell(const std::string& s);

struct Table {
  std::vector<std::pair<std::string, std::string>> meta;  // ordered
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

std::string format_double(double v);
std::string to_csv(const Table& t);
std::string to_json(const Table& t);
Table parse_json_table(const std::string& text);

// Fixed documented column orders.
std::vector<std::string> analysis_columns();
std::vector<Cell> analysis_row(const GroundStateAnalysis& a);

Table table_from_analysis(const GroundStateAnalysis& a);
Table table_from_diagram(const PhaseDiagram& d);
Table table_from_boundaries(const PhaseDiagram& d);
Table table_from_collapse(const CollapseDataset& d);

void add_params_meta(Table& t, const ModelParams& p);

// Writes to path, or stdout when path is empty/"-". Throws IoError.
void write_output(const std::string& path, const std::string& content);

}  // namespace rabistark
