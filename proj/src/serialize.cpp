#include "rabistark/serialize.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>

#include <json.hpp>

#include "rabistark/version.hpp"

namespace rabistark {

Cell cell(double v) {
  Cell c;
  c.kind = Cell::Kind::number;
  c.num = v;
  return c;
}

Cell cell(const std::string& s) {
  Cell c;
  c.kind = Cell::Kind::text;
  c.text = s;
  return c;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string to_csv(const Table& t) {
  std::string out;
  for (const auto& [k, v] : t.meta) out += "# " + k + ": " + v + "\n";
  for (size_t i = 0; i < t.columns.size(); ++i) {
    if (i) out += ',';
    out += t.columns[i];
  }
  out += '\n';
  for (const auto& row : t.rows) {
    for (size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += row[i].kind == Cell::Kind::number ? format_double(row[i].num)
                                               : row[i].text;
    }
    out += '\n';
  }
  return out;
}

std::string to_json(const Table& t) {
  nlohmann::ordered_json j;
  nlohmann::ordered_json meta = nlohmann::ordered_json::object();
  for (const auto& [k, v] : t.meta) meta[k] = v;
  j["meta"] = std::move(meta);
  j["columns"] = t.columns;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& row : t.rows) {
    nlohmann::ordered_json r = nlohmann::ordered_json::array();
    for (const auto& c : row) {
      if (c.kind == Cell::Kind::text)
        r.push_back(c.text);
      else if (std::isfinite(c.num))
        // Re-parse the 12-digit form so CSV and JSON carry identical values.
        r.push_back(std::stod(format_double(c.num)));
      else
        r.push_back(nullptr);
    }
    rows.push_back(std::move(r));
  }
  j["rows"] = std::move(rows);
  return j.dump(1) + "\n";
}

Table parse_json_table(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  Table t;
  for (auto it = j.at("meta").begin(); it != j.at("meta").end(); ++it)
    t.meta.emplace_back(it.key(), it.value().get<std::string>());
  t.columns = j.at("columns").get<std::vector<std::string>>();
  for (const auto& row : j.at("rows")) {
    std::vector<Cell> r;
    for (const auto& c : row) {
      if (c.is_null())
        r.push_back(cell(std::numeric_limits<double>::quiet_NaN()));
      else if (c.is_string())
        r.push_back(cell(c.get<std::string>()));
      else
        r.push_back(cell(c.get<double>()));
    }
    t.rows.push_back(std::move(r));
  }
  return t;
}

std::vector<std::string> analysis_columns() {
  return {"E0",      "gap",     "parity",  "n_Z",        "mean_n",
          "mean_x2", "mean_p2", "mean_sx", "mean_aa",    "zeta",
          "E_Omega", "E_gy",    "E_p2",    "E_x2",       "E_total",
          "degenerate", "converged", "n_max_used"};
}

std::vector<Cell> analysis_row(const GroundStateAnalysis& a) {
  return {cell(a.E0),
          cell(a.gap),
          cell(double(a.parity)),
          cell(double(a.n_z)),
          cell(a.mean_n),
          cell(a.mean_x2),
          cell(a.mean_p2),
          cell(a.mean_sx),
          cell(a.mean_aa),
          cell(a.zeta),
          cell(a.energy_parts.E_Omega),
          cell(a.energy_parts.E_gy),
          cell(a.energy_parts.E_p2),
          cell(a.energy_parts.E_x2),
          cell(a.energy_parts.E_total),
          cell(double(a.degenerate)),
          cell(double(a.converged)),
          cell(double(a.n_max_used))};
}

void add_params_meta(Table& t, const ModelParams& p) {
  t.meta.emplace_back("version", kVersion);
  t.meta.emplace_back("omega", format_double(p.omega));
  t.meta.emplace_back("Omega", format_double(p.Omega));
  t.meta.emplace_back("g", format_double(p.g));
  t.meta.emplace_back("g_over_gs", format_double(g_ratio_of(p)));
  t.meta.emplace_back("lambda", format_double(p.lambda));
  t.meta.emplace_back("chi", format_double(p.chi));
}

Table table_from_analysis(const GroundStateAnalysis& a) {
  Table t;
  add_params_meta(t, a.params);
  t.meta.emplace_back("n_max_used", std::to_string(a.n_max_used));
  t.columns = analysis_columns();
  t.rows.push_back(analysis_row(a));
  return t;
}

Table table_from_diagram(const PhaseDiagram& d) {
  Table t;
  t.meta.emplace_back("version", kVersion);
  const std::string xn = axis_name(d.spec.x_axis.param);
  const std::string yn = axis_name(d.spec.y_axis.param);
  t.meta.emplace_back("x_axis", xn);
  t.meta.emplace_back("y_axis", yn);
  t.meta.emplace_back("fixed_omega", format_double(d.spec.fixed.omega));
  t.meta.emplace_back("fixed_g", format_double(d.spec.fixed.g));
  t.meta.emplace_back("fixed_lambda", format_double(d.spec.fixed.lambda));
  t.meta.emplace_back("fixed_chi", format_double(d.spec.fixed.chi));
  t.columns = {xn, yn};
  for (const auto& c : analysis_columns()) t.columns.push_back(c);
  t.columns.push_back("ok");

  const int nx = d.spec.x_axis.steps;
  for (size_t idx = 0; idx < d.cells.size(); ++idx) {
    const int ix = int(idx) % nx, iy = int(idx) / nx;
    const double x = d.spec.x_axis.min +
                     (nx > 1 ? (d.spec.x_axis.max - d.spec.x_axis.min) * ix / (nx - 1)
                             : 0.0);
    const int ny = d.spec.y_axis.steps;
    const double y = d.spec.y_axis.min +
                     (ny > 1 ? (d.spec.y_axis.max - d.spec.y_axis.min) * iy / (ny - 1)
                             : 0.0);
    std::vector<Cell> row{cell(x), cell(y)};
    for (auto& c : analysis_row(d.cells[idx])) row.push_back(std::move(c));
    row.push_back(cell(double(d.cells[idx].ok)));
    t.rows.push_back(std::move(row));
  }
  return t;
}

Table table_from_boundaries(const PhaseDiagram& d) {
  Table t;
  t.meta.emplace_back("version", kVersion);
  const std::string xn = axis_name(d.spec.x_axis.param);
  const std::string yn = axis_name(d.spec.y_axis.param);
  t.meta.emplace_back("x_axis", xn);
  t.meta.emplace_back("y_axis", yn);
  t.columns = {"kind", "polyline", "idx", xn, yn};
  int pid = 0;
  for (const auto& pl : d.boundaries) {
    int idx = 0;
    for (const auto& pt : pl.points)
      t.rows.push_back({cell(std::string(boundary_kind_name(pl.kind))),
                        cell(double(pid)), cell(double(idx++)), cell(pt[0]),
                        cell(pt[1])});
    ++pid;
  }
  return t;
}

Table table_from_collapse(const CollapseDataset& d) {
  Table t;
  t.meta.emplace_back("version", kVersion);
  t.meta.emplace_back("law", law_name(d.law));
  t.meta.emplace_back("max_pairwise_dev", format_double(d.max_pairwise_dev));
  t.columns = {"set", "lambda", "chi", "scaled_x", "y", "y_ref", "jump"};
  for (size_t s = 0; s < d.curves.size(); ++s) {
    const CollapseCurve& c = d.curves[s];
    for (size_t i = 0; i < d.scaled_x.size(); ++i) {
      const bool jump = std::find(c.jump_after.begin(), c.jump_after.end(),
                                  int(i)) != c.jump_after.end();
      t.rows.push_back({cell(double(s)), cell(c.lambda), cell(c.chi),
                        cell(d.scaled_x[i]), cell(c.y[i]), cell(c.y_ref[i]),
                        cell(double(jump))});
    }
  }
  return t;
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    if (!std::cout) throw Error(errc::io_error, "failed to write to stdout");
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(errc::io_error, "cannot open " + path);
  f << content;
  f.close();
  if (!f) throw Error(errc::io_error, "failed to write " + path);
}

}  // namespace rabistark
