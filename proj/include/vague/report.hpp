// Table emission in three formats: aligned text (2-decimal display), CSV and
// JSON (full precision, shortest round-trip representation). Undefined cells
// (listener columns no speaker uses) print as "--" in text, "nan" in CSV and
// null in JSON.

#pragma once

#include <charconv>
#include <cmath>
#include <cstdio>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "vague/prob.hpp"
#include "vague/rsa.hpp"

namespace vague {

struct Table {
  std::string name;
  std::string row_axis;
  std::vector<std::string> row_labels;
  std::vector<std::string> col_labels;
  std::vector<std::vector<double>> cells;  // [row][col], NaN marks undefined
};

// Shortest decimal string that parses back to the same double.
inline std::string format_full(double v) {
  if (std::isnan(v)) return "nan";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

inline double parse_double(std::string_view s) {
  if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw error("cannot parse number '" + std::string(s) + "'");
  }
  return v;
}

inline std::string format_fixed(double v, int decimals) {
  if (std::isnan(v)) return "--";
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  std::string s(buf);
  if (s == "-0." + std::string(static_cast<std::size_t>(decimals), '0')) s.erase(0, 1);
  return s;
}

inline std::string to_text(const Table& t, int decimals = 2) {
  std::vector<std::size_t> widths;
  widths.push_back(t.row_axis.size());
  for (const std::string& r : t.row_labels) widths[0] = std::max(widths[0], r.size());
  for (std::size_t c = 0; c < t.col_labels.size(); ++c) {
    std::size_t w = t.col_labels[c].size();
    for (const auto& row : t.cells) w = std::max(w, format_fixed(row[c], decimals).size());
    widths.push_back(w);
  }
  std::string out = "# " + t.name + "\n";
  const auto pad = [](const std::string& s, std::size_t w) {
    return std::string(w - s.size(), ' ') + s;
  };
  out += pad(t.row_axis, widths[0]);
  for (std::size_t c = 0; c < t.col_labels.size(); ++c) out += "  " + pad(t.col_labels[c], widths[c + 1]);
  out += "\n";
  for (std::size_t r = 0; r < t.row_labels.size(); ++r) {
    out += pad(t.row_labels[r], widths[0]);
    for (std::size_t c = 0; c < t.col_labels.size(); ++c) {
      out += "  " + pad(format_fixed(t.cells[r][c], decimals), widths[c + 1]);
    }
    out += "\n";
  }
  return out;
}

inline std::string to_csv(const Table& t) {
  std::string out = t.row_axis;
  for (const std::string& c : t.col_labels) out += "," + c;
  out += "\n";
  for (std::size_t r = 0; r < t.row_labels.size(); ++r) {
    out += t.row_labels[r];
    for (double v : t.cells[r]) out += "," + format_full(v);
    out += "\n";
  }
  return out;
}

inline Table table_from_csv(std::string_view csv, std::string name = "") {
  Table t;
  t.name = std::move(name);
  std::vector<std::vector<std::string>> rows;
  std::size_t pos = 0;
  while (pos < csv.size()) {
    std::size_t end = csv.find('\n', pos);
    if (end == std::string_view::npos) end = csv.size();
    const std::string_view line = csv.substr(pos, end - pos);
    pos = end + 1;
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::size_t fpos = 0;
    while (true) {
      const std::size_t comma = line.find(',', fpos);
      fields.emplace_back(line.substr(fpos, comma - fpos));
      if (comma == std::string_view::npos) break;
      fpos = comma + 1;
    }
    rows.push_back(std::move(fields));
  }
  if (rows.empty()) throw error("empty csv table");
  t.row_axis = rows[0][0];
  t.col_labels.assign(rows[0].begin() + 1, rows[0].end());
  for (std::size_t r = 1; r < rows.size(); ++r) {
    if (rows[r].size() != rows[0].size()) throw error("ragged csv table");
    t.row_labels.push_back(rows[r][0]);
    std::vector<double> cells;
    for (std::size_t c = 1; c < rows[r].size(); ++c) cells.push_back(parse_double(rows[r][c]));
    t.cells.push_back(std::move(cells));
  }
  return t;
}

inline nlohmann::json table_to_json(const Table& t) {
  nlohmann::json j;
  j["name"] = t.name;
  j["row_axis"] = t.row_axis;
  j["rows"] = t.row_labels;
  j["columns"] = t.col_labels;
  nlohmann::json cells = nlohmann::json::array();
  for (const auto& row : t.cells) {
    nlohmann::json jr = nlohmann::json::array();
    for (double v : row) {
      if (std::isnan(v)) {
        jr.push_back(nullptr);
      } else {
        jr.push_back(v);
      }
    }
    cells.push_back(std::move(jr));
  }
  j["cells"] = std::move(cells);
  return j;
}

inline Table table_from_json(const nlohmann::json& j) {
  Table t;
  t.name = j.at("name").get<std::string>();
  t.row_axis = j.at("row_axis").get<std::string>();
  t.row_labels = j.at("rows").get<std::vector<std::string>>();
  t.col_labels = j.at("columns").get<std::vector<std::string>>();
  for (const auto& row : j.at("cells")) {
    std::vector<double> cells;
    for (const auto& v : row) {
      cells.push_back(v.is_null() ? std::numeric_limits<double>::quiet_NaN() : v.get<double>());
    }
    t.cells.push_back(std::move(cells));
  }
  return t;
}

inline Table speaker_table(std::string name, const rsa::SpeakerMatrix& s) {
  Table t;
  t.name = std::move(name);
  t.row_axis = "observation";
  t.row_labels = s.observations;
  for (const Message& m : s.messages) t.col_labels.push_back(to_string(m));
  for (const Pmf& row : s.rows) {
    t.cells.emplace_back(row.mass().begin(), row.mass().end());
  }
  return t;
}

// Listener x-marginals, one column per message, rows are domain values.
inline Table listener_table(std::string name, const rsa::ListenerTable& l, FiniteDomain domain) {
  Table t;
  t.name = std::move(name);
  t.row_axis = "x";
  for (int v = domain.lo; v <= domain.hi; ++v) t.row_labels.push_back(std::to_string(v));
  for (const Message& m : l.messages) t.col_labels.push_back(to_string(m));
  for (std::size_t xi = 0; xi < static_cast<std::size_t>(domain.size()); ++xi) {
    std::vector<double> row;
    for (std::size_t mi = 0; mi < l.messages.size(); ++mi) {
      row.push_back(l.x_marginals[mi] ? l.x_marginals[mi]->at_index(xi)
                                      : std::numeric_limits<double>::quiet_NaN());
    }
    t.cells.push_back(std::move(row));
  }
  return t;
}

// Single-column table, rows are domain values ("curve" emission).
inline Table curve_table(std::string name, std::string col, const Pmf& p) {
  Table t;
  t.name = std::move(name);
  t.row_axis = "k";
  t.col_labels.push_back(std::move(col));
  for (std::size_t i = 0; i < p.size(); ++i) {
    t.row_labels.push_back(std::to_string(p.domain().value_at(i)));
    t.cells.push_back({p.at_index(i)});
  }
  return t;
}

}  // namespace vague
