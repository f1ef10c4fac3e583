// SPDX-License-Identifier: Apache-2.0

#include "qtherm/table.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace qtherm {

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::stringstream ss(line);
  while (std::getline(ss, cur, sep)) out.push_back(cur);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

std::string json_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

}  // namespace

std::string format_value(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

double parse_value(const std::string& s) {
  if (s == "inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  std::size_t pos = 0;
  const double v = std::stod(s, &pos);
  if (pos != s.size()) {
    throw std::invalid_argument("parse_value: trailing characters in '" + s +
                                "'");
  }
  return v;
}

void Table::add_row(std::vector<double> values, std::string flag) {
  if (values.size() != columns.size()) {
    throw std::invalid_argument("Table::add_row: wrong number of values");
  }
  rows.push_back(std::move(values));
  flags.push_back(std::move(flag));
  if (has_labels()) labels.emplace_back();
}

void Table::add_labeled_row(std::string label, std::vector<double> values,
                            std::string flag) {
  if (!has_labels()) {
    throw std::invalid_argument("Table::add_labeled_row: no label column");
  }
  if (values.size() != columns.size()) {
    throw std::invalid_argument("Table::add_labeled_row: wrong value count");
  }
  rows.push_back(std::move(values));
  flags.push_back(std::move(flag));
  labels.push_back(std::move(label));
}

bool Table::has_flags() const {
  for (const auto& f : flags) {
    if (!f.empty() && f != "-") return true;
  }
  return false;
}

std::string Table::to_csv() const {
  const bool with_flags = has_flags();
  std::string out;
  if (has_labels()) out += label_column + ',';
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (c) out += ',';
    out += columns[c];
  }
  if (with_flags) out += ",flags";
  out += '\n';
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (has_labels()) out += labels[r] + ',';
    for (std::size_t c = 0; c < rows[r].size(); ++c) {
      if (c) out += ',';
      out += format_value(rows[r][c]);
    }
    if (with_flags) {
      out += ',';
      out += flags[r].empty() ? "-" : flags[r];
    }
    out += '\n';
  }
  return out;
}

std::string Table::to_json() const {
  const bool with_flags = has_flags();
  std::string out = "{\n  \"columns\": [";
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (c) out += ", ";
    out += '"' + json_escape(columns[c]) + '"';
  }
  out += "],\n  \"rows\": [\n";
  for (std::size_t r = 0; r < rows.size(); ++r) {
    out += "    [";
    for (std::size_t c = 0; c < rows[r].size(); ++c) {
      if (c) out += ", ";
      const double v = rows[r][c];
      if (std::isfinite(v)) {
        out += format_value(v);
      } else {
        out += '"' + format_value(v) + '"';
      }
    }
    out += ']';
    if (r + 1 < rows.size()) out += ',';
    out += '\n';
  }
  out += "  ]";
  if (has_labels()) {
    out += ",\n  \"label_column\": \"" + json_escape(label_column) + "\"";
    out += ",\n  \"labels\": [";
    for (std::size_t r = 0; r < labels.size(); ++r) {
      if (r) out += ", ";
      out += '"' + json_escape(labels[r]) + '"';
    }
    out += ']';
  }
  if (with_flags) {
    out += ",\n  \"flags\": [";
    for (std::size_t r = 0; r < flags.size(); ++r) {
      if (r) out += ", ";
      out += '"' + json_escape(flags[r].empty() ? "-" : flags[r]) + '"';
    }
    out += ']';
  }
  out += "\n}\n";
  return out;
}

Table Table::from_csv(const std::string& text) {
  Table t;
  std::stringstream ss(text);
  std::string line;
  if (!std::getline(ss, line)) {
    throw std::invalid_argument("Table::from_csv: empty input");
  }
  auto header = split(line, ',');
  bool with_flags = !header.empty() && header.back() == "flags";
  if (with_flags) header.pop_back();

  // the label column, when present, is the leftmost and non-numeric; detect
  // it from the first data row
  std::vector<std::string> pending;
  bool with_labels = false;
  std::streampos after_header = ss.tellg();
  if (std::getline(ss, line) && !line.empty()) {
    const auto cells = split(line, ',');
    if (!cells.empty()) {
      try {
        (void)parse_value(cells.front());
      } catch (const std::exception&) {
        with_labels = true;
      }
    }
  }
  ss.clear();
  ss.seekg(after_header);

  if (with_labels) {
    t.label_column = header.front();
    header.erase(header.begin());
  }
  t.columns = header;

  while (std::getline(ss, line)) {
    if (line.empty()) continue;
    auto cells = split(line, ',');
    const std::size_t want =
        t.columns.size() + (with_flags ? 1 : 0) + (with_labels ? 1 : 0);
    if (cells.size() != want) {
      throw std::invalid_argument("Table::from_csv: ragged row");
    }
    std::string label;
    std::size_t offset = 0;
    if (with_labels) {
      label = cells.front();
      offset = 1;
    }
    std::vector<double> values(t.columns.size());
    for (std::size_t c = 0; c < t.columns.size(); ++c) {
      values[c] = parse_value(cells[c + offset]);
    }
    if (with_labels) {
      t.add_labeled_row(std::move(label), std::move(values),
                        with_flags ? cells.back() : "-");
    } else {
      t.add_row(std::move(values), with_flags ? cells.back() : "-");
    }
  }
  return t;
}

Table Table::from_json(const std::string& text) {
  const nlohmann::json j = nlohmann::json::parse(text);
  Table t;
  t.columns = j.at("columns").get<std::vector<std::string>>();
  if (j.contains("label_column")) {
    t.label_column = j.at("label_column").get<std::string>();
  }
  for (const auto& row : j.at("rows")) {
    std::vector<double> values;
    values.reserve(row.size());
    for (const auto& cell : row) {
      if (cell.is_string()) {
        values.push_back(parse_value(cell.get<std::string>()));
      } else {
        values.push_back(cell.get<double>());
      }
    }
    t.add_row(std::move(values));
  }
  if (j.contains("labels")) {
    t.labels = j.at("labels").get<std::vector<std::string>>();
    if (t.labels.size() != t.rows.size()) {
      throw std::invalid_argument("Table::from_json: labels/rows mismatch");
    }
  }
  if (j.contains("flags")) {
    t.flags = j.at("flags").get<std::vector<std::string>>();
    if (t.flags.size() != t.rows.size()) {
      throw std::invalid_argument("Table::from_json: flags/rows mismatch");
    }
  }
  return t;
}

}  // namespace qtherm
