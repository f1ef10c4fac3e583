// SPDX-License-Identifier: Apache-2.0
//
// Small tabular dataset with CSV and JSON encodings. Numeric fields render
// with 17 significant digits in both formats so the two encodings carry
// identical values and survive a parse round trip bit-exactly. Non-finite
// values render as "inf", "-inf", "nan".

#pragma once

#include <string>
#include <vector>

namespace qtherm {

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  /// Optional per-row tags (e.g. "saturated", "qcrb-inf", "argmax"); "-"
  /// marks an untagged row. Emitted as a trailing "flags" column when any
  /// row carries one.
  std::vector<std::string> flags;
  /// Optional leading text column (e.g. a suite or series name per row).
  std::string label_column;
  std::vector<std::string> labels;

  void add_row(std::vector<double> values, std::string flag = "-");
  void add_labeled_row(std::string label, std::vector<double> values,
                       std::string flag = "-");
  bool has_flags() const;
  bool has_labels() const { return !label_column.empty(); }

  std::string to_csv() const;
  std::string to_json() const;

  static Table from_csv(const std::string& text);
  static Table from_json(const std::string& text);
};

/// "%.17g" with textual "inf"/"-inf"/"nan" for non-finite values.
std::string format_value(double v);
double parse_value(const std::string& s);

}  // namespace qtherm
