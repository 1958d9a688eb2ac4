// Copyright 2026 The Unravel Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace unravel {

/// One check line: a measured discrepancy against its threshold.
struct ReportRow {
  std::string kind;  // "state", "observable" or "scalar"
  bool has_time = false;
  double time = 0.0;
  std::string a, b;  // the two sides of the comparison
  std::string name;  // observable or check name ("-" for plain state rows)
  double value = 0.0;
  double threshold = 0.0;
  bool pass = false;
};

struct Report {
  std::string title;
  std::vector<std::string> echo;  // header lines echoed into every output file
  std::vector<ReportRow> rows;

  bool pass() const;
  void add_state_row(double time, const std::string& a, const std::string& b, double value,
                     double threshold);
  void add_observable_row(double time, const std::string& method, const std::string& name,
                          double value, double threshold);
  void add_scalar_row(const std::string& name, double value, double threshold, bool pass_flag);
  void append(const Report& other);
};

/// Stable text layout: echoed header, one whitespace-separated row per check,
/// final "RESULT PASS|FAIL" line.
void write_report(const Report& report, std::ostream& out);

/// Formats a double with 17 significant digits (round-trip exact, so output
/// files are byte-identical across runs).
std::string format_double(double v);

}  // namespace unravel
