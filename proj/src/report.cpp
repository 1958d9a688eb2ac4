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

#include "unravel/report.hpp"

#include <ostream>
#include <sstream>

namespace unravel {

bool Report::pass() const {
  for (const auto& row : rows) {
    if (!row.pass) return false;
  }
  return true;
}

void Report::add_state_row(double time, const std::string& a, const std::string& b,
                           double value, double threshold) {
  ReportRow row;
  row.kind = "state";
  row.has_time = true;
  row.time = time;
  row.a = a;
  row.b = b;
  row.name = "-";
  row.value = value;
  row.threshold = threshold;
  row.pass = value <= threshold;
  rows.push_back(std::move(row));
}

void Report::add_observable_row(double time, const std::string& method, const std::string& name,
                                double value, double threshold) {
  ReportRow row;
  row.kind = "observable";
  row.has_time = true;
  row.time = time;
  row.a = method;
  row.b = "oracle";
  row.name = name;
  row.value = value;
  row.threshold = threshold;
  row.pass = value <= threshold;
  rows.push_back(std::move(row));
}

void Report::add_scalar_row(const std::string& name, double value, double threshold,
                            bool pass_flag) {
  ReportRow row;
  row.kind = "scalar";
  row.a = "-";
  row.b = "-";
  row.name = name;
  row.value = value;
  row.threshold = threshold;
  row.pass = pass_flag;
  rows.push_back(std::move(row));
}

void Report::append(const Report& other) {
  rows.insert(rows.end(), other.rows.begin(), other.rows.end());
}

std::string format_double(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

void write_report(const Report& report, std::ostream& out) {
  out << "# " << report.title << "\n";
  for (const auto& line : report.echo) out << "# " << line << "\n";
  out << "# columns: kind time a b name value threshold status\n";
  for (const auto& row : report.rows) {
    out << row.kind << ' ';
    if (row.has_time) {
      out << format_double(row.time);
    } else {
      out << '-';
    }
    out << ' ' << row.a << ' ' << row.b << ' ' << row.name << ' ' << format_double(row.value)
        << ' ' << format_double(row.threshold) << ' ' << (row.pass ? "PASS" : "FAIL") << "\n";
  }
  out << "RESULT " << (report.pass() ? "PASS" : "FAIL") << "\n";
}

}  // namespace unravel
