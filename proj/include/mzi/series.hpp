// Copyright 2026 The mzi Authors
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

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace mzi {

// Ordered key/value run parameters; written as "# key=value" lines.
class Metadata {
 public:
  void set(const std::string& key, const std::string& value);
  void set(const std::string& key, double value);
  void set(const std::string& key, long long value);
  void set(const std::string& key, int value) { set(key, static_cast<long long>(value)); }
  void set(const std::string& key, const char* value) { set(key, std::string(value)); }

  std::optional<std::string> get(const std::string& key) const;
  std::optional<double> get_double(const std::string& key) const;

  const std::vector<std::pair<std::string, std::string>>& entries() const {
    return entries_;
  }
  bool operator==(const Metadata&) const = default;

 private:
  std::vector<std::pair<std::string, std::string>> entries_;
};

// Expectation values on a time grid. stars[k][s-1] is <A_s> at times[k];
// plaquettes is empty when the run could not measure them (shot sampling).
struct ObservableSeries {
  std::vector<double> times;
  std::vector<std::vector<double>> stars;
  std::vector<std::vector<double>> plaquettes;
  Metadata metadata;

  int n_stars() const { return stars.empty() ? 0 : static_cast<int>(stars.front().size()); }
  bool has_plaquettes() const { return !plaquettes.empty(); }
  std::size_t size() const { return times.size(); }

  bool operator==(const ObservableSeries&) const = default;
};

// Throws InvalidArgument unless times start at 0 and increase strictly, rows
// have consistent widths and every value lies in [-1 - 1e-9, 1 + 1e-9].
void validate(const ObservableSeries& series);

// CSV: metadata lines, then "time,A1..AL,B1..B(L+1)". B cells are blank when
// the series has no plaquette data. Numbers use the shortest round-trip form.
void write_csv(std::ostream& os, const ObservableSeries& series);
// Throws IoError on schema violations.
ObservableSeries read_csv(std::istream& is);

// Writes through a temporary file in the same directory and renames it, so a
// reader never sees a partial file. Throws IoError.
void write_csv_file(const std::filesystem::path& path, const ObservableSeries& series);
ObservableSeries read_csv_file(const std::filesystem::path& path);

// Atomic write of arbitrary text. Throws IoError.
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace mzi
