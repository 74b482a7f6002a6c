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

#include "mzi/series.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "mzi/errors.hpp"
#include "mzi/number_format.hpp"

namespace mzi {

void Metadata::set(const std::string& key, const std::string& value) {
  if (key.empty() || key.find_first_of("=\n") != std::string::npos ||
      value.find('\n') != std::string::npos) {
    throw InvalidArgument("metadata key/value must be single-line, key without '='");
  }
  for (auto& [k, v] : entries_) {
    if (k == key) {
      v = value;
      return;
    }
  }
  entries_.emplace_back(key, value);
}

void Metadata::set(const std::string& key, double value) {
  set(key, format_double(value));
}

void Metadata::set(const std::string& key, long long value) {
  set(key, std::to_string(value));
}

std::optional<std::string> Metadata::get(const std::string& key) const {
  for (const auto& [k, v] : entries_) {
    if (k == key) return v;
  }
  return std::nullopt;
}

std::optional<double> Metadata::get_double(const std::string& key) const {
  const auto v = get(key);
  if (!v) return std::nullopt;
  return parse_double(*v);
}

void validate(const ObservableSeries& series) {
  constexpr double kSlack = 1e-9;
  if (series.times.empty()) throw InvalidArgument("series has no time points");
  if (series.times.front() != 0.0) throw InvalidArgument("series must start at t = 0");
  for (std::size_t k = 1; k < series.times.size(); ++k) {
    if (!(series.times[k] > series.times[k - 1])) {
      throw InvalidArgument("series times must increase strictly");
    }
  }
  if (series.stars.size() != series.times.size()) {
    throw InvalidArgument("star rows do not match time points");
  }
  if (series.has_plaquettes() && series.plaquettes.size() != series.times.size()) {
    throw InvalidArgument("plaquette rows do not match time points");
  }
  auto check_rows = [&](const std::vector<std::vector<double>>& rows, std::size_t width) {
    for (const auto& row : rows) {
      if (row.size() != width) throw InvalidArgument("ragged expectation rows");
      for (double v : row) {
        if (!(std::abs(v) <= 1.0 + kSlack)) {
          throw InvalidArgument("expectation value outside [-1, 1]");
        }
      }
    }
  };
  check_rows(series.stars, static_cast<std::size_t>(series.n_stars()));
  if (series.has_plaquettes()) {
    check_rows(series.plaquettes, static_cast<std::size_t>(series.n_stars() + 1));
  }
}

void write_csv(std::ostream& os, const ObservableSeries& series) {
  const int stars = series.n_stars();
  for (const auto& [k, v] : series.metadata.entries()) os << "# " << k << '=' << v << '\n';
  os << "time";
  for (int s = 1; s <= stars; ++s) os << ",A" << s;
  for (int p = 1; p <= stars + 1; ++p) os << ",B" << p;
  os << '\n';
  for (std::size_t k = 0; k < series.times.size(); ++k) {
    os << format_double(series.times[k]);
    for (double v : series.stars[k]) os << ',' << format_double(v);
    for (int p = 0; p <= stars; ++p) {
      os << ',';
      if (series.has_plaquettes()) os << format_double(series.plaquettes[k][p]);
    }
    os << '\n';
  }
}

namespace {

std::vector<std::string> split_commas(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream is(line);
  while (std::getline(is, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

}  // namespace

ObservableSeries read_csv(std::istream& is) {
  ObservableSeries series;
  std::string line;
  int line_no = 0;
  int stars = -1;
  std::optional<bool> with_plaquettes;
  auto fail = [&](const std::string& what) {
    throw IoError("CSV line " + std::to_string(line_no) + ": " + what);
  };
  while (std::getline(is, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line.starts_with("#")) {
      if (stars >= 0) fail("metadata after header");
      std::string body = line.substr(1);
      if (!body.empty() && body.front() == ' ') body.erase(0, 1);
      const auto eq = body.find('=');
      if (eq == std::string::npos || eq == 0) fail("metadata line without key=value");
      series.metadata.set(body.substr(0, eq), body.substr(eq + 1));
      continue;
    }
    const auto cells = split_commas(line);
    if (stars < 0) {
      if (cells.empty() || cells[0] != "time") fail("header must start with 'time'");
      const int rest = static_cast<int>(cells.size()) - 1;
      if (rest < 3 || (rest - 1) % 2 != 0) fail("header needs A1..AL,B1..B(L+1)");
      stars = (rest - 1) / 2;
      for (int s = 1; s <= stars; ++s) {
        if (cells[s] != "A" + std::to_string(s)) fail("expected column A" + std::to_string(s));
      }
      for (int p = 1; p <= stars + 1; ++p) {
        if (cells[stars + p] != "B" + std::to_string(p)) {
          fail("expected column B" + std::to_string(p));
        }
      }
      continue;
    }
    if (static_cast<int>(cells.size()) != 2 * stars + 2) fail("wrong number of cells");
    auto number = [&](const std::string& cell) {
      const auto v = parse_double(cell);
      if (!v) fail("not a number: '" + cell + "'");
      return *v;
    };
    series.times.push_back(number(cells[0]));
    std::vector<double> a;
    for (int s = 1; s <= stars; ++s) a.push_back(number(cells[s]));
    series.stars.push_back(std::move(a));
    bool blank = true;
    bool full = true;
    for (int p = 1; p <= stars + 1; ++p) {
      (cells[stars + p].empty() ? full : blank) = false;
    }
    if (!blank && !full) fail("plaquette cells partially blank");
    if (with_plaquettes && *with_plaquettes != full) fail("plaquette columns inconsistent");
    with_plaquettes = full;
    if (full) {
      std::vector<double> b;
      for (int p = 1; p <= stars + 1; ++p) b.push_back(number(cells[stars + p]));
      series.plaquettes.push_back(std::move(b));
    }
  }
  if (stars < 0) throw IoError("CSV has no header");
  if (series.times.empty()) throw IoError("CSV has no data rows");
  try {
    validate(series);
  } catch (const InvalidArgument& e) {
    throw IoError(std::string("CSV content: ") + e.what());
  }
  return series;
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw IoError("cannot open " + tmp.string() + " for writing");
    os << text;
    os.flush();
    if (!os) throw IoError("write to " + tmp.string() + " failed");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw IoError("cannot move output into place at " + path.string());
  }
}

void write_csv_file(const std::filesystem::path& path, const ObservableSeries& series) {
  std::ostringstream os;
  write_csv(os, series);
  write_text_file(path, os.str());
}

ObservableSeries read_csv_file(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot open " + path.string());
  return read_csv(is);
}

}  // namespace mzi
