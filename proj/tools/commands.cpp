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


#include "commands.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "mzi/calibration.hpp"
#include "mzi/dynamics.hpp"
#include "mzi/errors.hpp"
#include "mzi/number_format.hpp"
#include "mzi/parallel.hpp"
#include "mzi/series.hpp"

namespace mzi::cli {

namespace {

LadderModel make_model(const ModelOptions& m) {
  return build_ladder(m.stars, m.lambda, m.gamma_field);
}

BathKind bath_kind(const std::string& name) {
  const auto kind = parse_bath(name);
  if (!kind) throw UsageError("unknown bath '" + name + "' (isotropic, z_only)");
  return *kind;
}

std::optional<int> parse_spinon(const std::string& text) {
  if (text == "none") return std::nullopt;
  const auto value = parse_double(text);
  if (!value || *value != std::floor(*value)) {
    throw UsageError("spinon must be a star index or 'none', got '" + text + "'");
  }
  return static_cast<int>(*value);
}

// The "visons" metadata value: "none" or plaquettes joined by ';'.
std::vector<int> parse_vison_list(const std::string& text) {
  std::vector<int> out;
  if (text == "none") return out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ';')) {
    const auto value = parse_double(item);
    if (!value || *value != std::floor(*value)) {
      throw IoError("malformed visons metadata '" + text + "'");
    }
    out.push_back(static_cast<int>(*value));
  }
  return out;
}

void emit(const ObservableSeries& series, const std::string& output) {
  if (output == "-") {
    write_csv(std::cout, series);
    std::cout.flush();
    if (!std::cout) throw IoError("write to standard output failed");
  } else {
    write_csv_file(output, series);
  }
}

std::string config_tag(const VisonConfig& v) {
  const auto occupied = v.occupied();
  if (occupied.empty()) return "no-vison";
  std::string tag = "vison";
  for (int p : occupied) tag += "-" + std::to_string(p);
  return tag;
}

double mean_star_deviation(const ObservableSeries& a, const ObservableSeries& b) {
  double sum = 0.0;
  std::size_t count = 0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    for (int s = 0; s < a.n_stars(); ++s) {
      sum += std::abs(a.stars[k][s] - b.stars[k][s]);
      ++count;
    }
  }
  return sum / static_cast<double>(count);
}

// Manifest descriptions are free text in a two-column CSV.
std::string csv_cell(std::string text) {
  for (char& c : text) {
    if (c == ',') c = ';';
  }
  return text;
}

struct Job {
  std::string file;
  std::string description;
  std::function<ObservableSeries()> run;
};

}  // namespace

std::vector<double> parse_grid(const std::string& text) {
  auto number = [&](const std::string& s) {
    const auto v = parse_double(s);
    if (!v || !std::isfinite(*v)) throw UsageError("malformed grid value '" + s + "'");
    return *v;
  };
  std::vector<double> out;
  if (text.find(':') != std::string::npos) {
    std::stringstream ss(text);
    std::vector<std::string> parts;
    std::string part;
    while (std::getline(ss, part, ':')) parts.push_back(part);
    if (parts.size() != 3) throw UsageError("range grid must read start:step:stop");
    const double start = number(parts[0]), step = number(parts[1]), stop = number(parts[2]);
    if (!(step > 0.0) || stop < start) throw UsageError("range grid needs step > 0 and stop >= start");
    const auto count = static_cast<long long>(std::floor((stop - start) / step + 1e-9));
    if (count > 100000) throw UsageError("range grid is too long");
    for (long long k = 0; k <= count; ++k) {
      // Round to 12 significant digits so 0.006 + 2 * 0.001 prints and
      // compares as 0.008.
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.12g", start + static_cast<double>(k) * step);
      out.push_back(number(buf));
    }
  } else {
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (item.find_first_not_of(' ') == std::string::npos) continue;
      out.push_back(number(item));
    }
  }
  if (out.empty()) throw UsageError("gamma grid is empty");
  return out;
}

void simulate(const SimulateOptions& o) {
  const LadderModel model = make_model(o.model);
  QuenchSpec spec{parse_spinon(o.spinon), VisonConfig::at(model.stars(), o.visons),
                  o.total_time, o.trotter_steps};
  validate(spec, model);
  PrepLayout layout;
  if (o.layout == "string-sector") {
    layout = PrepLayout::kStringSector;
  } else if (o.layout == "column-pairs") {
    layout = PrepLayout::kColumnPairs;
  } else {
    throw UsageError("unknown layout '" + o.layout + "' (string-sector, column-pairs)");
  }
  if (o.grid && *o.grid < 1) throw UsageError("--grid needs at least one interval");
  if (o.grid && (o.method == "trotter" || o.method == "sampled")) {
    throw UsageError("--grid applies to exact and lindblad runs; trotter and sampled runs "
                     "report the t_k = kT/n grid");
  }
  const std::vector<double> times =
      o.grid ? uniform_grid(o.total_time, *o.grid) : trotter_grid(o.total_time, o.trotter_steps);

  ObservableSeries series;
  if (o.method == "exact") {
    series = evolve_exact(model, prepare_state(model, spec, layout), times);
    describe_run(series.metadata, model, spec);
  } else if (o.method == "trotter") {
    series = evolve_trotter(model, spec, layout);
  } else if (o.method == "sampled") {
    if (layout != PrepLayout::kStringSector) {
      throw UsageError("sampled runs use the string-sector layout");
    }
    std::uint64_t seed = o.seed;
    if (o.seedless) seed = (std::uint64_t{std::random_device{}()} << 32) ^ std::random_device{}();
    series = evolve_sampled(model, spec, o.shots, seed, o.workers);
  } else if (o.method == "lindblad") {
    LindbladOptions options;
    options.step = o.rk4_h;
    options.verify_step = o.verify_step;
    const LindbladRun run =
        evolve_lindblad(model, MixedInit{o.fidelity, prepare_state(model, spec, layout)},
                        BathSpec{o.bath_gamma, bath_kind(o.bath)}, times, options);
    series = run.series;
    Metadata quench;
    describe_run(quench, model, spec);
    series.metadata.set("spinon", *quench.get("spinon"));
    series.metadata.set("visons", *quench.get("visons"));
    series.metadata.set("total_time", spec.total_time);
  } else {
    throw UsageError("unknown method '" + o.method + "' (exact, trotter, sampled, lindblad)");
  }
  if (layout == PrepLayout::kColumnPairs) series.metadata.set("layout", "column-pairs");
  emit(series, o.output);
}

int calibrate_trotter(const CalibrateOptions& o) {
  if (!(o.threshold > 0.0 && o.threshold <= 2.0)) {
    throw UsageError("--threshold must lie in (0, 2]");
  }
  if (o.n_max < 1) throw UsageError("--n-max must be at least 1");
  const LadderModel model = make_model(o.model);
  const auto table = trotter_error_table(model, o.total_time, o.n_max, o.workers);
  write_text_file(o.output, to_csv(table));
  for (const auto& r : table) {
    std::cout << "n = " << r.n << "  error = " << format_double(r.error)
              << "  peak_star_error = " << format_double(r.peak_star_error) << '\n';
  }
  const int n_opt = select_optimal(table, o.threshold);
  if (n_opt < 0) {
    throw NumericalError("threshold unreachable: no n <= " + std::to_string(o.n_max) +
                         " has error below " + format_double(o.threshold));
  }
  std::cout << "n_opt = " << n_opt << '\n';
  return n_opt;
}

double fit_gamma(const FitOptions& o) {
  const std::vector<double> grid = parse_grid(o.grid);
  if (o.references.empty()) throw UsageError("at least one --reference is required");
  const LadderModel model = make_model(o.model);
  std::vector<FitTarget> targets;
  for (const auto& path : o.references) {
    ObservableSeries ref = read_csv_file(path);
    // The quench a reference belongs to comes from its metadata; files
    // without it are read as the spinon-on-star-1, vison-free quench.
    QuenchSpec spec{1, VisonConfig::none(model.stars())};
    if (auto s = ref.metadata.get("spinon")) {
      try {
        spec.spinon_star = parse_spinon(*s);
      } catch (const UsageError& e) {
        throw IoError(path + ": " + e.what());
      }
    }
    if (ref.n_stars() != model.stars()) {
      throw InvalidArgument("time-grid mismatch: " + path + " has " +
                            std::to_string(ref.n_stars()) + " star columns, the model has " +
                            std::to_string(model.stars()));
    }
    if (auto v = ref.metadata.get("visons")) {
      spec.visons = VisonConfig::at(model.stars(), parse_vison_list(*v));
    }
    targets.push_back({spec, std::move(ref)});
  }
  LindbladOptions options;
  options.step = o.rk4_h;
  const GammaFitReport report =
      mzi::fit_gamma(targets, model, o.fidelity, bath_kind(o.bath), grid, options, o.workers);
  write_text_file(o.output, to_csv(report));
  for (std::size_t i = 0; i < report.grid.size(); ++i) {
    std::cout << "gamma = " << format_double(report.grid[i])
              << "  error = " << format_double(report.errors[i]) << '\n';
  }
  std::cout << "best_gamma = " << format_double(report.best_gamma) << '\n';
  return report.best_gamma;
}

const std::vector<std::string>& figure_names() {
  static const std::vector<std::string> names{"fig2-upper", "fig2-lower", "supp-trotter",
                                              "supp-gamma", "supp-zbath"};
  return names;
}

std::vector<std::filesystem::path> reproduce(const ReproduceOptions& o) {
  bool known = false;
  for (const auto& n : figure_names()) known = known || n == o.figure;
  if (!known) throw UsageError("unknown figure '" + o.figure + "'");

  const std::filesystem::path dir = o.output_dir.empty() ? o.figure : o.output_dir;
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());

  const LadderModel model = build_ladder(3);
  const double total_time = 10.0;
  const int steps = 8;
  const auto quenches = reference_quenches(model, total_time, steps);
  const auto fine_exact = uniform_grid(total_time, 200);
  const auto fine_open = uniform_grid(total_time, 100);
  LindbladOptions options;
  options.step = o.rk4_h;

  auto lindblad_job = [&](const QuenchSpec& q, BathSpec bath, double p,
                          const std::vector<double>& times) {
    return [&model, q, bath, p, times, options]() {
      ObservableSeries s =
          evolve_lindblad(model, MixedInit{p, prepare_state(model, q)}, bath, times, options)
              .series;
      Metadata quench;
      describe_run(quench, model, q);
      s.metadata.set("spinon", *quench.get("spinon"));
      s.metadata.set("visons", *quench.get("visons"));
      return s;
    };
  };

  std::vector<Job> jobs;
  std::vector<std::pair<std::string, std::string>> extra;  // file, text
  std::vector<std::string> extra_descriptions;

  if (o.figure == "fig2-upper") {
    for (const auto& q : quenches) {
      jobs.push_back({"exact_" + config_tag(q.visons) + ".csv", "exact evolution",
                      [&model, q, &fine_exact] { return evolve_exact(model, q, fine_exact); }});
    }
    for (const auto& q : quenches) {
      jobs.push_back({"trotter_" + config_tag(q.visons) + ".csv", "trotter n=8",
                      [&model, q] { return evolve_trotter(model, q); }});
    }
  } else if (o.figure == "fig2-lower") {
    for (const auto& q : quenches) {
      jobs.push_back({"sampled_" + config_tag(q.visons) + ".csv",
                      "trotter n=8, " + std::to_string(o.shots) + " shots",
                      [&model, q, &o] { return evolve_sampled(model, q, o.shots, o.seed); }});
    }
    for (const auto& q : quenches) {
      jobs.push_back({"lindblad_" + config_tag(q.visons) + ".csv",
                      "lindblad isotropic gamma=0.008 p=0.85",
                      lindblad_job(q, {0.008, BathKind::kIsotropic}, 0.85, fine_open)});
    }
  } else if (o.figure == "supp-gamma") {
    for (double g : {0.006, 0.008, 0.010}) {
      jobs.push_back({"lindblad_gamma-" + format_double(g) + ".csv",
                      "lindblad isotropic p=0.85, " + config_tag(quenches[2].visons),
                      lindblad_job(quenches[2], {g, BathKind::kIsotropic}, 0.85, fine_open)});
    }
  } else if (o.figure == "supp-zbath") {
    for (const auto& q : quenches) {
      jobs.push_back({"reference_isotropic_" + config_tag(q.visons) + ".csv",
                      "lindblad isotropic gamma=0.008 p=0.85",
                      lindblad_job(q, {0.008, BathKind::kIsotropic}, 0.85,
                                   trotter_grid(total_time, steps))});
    }
    for (const auto& q : quenches) {
      jobs.push_back({"lindblad_z_only_" + config_tag(q.visons) + ".csv",
                      "lindblad z_only gamma=0.05 p=0.85",
                      lindblad_job(q, {0.05, BathKind::kZOnly}, 0.85, fine_open)});
    }
  }

  const auto results =
      parallel_map(jobs.size(), o.workers, [&](std::size_t i) { return jobs[i].run(); });

  if (o.figure == "supp-trotter") {
    const auto table = trotter_error_table(model, total_time, 16, o.workers);
    std::ostringstream os;
    os << "n,error,peak_star_error\n";
    for (const auto& r : table) {
      os << r.n << ',' << format_double(r.error) << ',' << format_double(r.peak_star_error)
         << '\n';
    }
    extra.push_back({"trotter_error.csv", os.str()});
    extra_descriptions.push_back("trotter error for n = 1..16, threshold 0.15 gives n_opt = " +
                                 std::to_string(select_optimal(table, 0.15)));
  } else if (o.figure == "supp-gamma") {
    std::ostringstream os;
    os << "gamma,residual\n";
    const double grid[] = {0.006, 0.008, 0.010};
    for (std::size_t i = 0; i < 3; ++i) {
      os << format_double(grid[i]) << ',' << format_double(mean_star_deviation(results[i], results[1]))
         << '\n';
    }
    extra.push_back({"residuals.csv", os.str()});
    extra_descriptions.push_back("mean |A_s| deviation from the gamma=0.008 curve");
  } else if (o.figure == "supp-zbath") {
    std::vector<FitTarget> targets;
    for (std::size_t i = 0; i < quenches.size(); ++i) targets.push_back({quenches[i], results[i]});
    const GammaFitReport z = mzi::fit_gamma(targets, model, 0.85, BathKind::kZOnly,
                                            {0.03, 0.04, 0.05, 0.06, 0.07}, options, o.workers);
    const GammaFitReport iso = mzi::fit_gamma(targets, model, 0.85, BathKind::kIsotropic,
                                              {0.006, 0.008, 0.010}, options, o.workers);
    extra.push_back({"fit_z_only.csv", to_csv(z)});
    extra_descriptions.push_back("z_only fit against the isotropic reference, best gamma = " +
                                 format_double(z.best_gamma));
    extra.push_back({"fit_isotropic.csv", to_csv(iso)});
    extra_descriptions.push_back("isotropic fit against the isotropic reference, best gamma = " +
                                 format_double(iso.best_gamma));
  }

  std::vector<std::filesystem::path> written;
  std::ostringstream manifest;
  manifest << "file,description\n";
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    write_csv_file(dir / jobs[i].file, results[i]);
    written.push_back(dir / jobs[i].file);
    manifest << jobs[i].file << ',' << csv_cell(jobs[i].description) << '\n';
  }
  for (std::size_t i = 0; i < extra.size(); ++i) {
    write_text_file(dir / extra[i].first, extra[i].second);
    written.push_back(dir / extra[i].first);
    manifest << extra[i].first << ',' << csv_cell(extra_descriptions[i]) << '\n';
  }
  write_text_file(dir / "manifest.csv", manifest.str());
  written.push_back(dir / "manifest.csv");
  return written;
}

}  // namespace mzi::cli
