// Copyright 2026 The bernmix Authors
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

// bernmix: fit, evaluate, sample and benchmark beta-mixture density models.
//
// Subcommands:
//   fit       CSV data -> model JSON (+ fit report)
//   select    CSV data -> per-dimension degree selection JSON
//   eval      model JSON -> CSV grid of density/CDF values
//   sample    model JSON -> CSV of draws
//   simulate  Monte Carlo benchmark -> study JSON + text table
//
// Exit codes: 0 success, 1 runtime/fit failure, 2 usage error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "bernmix/bernmix.hpp"

namespace {

using namespace bernmix;

struct BoxSpec {
  bool automatic = true;
  double margin = 0.05;
  std::vector<double> bounds;  // a1,b1,a2,b2,... when explicit
};

// "auto", "auto:0.1", or "a1,b1,a2,b2,..."
BoxSpec parse_box(const std::string& text) {
  BoxSpec spec;
  if (text == "auto") return spec;
  if (text.rfind("auto:", 0) == 0) {
    spec.margin = std::stod(text.substr(5));
    return spec;
  }
  spec.automatic = false;
  std::stringstream ss(text);
  std::string cell;
  while (std::getline(ss, cell, ','))
    spec.bounds.push_back(std::stod(cell));
  if (spec.bounds.empty() || spec.bounds.size() % 2 != 0)
    throw CLI::ValidationError(
        "--box", "expected 'auto', 'auto:<margin>' or an even list "
                 "a1,b1,a2,b2,...");
  return spec;
}

SupportBox resolve_box(const BoxSpec& spec, const Dataset& data) {
  if (spec.automatic) return auto_box(data, spec.margin);
  const std::size_t d = spec.bounds.size() / 2;
  if (d != data.dimension())
    throw domain_error("--box lists " + std::to_string(d) +
                       " dimensions but the data has " +
                       std::to_string(data.dimension()));
  std::vector<double> lo(d), hi(d);
  for (std::size_t j = 0; j < d; ++j) {
    lo[j] = spec.bounds[2 * j];
    hi[j] = spec.bounds[2 * j + 1];
  }
  return SupportBox(std::move(lo), std::move(hi));
}

std::vector<int> parse_degrees(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(std::stoi(cell));
  return out;
}

struct CommonFitFlags {
  std::string box_text = "auto";
  double tol = FitConfig{}.tol;
  int max_iters = FitConfig{}.max_iters;
  double boundary_eps = FitConfig{}.boundary_eps;
  bool no_header = false;

  FitConfig config() const {
    FitConfig c;
    c.tol = tol;
    c.max_iters = max_iters;
    c.boundary_eps = boundary_eps;
    return c;
  }
};

void add_fit_flags(CLI::App* cmd, CommonFitFlags& flags) {
  cmd->add_option("--box", flags.box_text,
                  "support box: 'auto', 'auto:<margin>' or a1,b1,a2,b2,...")
      ->capture_default_str();
  cmd->add_option("--tol", flags.tol, "EM relative log-likelihood tolerance")
      ->capture_default_str();
  cmd->add_option("--max-iters", flags.max_iters, "EM iteration cap")
      ->capture_default_str();
  cmd->add_option("--boundary-eps", flags.boundary_eps,
                  "clamp width applied to transformed data")
      ->capture_default_str();
  cmd->add_flag("--no-header", flags.no_header,
                "input CSV has no header row");
}

int cmd_fit(const std::string& input, const std::string& output,
            const std::string& report_path, const CommonFitFlags& flags,
            const std::string& degrees_text, int grid_count) {
  const Dataset raw = read_csv_file(input, !flags.no_header);
  if (raw.size() == 0) throw io_error(input + ": no data rows");
  const SupportBox box = resolve_box(parse_box(flags.box_text), raw);
  const Dataset unit = to_unit(raw, box);
  const FitConfig config = flags.config();

  DegreeVector degrees({1});
  if (degrees_text == "auto") {
    SelectConfig select;
    select.grid_count = grid_count;
    select.fit = config;
    degrees = select_degrees(unit.clamped_to_unit(config.boundary_eps),
                             select)
                  .chosen();
  } else {
    degrees = DegreeVector(parse_degrees(degrees_text));
  }

  auto [coeffs, report] = fit_fixed_degree(degrees, unit, config);
  if (report.n_below_recommended)
    std::cerr << "warning: n < K - 1; the likelihood may have multiple "
                 "maximizers\n";
  if (!report.converged)
    std::cerr << "warning: EM hit the iteration cap before converging\n";

  BernsteinModel model(degrees, std::move(coeffs), box);
  write_text_file(output, write_model_json(
                              model, write_provenance_json(raw.size(),
                                                           config)));
  if (!report_path.empty())
    write_text_file(report_path, write_report_json(report));
  std::cerr << "fit: n=" << raw.size() << " degrees=";
  for (std::size_t j = 0; j < degrees.dimension(); ++j)
    std::cerr << (j ? "," : "") << degrees[j];
  std::cerr << " loglik=" << report.final_loglik
            << " iterations=" << report.iterations << "\n";
  return 0;
}

int cmd_select(const std::string& input, const std::string& output,
               const CommonFitFlags& flags, int grid_count,
               std::optional<int> grid_base) {
  const Dataset raw = read_csv_file(input, !flags.no_header);
  if (raw.size() == 0) throw io_error(input + ": no data rows");
  const SupportBox box = resolve_box(parse_box(flags.box_text), raw);
  const FitConfig config = flags.config();
  const Dataset unit =
      to_unit(raw, box).clamped_to_unit(config.boundary_eps);

  DegreeSelection selection;
  if (grid_base) {
    std::vector<CandidateGrid> grids(
        raw.dimension(), CandidateGrid{*grid_base, grid_count});
    SelectConfig select;
    select.grid_count = grid_count;
    select.fit = config;
    selection = select_degrees(unit, select, grids);
  } else {
    SelectConfig select;
    select.grid_count = grid_count;
    select.fit = config;
    selection = select_degrees(unit, select);
  }
  write_text_file(output, write_selection_json(selection));
  std::cerr << "selected degrees:";
  for (const auto& dim : selection.dimensions)
    std::cerr << " " << dim.degree;
  std::cerr << "\n";
  return 0;
}

int cmd_eval(const std::string& model_path, const std::string& output,
             int grid, const std::string& points_path,
             const std::string& what, bool points_no_header) {
  const BernsteinModel model = read_model_file(model_path);
  const bool density = what == "density";
  if (!density && what != "cdf")
    throw domain_error("--what must be 'density' or 'cdf'");
  const std::size_t d = model.dimension();

  std::ofstream out(output, std::ios::binary);
  if (!out) throw io_error("cannot open '" + output + "' for writing");
  for (std::size_t j = 0; j < d; ++j) out << "x" << (j + 1) << ",";
  out << what << "\n";

  std::size_t outside = 0;
  auto emit = [&](std::span<const double> point) {
    double value = 0.0;
    if (model.support().contains(point)) {
      value = density ? model.density(point) : model.cdf(point);
    } else {
      ++outside;
    }
    for (std::size_t j = 0; j < d; ++j)
      out << format_real_short(point[j]) << ",";
    out << format_real_short(value) << "\n";
  };

  if (!points_path.empty()) {
    const Dataset pts = read_csv_file(points_path, !points_no_header);
    if (pts.dimension() != d)
      throw domain_error("points CSV dimension does not match the model");
    for (std::size_t i = 0; i < pts.size(); ++i) emit(pts.row(i));
  } else {
    if (grid < 2 || grid > 2048)
      throw domain_error("--grid resolution must be in 2..2048");
    // row-major over the box, inclusive endpoints
    const std::size_t r = static_cast<std::size_t>(grid);
    std::vector<std::size_t> idx(d, 0);
    std::vector<double> point(d);
    std::size_t cells = 1;
    for (std::size_t j = 0; j < d; ++j) cells *= r;
    for (std::size_t c = 0; c < cells; ++c) {
      for (std::size_t j = 0; j < d; ++j) {
        const double frac =
            static_cast<double>(idx[j]) / static_cast<double>(r - 1);
        point[j] = model.support().lower()[j] +
                   model.support().width(j) * frac;
      }
      emit(point);
      for (std::size_t j = d; j-- > 0;) {
        if (++idx[j] < r) break;
        idx[j] = 0;
      }
    }
  }
  if (outside > 0)
    std::cerr << "warning: " << outside
              << " point(s) outside the support box evaluated as 0\n";
  return 0;
}

int cmd_sample(const std::string& model_path, const std::string& output,
               std::size_t n, std::uint64_t seed) {
  const BernsteinModel model = read_model_file(model_path);
  const Dataset draws = model.sample(n, seed);
  std::ofstream out(output, std::ios::binary);
  if (!out) throw io_error("cannot open '" + output + "' for writing");
  std::vector<std::string> header;
  for (std::size_t j = 0; j < model.dimension(); ++j)
    header.push_back("x" + std::to_string(j + 1));
  write_csv(out, header, draws);
  return 0;
}

int cmd_simulate(const std::string& target_name, std::size_t n, int runs,
                 std::uint64_t seed, const std::string& output,
                 int grid_count, int threads) {
  TargetDistribution target = [&]() {
    if (target_name == "beta") return TargetDistribution::beta_product();
    if (target_name == "normal")
      return TargetDistribution::truncated_normal();
    if (target_name == "mn") return TargetDistribution::normal_mixture();
    if (target_name == "p88") return TargetDistribution::power88();
    throw domain_error("unknown target '" + target_name +
                       "' (expected beta, normal, mn or p88)");
  }();
  StudyConfig config;
  config.n = n;
  config.runs = runs;
  config.seed = seed;
  config.grid_count = grid_count;
  config.threads = threads;
  const StudyResult result = run_study(target, config);
  if (!output.empty()) write_text_file(output, write_study_json(result));
  std::cout << study_table(result);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"beta-mixture density estimation on box supports"};
  app.require_subcommand(1);
  app.set_version_flag("--version", BERNMIX_VERSION_STRING);

  int threads = static_cast<int>(std::thread::hardware_concurrency());
  if (threads < 1) threads = 1;
  app.add_option("--threads", threads,
                 "worker threads for Monte Carlo runs (results are "
                 "independent of this)")
      ->capture_default_str();

  // fit
  auto* fit = app.add_subcommand("fit", "fit a model to CSV data");
  std::string fit_in, fit_out, fit_report, fit_degrees = "auto";
  int fit_grid_count = 40;
  CommonFitFlags fit_flags;
  fit->add_option("-i,--input", fit_in, "input CSV")->required();
  fit->add_option("-o,--output", fit_out, "output model JSON")->required();
  fit->add_option("--report", fit_report, "also write a fit report JSON");
  fit->add_option("--degrees", fit_degrees,
                  "'auto' or per-dimension list m1,m2,...")
      ->capture_default_str();
  fit->add_option("--grid-count", fit_grid_count,
                  "candidate grid length for auto degrees")
      ->capture_default_str();
  add_fit_flags(fit, fit_flags);

  // select
  auto* select = app.add_subcommand("select", "degree selection only");
  std::string sel_in, sel_out;
  int sel_grid_count = 40;
  std::optional<int> sel_grid_base;
  CommonFitFlags sel_flags;
  select->add_option("-i,--input", sel_in, "input CSV")->required();
  select->add_option("-o,--output", sel_out, "output selection JSON")
      ->required();
  select->add_option("--grid-count", sel_grid_count, "candidate grid length")
      ->capture_default_str();
  select
      ->add_option("--grid-base", sel_grid_base,
                   "first candidate degree (default: moment lower bound)")
      ->check(CLI::PositiveNumber);
  add_fit_flags(select, sel_flags);

  // eval
  auto* eval = app.add_subcommand("eval", "evaluate density/CDF on a grid");
  std::string eval_model, eval_out, eval_points, eval_what = "density";
  int eval_grid = 64;
  bool eval_points_no_header = false;
  eval->add_option("-m,--model", eval_model, "model JSON")->required();
  eval->add_option("-o,--output", eval_out, "output CSV")->required();
  eval->add_option("--grid", eval_grid,
                   "grid resolution per axis (inclusive endpoints)")
      ->capture_default_str();
  eval->add_option("--points", eval_points,
                   "evaluate at CSV points instead of a grid");
  eval->add_option("--what", eval_what, "density | cdf")
      ->capture_default_str();
  eval->add_flag("--no-header", eval_points_no_header,
                 "points CSV has no header row");

  // sample
  auto* sample = app.add_subcommand("sample", "draw from a model");
  std::string sample_model_path, sample_out;
  std::size_t sample_n = 0;
  std::uint64_t sample_seed = 0;
  sample->add_option("-m,--model", sample_model_path, "model JSON")
      ->required();
  sample->add_option("-o,--output", sample_out, "output CSV")->required();
  sample->add_option("-n,--count", sample_n, "number of draws")->required();
  sample->add_option("--seed", sample_seed, "random seed")
      ->capture_default_str();

  // simulate
  auto* simulate =
      app.add_subcommand("simulate", "Monte Carlo benchmark study");
  std::string sim_target = "beta", sim_out;
  std::size_t sim_n = 100;
  int sim_runs = 100;
  std::uint64_t sim_seed = 0;
  int sim_grid_count = 40;
  simulate->add_option("--target", sim_target, "beta | normal | mn | p88")
      ->capture_default_str();
  simulate->add_option("-n,--size", sim_n, "sample size per run")
      ->capture_default_str();
  simulate->add_option("--runs", sim_runs, "Monte Carlo repetitions")
      ->capture_default_str();
  simulate->add_option("--seed", sim_seed, "master seed")
      ->capture_default_str();
  simulate->add_option("--grid-count", sim_grid_count,
                       "degree-selection grid length")
      ->capture_default_str();
  simulate->add_option("-o,--output", sim_out, "output study JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;  // usage error
  }

  try {
    if (*fit)
      return cmd_fit(fit_in, fit_out, fit_report, fit_flags, fit_degrees,
                     fit_grid_count);
    if (*select)
      return cmd_select(sel_in, sel_out, sel_flags, sel_grid_count,
                        sel_grid_base);
    if (*eval)
      return cmd_eval(eval_model, eval_out, eval_grid, eval_points,
                      eval_what, eval_points_no_header);
    if (*sample)
      return cmd_sample(sample_model_path, sample_out, sample_n,
                        sample_seed);
    if (*simulate)
      return cmd_simulate(sim_target, sim_n, sim_runs, sim_seed, sim_out,
                          sim_grid_count, threads);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
