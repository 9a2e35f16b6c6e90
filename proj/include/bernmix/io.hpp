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

#ifndef BERNMIX_IO_HPP
#define BERNMIX_IO_HPP

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "bernmix/dataset.hpp"
#include "bernmix/degree_select.hpp"
#include "bernmix/em.hpp"
#include "bernmix/errors.hpp"
#include "bernmix/model.hpp"
#include "bernmix/simbench.hpp"
#include "bernmix/version.hpp"

namespace bernmix {

inline constexpr int kModelFormatVersion = 1;

// ---------------------------------------------------------------------------
// number formatting
// ---------------------------------------------------------------------------

/// 17 significant digits: enough to reproduce any double exactly on parse.
inline std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

/// Shortest representation that round-trips; used for CSV cells.
inline std::string format_real_short(double v) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

// ---------------------------------------------------------------------------
// CSV
// ---------------------------------------------------------------------------

/// Comma-separated numeric table, '.' decimal separator, optional header
/// row. Malformed cells and non-finite values fail with the 1-based line
/// number.
inline Dataset read_csv(std::istream& in, bool has_header) {
  std::vector<double> values;
  std::size_t n = 0;
  std::size_t d = 0;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (has_header && line_no == 1) continue;
    if (line.empty()) continue;
    std::size_t cols = 0;
    std::size_t pos = 0;
    while (true) {
      const std::size_t comma = line.find(',', pos);
      const std::string cell =
          line.substr(pos, comma == std::string::npos ? comma : comma - pos);
      double value = 0.0;
      try {
        std::size_t used = 0;
        value = std::stod(cell, &used);
        // allow surrounding spaces only
        for (std::size_t i = used; i < cell.size(); ++i)
          if (cell[i] != ' ' && cell[i] != '\t')
            throw std::invalid_argument("trailing junk");
      } catch (const std::exception&) {
        throw io_error("line " + std::to_string(line_no) +
                       ": malformed numeric cell '" + cell + "'");
      }
      if (!std::isfinite(value))
        throw io_error("line " + std::to_string(line_no) +
                       ": non-finite value");
      values.push_back(value);
      ++cols;
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    if (d == 0)
      d = cols;
    else if (cols != d)
      throw io_error("line " + std::to_string(line_no) + ": expected " +
                     std::to_string(d) + " columns, found " +
                     std::to_string(cols));
    ++n;
  }
  if (d == 0) throw io_error("empty CSV input");
  return Dataset(n, d, std::move(values));
}

inline Dataset read_csv_file(const std::string& path, bool has_header) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open '" + path + "' for reading");
  try {
    return read_csv(in, has_header);
  } catch (const io_error& e) {
    throw io_error(path + ": " + e.what());
  }
}

inline void write_csv(std::ostream& out,
                      const std::vector<std::string>& header,
                      const Dataset& data) {
  for (std::size_t j = 0; j < header.size(); ++j)
    out << (j ? "," : "") << header[j];
  out << "\n";
  for (std::size_t i = 0; i < data.size(); ++i) {
    for (std::size_t j = 0; j < data.dimension(); ++j)
      out << (j ? "," : "") << format_real_short(data(i, j));
    out << "\n";
  }
}

// ---------------------------------------------------------------------------
// JSON writing
//
// Documents are written by hand so every real is serialized with exactly
// 17 significant digits and output is byte-stable; parsing goes through
// nlohmann::json.
// ---------------------------------------------------------------------------

namespace detail {

inline void json_reals(std::string& out, std::span<const double> values) {
  out += '[';
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ',';
    out += format_real(values[i]);
  }
  out += ']';
}

inline void json_ints(std::string& out, std::span<const int> values) {
  out += '[';
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(values[i]);
  }
  out += ']';
}

}  // namespace detail

/// Model document:
///   {format_version, degrees, support:{lower,upper}, coefficients,
///    provenance?}
/// Coefficients are in lexicographic rank order (last index fastest).
inline std::string write_model_json(const BernsteinModel& model,
                                    const std::string& provenance_json = "") {
  std::string out = "{\n  \"format_version\": " +
                    std::to_string(kModelFormatVersion) + ",\n";
  out += "  \"degrees\": ";
  detail::json_ints(out, model.degrees().values());
  out += ",\n  \"support\": {\n    \"lower\": ";
  detail::json_reals(out, model.support().lower());
  out += ",\n    \"upper\": ";
  detail::json_reals(out, model.support().upper());
  out += "\n  },\n  \"coefficients\": ";
  detail::json_reals(out, model.coefficients().span());
  if (!provenance_json.empty())
    out += ",\n  \"provenance\": " + provenance_json;
  out += "\n}\n";
  return out;
}

inline BernsteinModel parse_model_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw io_error(std::string("model JSON parse failure: ") + e.what());
  }
  try {
    if (!doc.contains("format_version") ||
        doc["format_version"].get<int>() != kModelFormatVersion)
      throw io_error("unsupported or missing format_version");
    std::vector<int> degrees = doc.at("degrees").get<std::vector<int>>();
    std::vector<double> lower =
        doc.at("support").at("lower").get<std::vector<double>>();
    std::vector<double> upper =
        doc.at("support").at("upper").get<std::vector<double>>();
    std::vector<double> coeffs =
        doc.at("coefficients").get<std::vector<double>>();
    return BernsteinModel(DegreeVector(std::move(degrees)),
                          MixtureCoefficients(std::move(coeffs)),
                          SupportBox(std::move(lower), std::move(upper)));
  } catch (const io_error&) {
    throw;
  } catch (const nlohmann::json::exception& e) {
    throw io_error(std::string("model JSON structure invalid: ") + e.what());
  } catch (const error& e) {
    throw io_error(std::string("model JSON invalid: ") + e.what());
  }
}

inline BernsteinModel read_model_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open '" + path + "' for reading");
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return parse_model_json(buf.str());
  } catch (const io_error& e) {
    throw io_error(path + ": " + e.what());
  }
}

inline std::string write_report_json(const FitReport& report) {
  std::string out = "{\n  \"format_version\": " +
                    std::to_string(kModelFormatVersion) + ",\n";
  out += "  \"iterations\": " + std::to_string(report.iterations) + ",\n";
  out += std::string("  \"converged\": ") +
         (report.converged ? "true" : "false") + ",\n";
  out += "  \"final_loglik\": " + format_real(report.final_loglik) + ",\n";
  out += std::string("  \"n_below_recommended\": ") +
         (report.n_below_recommended ? "true" : "false") + ",\n";
  out += "  \"loglik_trace\": ";
  detail::json_reals(out, report.loglik_trace);
  out += "\n}\n";
  return out;
}

inline std::string write_selection_json(const DegreeSelection& sel) {
  std::string out = "{\n  \"format_version\": " +
                    std::to_string(kModelFormatVersion) + ",\n";
  out += "  \"dimensions\": [";
  for (std::size_t j = 0; j < sel.dimensions.size(); ++j) {
    const auto& dim = sel.dimensions[j];
    if (j) out += ',';
    out += "\n    {\n      \"grid_base\": " + std::to_string(dim.grid.base) +
           ",\n      \"grid_count\": " + std::to_string(dim.grid.count) +
           ",\n      \"profile_logliks\": ";
    detail::json_reals(out, dim.profile_logliks);
    out += ",\n      \"changepoint_stats\": ";
    detail::json_reals(out, dim.stats);
    out += ",\n      \"tau\": " + std::to_string(dim.tau) +
           ",\n      \"degree\": " + std::to_string(dim.degree) + "\n    }";
  }
  out += "\n  ]\n}\n";
  return out;
}

inline std::string write_study_json(const StudyResult& r) {
  std::string out = "{\n  \"format_version\": " +
                    std::to_string(kModelFormatVersion) + ",\n";
  out += "  \"target\": \"" + r.target + "\",\n";
  out += "  \"n\": " + std::to_string(r.n) + ",\n";
  out += "  \"runs\": " + std::to_string(r.runs) + ",\n";
  out += "  \"seed\": " + std::to_string(r.seed) + ",\n";
  out += "  \"mean_degree\": ";
  detail::json_reals(out, r.mean_degree);
  out += ",\n  \"sd_degree\": ";
  detail::json_reals(out, r.sd_degree);
  out += ",\n  \"mise_x100\": " + format_real(r.mise_x100) + ",\n";
  out += "  \"sd_ise_x100\": " +
         (r.sd_ise_x100 ? format_real(*r.sd_ise_x100) : std::string("null")) +
         ",\n";
  out += "  \"failures\": " + std::to_string(r.failures) + ",\n";
  out += "  \"elapsed_seconds\": " + format_real(r.elapsed_seconds) + ",\n";
  out += "  \"ise_values\": ";
  detail::json_reals(out, r.ise_values);
  out += ",\n  \"degrees\": [";
  for (std::size_t i = 0; i < r.degrees.size(); ++i) {
    if (i) out += ',';
    detail::json_ints(out, r.degrees[i]);
  }
  out += "]\n}\n";
  return out;
}

/// Provenance block for fitted model files.
inline std::string write_provenance_json(std::size_t n,
                                         const FitConfig& config) {
  std::string out = "{\n    \"tool\": \"bernmix " BERNMIX_VERSION_STRING
                    "\",\n";
  out += "    \"n\": " + std::to_string(n) + ",\n";
  out += "    \"config\": {\"tol\": " + format_real(config.tol) +
         ", \"max_iters\": " + std::to_string(config.max_iters) +
         ", \"boundary_eps\": " + format_real(config.boundary_eps) + "}\n  }";
  return out;
}

inline void write_text_file(const std::string& path,
                            const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw io_error("cannot open '" + path + "' for writing");
  out << content;
  if (!out) throw io_error("failed writing '" + path + "'");
}

}  // namespace bernmix

#endif  // BERNMIX_IO_HPP
