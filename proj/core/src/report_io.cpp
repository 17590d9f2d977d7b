// Copyright 2026 The uniest Authors
// SPDX-License-Identifier: Apache-2.0

#include "uniest/report_io.hpp"

#include <fstream>
#include <sstream>

#include "uniest/errors.hpp"
#include "uniest/json_text.hpp"

namespace uniest {

using nlohmann::json;

json real_matrix_to_json(const RMatrix& m) {
  json rows = json::array();
  for (Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

RMatrix real_matrix_from_json(const json& j) {
  if (!j.is_array()) throw ParseError("expected a matrix as a list of rows");
  const Index rows = static_cast<Index>(j.size());
  const Index cols = rows == 0 ? 0 : static_cast<Index>(j[0].size());
  RMatrix m(rows, cols);
  for (Index r = 0; r < rows; ++r) {
    const json& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Index>(row.size()) != cols) throw ParseError("ragged matrix");
    for (Index c = 0; c < cols; ++c) {
      const json& v = row[static_cast<std::size_t>(c)];
      if (!v.is_number()) throw ParseError("matrix entries must be numbers");
      m(r, c) = v.get<double>();
    }
  }
  return m;
}

json complex_matrix_to_json(const CMatrix& m) {
  json rows = json::array();
  for (Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Index c = 0; c < m.cols(); ++c) row.push_back(json::array({m(r, c).real(), m(r, c).imag()}));
    rows.push_back(std::move(row));
  }
  return rows;
}

CMatrix complex_matrix_from_json(const json& j) {
  if (!j.is_array()) throw ParseError("expected a complex matrix as a list of rows");
  const Index rows = static_cast<Index>(j.size());
  const Index cols = rows == 0 ? 0 : static_cast<Index>(j[0].size());
  CMatrix m(rows, cols);
  for (Index r = 0; r < rows; ++r) {
    const json& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Index>(row.size()) != cols) throw ParseError("ragged matrix");
    for (Index c = 0; c < cols; ++c) {
      const json& v = row[static_cast<std::size_t>(c)];
      if (!v.is_array() || v.size() != 2) throw ParseError("complex entries must be [re, im] pairs");
      m(r, c) = Complex(v[0].get<double>(), v[1].get<double>());
    }
  }
  return m;
}

namespace {

json vector_to_json(const RVector& v) {
  json out = json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

RVector vector_from_json(const json& j) {
  if (!j.is_array()) throw ParseError("expected a list of numbers");
  RVector v(static_cast<Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Index>(i)) = j[i].get<double>();
  return v;
}

const json& field(const json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) throw ParseError(std::string("report: missing field ") + name);
  return j.at(name);
}

json parse(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("report: ") + e.what());
  }
}

}  // namespace

json to_json(const EstimationReport& report) {
  json estimates = json::array();
  for (const RVector& e : report.estimates) estimates.push_back(vector_to_json(e));
  return json{{"kind", "estimation"},
              {"truth", vector_to_json(report.truth)},
              {"estimates", std::move(estimates)},
              {"samples", report.samples},
              {"repetitions", report.repetitions},
              {"covariance", real_matrix_to_json(report.covariance)},
              {"predicted", real_matrix_to_json(report.predicted)},
              {"trace_ratio", report.trace_ratio()},
              {"seed", report.seed}};
}

json to_json(const SearchReport& report) {
  return json{{"kind", "search"},
              {"dim", report.dim},
              {"best_amplitudes", complex_matrix_to_json(report.best_amplitudes)},
              {"best_qfi", real_matrix_to_json(report.best_qfi)},
              {"max_eigenvalue", report.max_eigenvalue},
              {"excess", report.excess},
              {"found", report.found},
              {"trials", report.trials},
              {"seed", report.seed}};
}

EstimationReport estimation_report_from_json(const json& j) {
  try {
    EstimationReport report;
    report.truth = vector_from_json(field(j, "truth"));
    for (const json& e : field(j, "estimates")) report.estimates.push_back(vector_from_json(e));
    report.samples = field(j, "samples").get<std::uint64_t>();
    report.repetitions = field(j, "repetitions").get<int>();
    report.covariance = real_matrix_from_json(field(j, "covariance"));
    report.predicted = real_matrix_from_json(field(j, "predicted"));
    report.seed = field(j, "seed").get<std::uint64_t>();
    return report;
  } catch (const json::exception& e) {
    throw ParseError(std::string("report: ") + e.what());
  }
}

SearchReport search_report_from_json(const json& j) {
  try {
    SearchReport report;
    report.dim = field(j, "dim").get<int>();
    report.best_amplitudes = complex_matrix_from_json(field(j, "best_amplitudes"));
    report.best_qfi = real_matrix_from_json(field(j, "best_qfi"));
    report.max_eigenvalue = field(j, "max_eigenvalue").get<double>();
    report.excess = field(j, "excess").get<double>();
    report.found = field(j, "found").get<bool>();
    report.trials = field(j, "trials").get<std::uint64_t>();
    report.seed = field(j, "seed").get<std::uint64_t>();
    return report;
  } catch (const json::exception& e) {
    throw ParseError(std::string("report: ") + e.what());
  }
}

std::string report_to_text(const EstimationReport& report) { return dump_json(to_json(report)); }
std::string report_to_text(const SearchReport& report) { return dump_json(to_json(report)); }

EstimationReport estimation_report_from_text(std::string_view text) {
  return estimation_report_from_json(parse(text));
}

SearchReport search_report_from_text(std::string_view text) { return search_report_from_json(parse(text)); }

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  out << text;
  if (!out) throw Error("failed writing " + path.string());
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace uniest
