// Copyright 2026 The uniest Authors
// SPDX-License-Identifier: Apache-2.0

#include "uniest/povm_io.hpp"

#include <fstream>
#include <sstream>
#include <string>

#include "uniest/errors.hpp"
#include "uniest/json_text.hpp"
#include "uniest/linalg.hpp"
#include "uniest/report_io.hpp"

namespace uniest {
namespace {

using nlohmann::json;

json complex_list(const CVector& v) {
  json out = json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(json::array({v(i).real(), v(i).imag()}));
  return out;
}

CVector complex_list_from(const json& j, const char* what) {
  if (!j.is_array()) throw ParseError(std::string(what) + ": expected a list of [re, im] pairs");
  CVector v(static_cast<Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    const json& pair = j[i];
    if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() || !pair[1].is_number()) {
      throw ParseError(std::string(what) + ": entry " + std::to_string(i) + " is not a [re, im] pair");
    }
    v(static_cast<Index>(i)) = Complex(pair[0].get<double>(), pair[1].get<double>());
  }
  return v;
}

json term_to_json(const ProductTerm& t) {
  return json{{"c", t.weight}, {"a", complex_list(t.a)}, {"b", complex_list(t.b)}};
}

ProductTerm term_from_json(const json& j) {
  if (!j.is_object() || !j.contains("c") || !j.contains("a") || !j.contains("b") || !j["c"].is_number()) {
    throw ParseError("povm: product entry needs fields c, a, b");
  }
  ProductTerm t{j["c"].get<double>(), complex_list_from(j["a"], "product.a"), complex_list_from(j["b"], "product.b")};
  if (t.weight <= 0.0) throw ParseError("povm: product weight must be positive");
  return t;
}

}  // namespace

json povm_to_json(const Povm& povm) {
  json elements = json::array();
  for (const PovmElement& e : povm) {
    json el{{"matrix", complex_list(flatten_row_major(e.matrix))}};
    if (e.product.size() == 1) {
      el["product"] = term_to_json(e.product.front());
    } else if (e.product.size() > 1) {
      json terms = json::array();
      for (const ProductTerm& t : e.product) terms.push_back(term_to_json(t));
      el["product"] = std::move(terms);
    }
    elements.push_back(std::move(el));
  }
  return json{{"dim", povm.dim()}, {"elements", std::move(elements)}};
}

Povm povm_from_json(const json& doc, const Tolerances& tol) {
  if (!doc.is_object()) throw ParseError("povm: document must be an object");
  if (!doc.contains("dim") || !doc["dim"].is_number_integer()) throw ParseError("povm: missing integer field dim");
  if (!doc.contains("elements") || !doc["elements"].is_array()) throw ParseError("povm: missing list field elements");
  const auto dim = doc["dim"].get<Index>();
  if (dim < 1) throw ParseError("povm: dim must be positive");
  const json& list = doc["elements"];
  if (list.empty()) throw ParseError("povm: no elements");
  std::vector<PovmElement> elements;
  for (std::size_t k = 0; k < list.size(); ++k) {
    const json& el = list[k];
    if (!el.is_object() || !el.contains("matrix")) {
      throw ParseError("povm: element " + std::to_string(k) + " lacks a matrix");
    }
    const CVector flat = complex_list_from(el["matrix"], "matrix");
    if (flat.size() != dim * dim) {
      throw ParseError("povm: element " + std::to_string(k) + " has " + std::to_string(flat.size()) +
                       " entries, expected " + std::to_string(dim * dim));
    }
    PovmElement e{CMatrix(dim, dim), {}};
    for (Index r = 0; r < dim; ++r) {
      for (Index c = 0; c < dim; ++c) e.matrix(r, c) = flat(r * dim + c);
    }
    if (el.contains("product")) {
      const json& prod = el["product"];
      if (prod.is_array()) {
        for (const json& t : prod) e.product.push_back(term_from_json(t));
      } else {
        e.product.push_back(term_from_json(prod));
      }
      for (const ProductTerm& t : e.product) {
        if (t.a.size() * t.b.size() != dim) throw ParseError("povm: product kets do not match dim");
      }
    }
    elements.push_back(std::move(e));
  }
  Povm povm(dim, std::move(elements));
  const PovmDiagnostics diag = validate(povm);
  if (diag.completeness_residual > tol.povm_load_completeness) {
    throw ParseError("povm: completeness residual " + std::to_string(diag.completeness_residual) +
                     " exceeds the load tolerance");
  }
  if (diag.hermiticity_residual > tol.povm_load_completeness) {
    throw ParseError("povm: element is not Hermitian (residual " + std::to_string(diag.hermiticity_residual) + ")");
  }
  if (diag.min_eigenvalue < -tol.povm_load_completeness) {
    throw ParseError("povm: element with negative eigenvalue " + std::to_string(diag.min_eigenvalue));
  }
  return povm;
}

std::string povm_to_text(const Povm& povm) { return dump_json(povm_to_json(povm)); }

Povm povm_from_text(std::string_view text, const Tolerances& tol) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("povm: ") + e.what());
  }
  return povm_from_json(doc, tol);
}

void write_povm(const Povm& povm, const std::filesystem::path& path) { write_text_file(path, povm_to_text(povm)); }

Povm read_povm(const std::filesystem::path& path, const Tolerances& tol) {
  return povm_from_text(read_text_file(path), tol);
}

}  // namespace uniest
