// Copyright 2026 The uniest Authors
// SPDX-License-Identifier: Apache-2.0

#include "uniest/json_text.hpp"

#include <cmath>
#include <cstdio>
#include <string>

namespace uniest {
namespace {

bool is_scalar(const nlohmann::json& v) { return !v.is_array() && !v.is_object(); }

bool is_flat_array(const nlohmann::json& v) {
  if (!v.is_array()) return false;
  for (const auto& e : v) {
    if (!is_scalar(e)) return false;
  }
  return true;
}

void write_number(std::string& out, double x) {
  if (!std::isfinite(x)) {
    out += "null";
    return;
  }
  if (x == 0.0) x = 0.0;  // drop the sign of -0 so reloaded text is identical
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  out += buf;
}

void write(std::string& out, const nlohmann::json& v, int indent, int depth) {
  const auto newline = [&](int level) {
    if (indent < 0) return;
    out += '\n';
    out.append(static_cast<std::size_t>(indent * level), ' ');
  };
  switch (v.type()) {
    case nlohmann::json::value_t::number_float:
      write_number(out, v.get<double>());
      return;
    case nlohmann::json::value_t::array: {
      if (v.empty()) {
        out += "[]";
        return;
      }
      const bool flat = is_flat_array(v);
      out += '[';
      bool first = true;
      for (const auto& e : v) {
        if (!first) out += flat || indent < 0 ? ", " : ",";
        if (!flat) newline(depth + 1);
        write(out, e, indent, depth + 1);
        first = false;
      }
      if (!flat) newline(depth);
      out += ']';
      return;
    }
    case nlohmann::json::value_t::object: {
      if (v.empty()) {
        out += "{}";
        return;
      }
      out += '{';
      bool first = true;
      for (const auto& [key, e] : v.items()) {
        if (!first) out += ',';
        newline(depth + 1);
        out += nlohmann::json(key).dump();
        out += ": ";
        write(out, e, indent, depth + 1);
        first = false;
      }
      newline(depth);
      out += '}';
      return;
    }
    default:
      out += v.dump();
      return;
  }
}

}  // namespace

std::string dump_json(const nlohmann::json& value, int indent) {
  std::string out;
  write(out, value, indent, 0);
  out += '\n';
  return out;
}

}  // namespace uniest
