// Copyright 2026 The uniest Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "uniest/povm.hpp"
#include "uniest/tolerances.hpp"

namespace uniest {

// POVM documents:
//   {"dim": D,
//    "elements": [{"matrix": [[re, im], ...],            // row-major, D*D entries
//                  "product": {"c": w, "a": [[re, im], ...], "b": [...]}}, ...]}
// "product" is optional; an element with several product terms stores a list
// of such objects.

nlohmann::json povm_to_json(const Povm& povm);

/// Throws ParseError on malformed input or a completeness residual above
/// tol.povm_load_completeness.
Povm povm_from_json(const nlohmann::json& doc, const Tolerances& tol = default_tolerances());

std::string povm_to_text(const Povm& povm);
Povm povm_from_text(std::string_view text, const Tolerances& tol = default_tolerances());

void write_povm(const Povm& povm, const std::filesystem::path& path);
Povm read_povm(const std::filesystem::path& path, const Tolerances& tol = default_tolerances());

}  // namespace uniest
