// Copyright 2026 The uniest Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>

#include <nlohmann/json.hpp>

namespace uniest {

/// Serializes \p value with every floating-point number printed to 17
/// significant digits. Object keys keep nlohmann's sorted order, so the
/// output is byte-identical for equal inputs.
std::string dump_json(const nlohmann::json& value, int indent = 1);

}  // namespace uniest
