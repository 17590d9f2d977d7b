// Copyright 2026 The uniest Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "uniest/estimate.hpp"

namespace uniest {

nlohmann::json real_matrix_to_json(const RMatrix& m);
RMatrix real_matrix_from_json(const nlohmann::json& j);
nlohmann::json complex_matrix_to_json(const CMatrix& m);
CMatrix complex_matrix_from_json(const nlohmann::json& j);

nlohmann::json to_json(const EstimationReport& report);
nlohmann::json to_json(const SearchReport& report);
EstimationReport estimation_report_from_json(const nlohmann::json& j);
SearchReport search_report_from_json(const nlohmann::json& j);

std::string report_to_text(const EstimationReport& report);
std::string report_to_text(const SearchReport& report);
EstimationReport estimation_report_from_text(std::string_view text);
SearchReport search_report_from_text(std::string_view text);

void write_text_file(const std::filesystem::path& path, const std::string& text);
std::string read_text_file(const std::filesystem::path& path);

}  // namespace uniest
