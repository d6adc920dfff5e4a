#pragma once

#include <filesystem>
#include <json.hpp>

#include "blowup/criteria.hpp"
#include "blowup/solver.hpp"
#include "blowup/verify.hpp"

namespace blowup {

// Field names follow the struct members.
nlohmann::json to_json(const CriterionReport& report);
nlohmann::json to_json(const VerificationReport& report);
nlohmann::json to_json(const Scenario& scenario);
nlohmann::json trace_summary(const SolutionTrace& trace);

// Pretty-printed. Throws InvalidInput when the file
// cannot be written or read.
void write_json(const nlohmann::json& doc, const std::filesystem::path& path);
nlohmann::json read_json(const std::filesystem::path& path);

}  // namespace blowup
