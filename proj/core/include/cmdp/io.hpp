#pragma once

// JSON file formats. Malformed documents raise DomainError naming the
// offending key path. Filesystem failures raise IoError.

#include <filesystem>
#include <string>
#include <string_view>

#include "cmdp/analyzer.hpp"
#include "cmdp/mdp.hpp"
#include "cmdp/run_record.hpp"

namespace cmdp {

inline constexpr const char* kRunSchema = "cmdp.run-record/1";

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view content);

/// Structure only: probability invariants are left to validate_mdp().
TabularMdp mdp_from_json(std::string_view text);
std::string mdp_to_json(const TabularMdp& mdp);

StochasticPolicy policy_from_json(std::string_view text, const TabularMdp& mdp);
std::string policy_to_json(const StochasticPolicy& policy, const TabularMdp& mdp);

ValueEstimate values_from_json(std::string_view text, const TabularMdp& mdp);
std::string values_to_json(const ValueEstimate& values, const TabularMdp& mdp);

RunRecord run_from_json(std::string_view text, const TabularMdp& mdp);
std::string run_to_json(const RunRecord& run, const TabularMdp& mdp);

CreativityReport report_from_json(std::string_view text);
std::string report_to_json(const CreativityReport& report);

/// Loads and validates a file, reporting all violations in one DomainError.
/// Rows within tolerance of summing to 1 are renormalized.
TabularMdp load_mdp(const std::filesystem::path& path);
StochasticPolicy load_policy(const std::filesystem::path& path, const TabularMdp& mdp);
ValueEstimate load_values(const std::filesystem::path& path, const TabularMdp& mdp);
RunRecord load_run(const std::filesystem::path& path, const TabularMdp& mdp);

}  // namespace cmdp
