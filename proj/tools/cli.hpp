// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "pmp/dasnet.hpp"

namespace pmp::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitUsage = 2;

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Ablation sweep: every (mode, churn, seed) with seed in [seed, seed + seeds).
struct AblationConfig {
  ExperimentConfig experiment;
  std::uint64_t seed = 1;
  std::uint32_t seeds = 1;
  std::vector<double> churn{0.0};
  std::vector<ConfigMode> modes{std::begin(kAllModes), std::end(kAllModes)};
};

/// key=value lines, '#' starts a comment. Unknown or repeated keys, malformed
/// numbers and inconsistent settings throw ConfigError.
AblationConfig parse_config(std::string_view text);
AblationConfig load_config(const std::filesystem::path& path);

/// Rows in canonical order (mode, churn, seed) regardless of `jobs`.
std::vector<MetricsRecord> run_ablation(const AblationConfig& config, unsigned jobs = 1);

/// CSV columns: mode, seed, churn, objects_stored, proof_bytes, object_bytes,
/// hit_rate, verify_failures, g1_mults, g2_mults, pairings, interpolations,
/// then the extra counters of MetricsRecord::to_kv in its order.
std::string format_csv(const std::vector<MetricsRecord>& rows);
std::string format_json(const std::vector<MetricsRecord>& rows);

/// Parses argv and dispatches. Returns the process exit code:
/// 0 success, 1 verification failure, 2 usage or config error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pmp::cli
