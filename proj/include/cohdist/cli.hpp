#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string_view>
#include <vector>

#include "cohdist/distillation.hpp"

namespace cohdist::cli {

enum class OutputFormat { Text, Json };

struct RunConfig {
  double tol = kDefaultTol;
  std::size_t dim_cap = kDefaultDimCap;
  OutputFormat format = OutputFormat::Text;
  std::optional<std::filesystem::path> export_channel;

  /// tol in (0, 1e-3) and dim_cap >= 2; throws Error{InvalidShape} otherwise.
  void validate() const;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitInvalidInput = 2;
inline constexpr int kExitDimensionOverflow = 3;
inline constexpr int kExitInfeasible = 4;

// Each command writes its report to `out` and returns the exit code. Library
// errors propagate; run() turns them into exit codes.
int cmd_analyze(const RunConfig& config, const std::filesystem::path& state, std::ostream& out);
int cmd_distill(const RunConfig& config, const std::vector<std::filesystem::path>& states, std::ostream& out);
int cmd_transform(const RunConfig& config, const std::filesystem::path& state, const std::filesystem::path& target,
                  std::ostream& out);
int cmd_lattice(const RunConfig& config, std::string_view sub, const std::vector<std::filesystem::path>& dists,
                std::ostream& out);

/// Full command line: global flags, COHDIST_TOL fallback, subcommand dispatch.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace cohdist::cli
