#pragma once

#include "flatbundle/local_formula.hpp"
#include "flatbundle/representations.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

namespace flatbundle {

enum class OutputFormat { human, machine };

/// Settings shared by every command. All randomness derives from seed.
struct RunConfig {
  double relator_tol = 1e-6;
  double rot_tol = 1e-3;
  std::uint64_t rot_budget = kDefaultRotationBudget;
  std::uint64_t seed = 1;
  OutputFormat format = OutputFormat::human;
  // Unset: exhaustive when 4g <= kMaxExhaustiveSheets, else 1000 samples.
  std::optional<EscherMode> escher;
  std::size_t trials = 100;

  // Throws invalid_argument unless tolerances > 0 and budgets >= 1.
  void validate() const;
  EulerOptions euler_options() const;
};

/// "exhaustive" or "sampled:N".
EscherMode parse_escher_mode(std::string_view text);

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int failed = 1;  // a check or audit did not hold
inline constexpr int invalid_input = 2;
}  // namespace exit_code

struct CommandResult {
  int exit_code = exit_code::ok;
  std::string output;  // report, newline terminated
  std::string error;   // diagnostic for stderr, empty on success
};

CommandResult cmd_euler_rep(const std::filesystem::path& rep_file, const RunConfig& config);
CommandResult cmd_euler_vertices(const std::filesystem::path& vertex_file, const RunConfig& config);
// Writes the representation file when out_file is set; the machine report
// embeds the representation either way.
CommandResult cmd_fuchsian(int genus, const std::optional<std::filesystem::path>& out_file,
                           const RunConfig& config);
CommandResult cmd_sullivan(const std::filesystem::path& corners_file, const RunConfig& config);
CommandResult cmd_escher(int genus, const RunConfig& config);
CommandResult cmd_cover(const std::filesystem::path& rep_file, const RunConfig& config);
/// Replays the bound in order: vertex census (|e| <= 2g - 1), Escher
/// exclusion of 2g - 1, exclusion of 2g - 1 through the double cover, and the
/// audit of constructed families against 2g - 2.
CommandResult cmd_prove_mw(int genus, const RunConfig& config);

}  // namespace flatbundle
