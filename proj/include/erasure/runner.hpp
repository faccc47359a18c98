#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace erasure::runner {

inline constexpr const char* tool_name = "erasure";
inline constexpr const char* tool_version = "0.1.0";
inline constexpr int output_schema_version = 1;

/// Invalid or ill-formed run configuration (CLI exit code 2).
class config_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Failure writing output artifacts (CLI exit code 4).
class io_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

enum class Subcommand { model_a, protocol, microsim, demon, maxent };

Subcommand subcommand_from_name(std::string_view name);
std::string_view subcommand_name(Subcommand sub);

struct SweepAxis {
    std::string parameter;
    std::vector<double> values;
};

/// A validated run: every default is materialized in `parameters`, the
/// derived partner of each exclusive pair (alpha vs gamma_tilde) is
/// echoed, and swept parameters appear only in `sweep`.
struct RunConfig {
    Subcommand subcommand = Subcommand::protocol;
    nlohmann::ordered_json parameters;
    std::vector<SweepAxis> sweep;
    std::uint64_t seed = 0;
    std::filesystem::path out_dir = ".";
};

/// Seed / output-directory overrides from the command line. The output
/// directory resolves as: CLI flag, then the ERASURE_OUT_DIR environment
/// variable, then the config's out_dir key, then the working directory.
struct RunOverrides {
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out_dir;
};

/// Parses and validates a configuration document (JSON object, documented
/// key-value schema). Unknown keys are rejected; violated constraints are
/// named in the thrown config_error.
RunConfig parse_config(Subcommand sub, const std::string& text, const RunOverrides& overrides = {});

struct RunArtifacts {
    std::vector<std::filesystem::path> files;
};

/// Executes the configured experiment and writes its CSV/JSON artifacts.
/// Identical configs (including seed) produce byte-identical files.
RunArtifacts run(const RunConfig& config);

}  // namespace erasure::runner
