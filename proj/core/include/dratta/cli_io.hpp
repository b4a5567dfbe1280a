#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dratta/simulation.hpp"

namespace dratta {

enum class Command { Motivating, RealizationDemo, OptimizerTrace, McSweep, LapSolve };

const char* command_name(Command command);

// Everything a single CLI invocation needs: which experiment, where the
// config lives (empty path means all defaults), where artifacts go, and any
// flag overrides that beat the file values.
struct RunManifest {
    Command command = Command::McSweep;
    std::string config_path;      // empty: defaults
    std::string output_dir = "."; // must be writable
    std::optional<std::uint64_t> seed_override;
    std::optional<int> runs_override;
    std::optional<std::string> method_override;  // "full", "fusion-opt", "assoc-opt"
    std::optional<double> c_min_override;
    std::optional<double> c_max_override;
    std::optional<double> c_step_override;
};

// Parsed configuration: the sweep settings plus the scenario recipe.
struct SimConfig {
    McConfig mc;
    ScenarioSpec scenario;
};

// Reads a JSON config file and applies defaults for absent fields. Unknown
// fields and invariant violations raise ConfigError naming the field. An
// empty path yields the full default configuration.
SimConfig parse_config(const std::string& path);

// Flag overrides applied on top of a parsed config.
SimConfig apply_overrides(SimConfig cfg, const RunManifest& manifest);

// One row of an optimizer trace file.
struct TraceRow {
    std::string variant;
    int k = 0;
    double f_min = 0.0;
    double alpha = 0.0;
};

// CSV writers. Floating-point values carry 17 significant digits so files
// round-trip exactly; a header row is always present.
void write_sweep_csv(const McResult& result, const std::string& path);
void write_trace_csv(const std::vector<TraceRow>& rows, const std::string& path);
void write_motivating_csv(const std::vector<MotivatingRow>& rows,
                          const std::string& path);

// Formats one double with 17 significant digits (shortest form %.17g).
std::string format_double(double value);

// Reads a square numeric CSV into a matrix. ConfigError on open, parse, or
// shape problems.
Eigen::MatrixXd read_matrix_csv(const std::string& path);

// 64-bit FNV-1a, used to fingerprint the effective config in run metadata.
std::uint64_t fnv1a64(const std::string& bytes);

// Executes the selected command: writes CSV artifacts and a JSON metadata
// sidecar (seed, config hash, wall time) into output_dir. Returns 0 on
// success, 1 on configuration problems, 2 on numerical failures.
int run_command(const RunManifest& manifest);

}  // namespace dratta
