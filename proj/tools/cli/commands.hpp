#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "acutance/acutance.hpp"
#include "acutance/spectrum.hpp"

namespace acut::cli {

inline constexpr const char* kSchema = "acutance-bench/1";

/// Stable process exit codes.
enum ExitCode : int { kOk = 0, kUsage = 2, kIo = 3, kNumeric = 4 };

/// Runs the command line `args` (args[0] is the program name) and returns the exit code.
int run(const std::vector<std::string>& args);

/// CSV of per-ring rows: header k,f_digital,f_angular,mtf,csf_weight, LF line endings.
std::string rings_csv(const std::vector<acutance::RingRow>& rows);

/// Parses rings_csv output back into rows.
std::vector<acutance::RingRow> parse_rings_csv(const std::string& text);

/// Trapezoid integral of csf_weight * mtf over f_angular, i.e. A recomputed from CSV rows.
double reintegrate(const std::vector<acutance::RingRow>& rows);

struct ManifestEntry {
  std::filesystem::path clean;
  std::filesystem::path restored;
  bool is_dead_leaves = false;
  std::filesystem::path degraded;  // empty when the manifest gives none
};

/**
 * One item per non-blank line: `clean restored flag [degraded]`, separated by
 * whitespace or commas. flag is 0/1. `#` starts a comment. Relative paths are
 * resolved against the manifest's directory.
 */
std::vector<ManifestEntry> parse_manifest(const std::string& text, const std::filesystem::path& base_dir);

}  // namespace acut::cli
