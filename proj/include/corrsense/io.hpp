// io.hpp - deterministic text formatting, CSV output, and run manifests.
#pragma once

#include <Eigen/Dense>
#include <nlohmann/json.hpp>
#include <string>
#include <vector>

namespace corrsense::io {

// Full-precision round-trippable formatting (%.17g).
std::string fmt_full(double v);
// Display formatting (%.12g); also used for byte-stable report lines.
std::string fmt_human(double v);

void write_text_file(const std::string& path, const std::string& content);

// CSV with %.17g entries and an optional header line.
std::string matrix_csv(const Eigen::MatrixXd& m);
void write_matrix_csv(const std::string& path, const Eigen::MatrixXd& m);

// Resolves the output directory: explicit flag first, then CORRSENSE_OUT_DIR,
// else empty (no files written).  Creates the directory when needed.
std::string resolve_out_dir(const std::string& flag_value);

// manifest.json recording everything needed to reproduce a run.
void write_manifest(const std::string& out_dir, const std::string& command,
                    const nlohmann::json& params, std::uint64_t seed,
                    const std::vector<std::string>& outputs, double wall_time_s);

inline constexpr const char* kVersion = "0.1.0";

}  // namespace corrsense::io
