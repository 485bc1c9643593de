#pragma once

#include "fracrom/offline.hpp"
#include "fracrom/persistence.hpp"
#include "fracrom/problems.hpp"

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace fracrom::cli {

namespace fs = std::filesystem;

/// Grid flags shared by the commands that build a problem from scratch.
struct GridFlags {
    std::optional<std::size_t> n;
    std::optional<std::size_t> steps;
    std::optional<double> final_time;

    CaseGrid to_case_grid() const;
};

/// A catalog case or a JSON-defined problem with the grid applied.
struct ProblemHandle {
    std::string id;  ///< catalog id, or "custom"
    ProblemFactory factory;
    ExactSolution exact;
    std::vector<double> samples;
    std::size_t pod_dim = 4;
    std::size_t deim_dim = 0;
    std::optional<fs::path> definition;  ///< JSON file for custom problems
};

/// `arg` is a catalog id or a path ending in .json.
ProblemHandle resolve_problem(const std::string& arg, const GridFlags& flags);
/// Rebuilds the problem recorded in a manifest; `dir` holds the manifest.
ProblemHandle problem_from_manifest(const RunManifest& m, const fs::path& dir);

/// Reads and validates the manifest (files exist, checksums match).
RunManifest load_manifest(const fs::path& path);

Eigen::MatrixXd read_ref(const RunManifest& m, const fs::path& dir, const std::string& role);

/// Offline model reconstructed from the basis files of a built manifest.
OfflineModel load_offline_model(const RunManifest& m, const fs::path& dir, const ProblemHandle& problem);

std::vector<double> parse_list(const std::string& text);

}  // namespace fracrom::cli
