#pragma once

// On-disk formats.
//
// FRMAT1 matrix file, all integers little-endian:
//   bytes 0-5   "FRMAT1"
//   byte  6     element kind, 0x01 = float64
//   byte  7     layout, 0x00 = row-major
//   bytes 8-15  rows (u64)
//   bytes 16-23 cols (u64)
//   payload     rows * cols IEEE-754 doubles, row-major
//
// Manifests are JSON, traces are CSV. Checksums are 64-bit FNV-1a over the
// whole file.

#include "fracrom/inverse.hpp"
#include "fracrom/problems.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace fracrom {

inline constexpr std::string_view library_version = "0.1.0";

/// Malformed or inconsistent file contents.
class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::uint64_t fnv1a64(std::span<const std::byte> bytes) noexcept;
std::uint64_t file_checksum(const std::filesystem::path& path);

/// Serialized FRMAT1 bytes; identical for identical matrices.
std::vector<std::byte> encode_matrix(const Eigen::MatrixXd& a);
Eigen::MatrixXd decode_matrix(std::span<const std::byte> bytes);

/// Returns the checksum of the written file.
std::uint64_t write_matrix(const std::filesystem::path& path, const Eigen::MatrixXd& a);
/// Throws FormatError on a bad header, a size mismatch or, when given, a
/// checksum mismatch.
Eigen::MatrixXd read_matrix(const std::filesystem::path& path,
                            std::optional<std::uint64_t> expected_checksum = std::nullopt);

struct FileRef {
    std::string role;      ///< e.g. "snapshots", "phi", "deim_indices"
    std::string path;      ///< relative to the manifest directory
    std::uint64_t checksum = 0;
};

struct ManifestTolerances {
    double newton = 1e-10;
    double pcg = 1e-10;
    double rom_newton = 1e-11;
};

struct RunManifest {
    std::string version{library_version};
    std::string problem;                 ///< case id, or "custom"
    int dimension = 1;
    std::size_t n = 0;                   ///< interior nodes per axis
    std::size_t steps = 0;
    double h = 0.0;
    double dt = 0.0;
    double final_time = 0.0;
    std::vector<double> samples;
    std::size_t pod_dim = 0;             ///< 0 until a ROM has been built
    std::size_t deim_dim = 0;            ///< effective s
    std::size_t requested_deim_dim = 0;
    ManifestTolerances tolerances;
    std::optional<std::uint64_t> seed;
    std::vector<FileRef> files;

    const FileRef* find(std::string_view role) const noexcept;
    /// Adds or replaces the entry for ref.role.
    void set_file(FileRef ref);
};

void write_manifest(const std::filesystem::path& path, const RunManifest& manifest);
RunManifest read_manifest(const std::filesystem::path& path);

/// Every referenced file must exist under `base` and match its checksum.
void validate_manifest(const RunManifest& manifest, const std::filesystem::path& base);

/// CSV with header `k,beta,objective,step,backtracks`; floats with 17
/// significant digits. Throws std::invalid_argument for an empty trace.
void write_trace(const std::filesystem::path& path, const IdentificationResult& result);
std::vector<TraceRow> read_trace(const std::filesystem::path& path);

/// JSON problem definition with the fields of CustomProblem, e.g.
///   {"dimension": 1, "domain": [[0, 1]], "n": 63, "final_time": 1, "steps": 64,
///    "mu_x": "1 + x", "reaction": "sin(u)", "source": "...", "initial": "0"}
CustomProblem load_custom_problem(const std::filesystem::path& path);
CustomProblem parse_custom_problem(std::string_view json_text);

}  // namespace fracrom
