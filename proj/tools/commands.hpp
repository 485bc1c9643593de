#pragma once

#include "common.hpp"

#include "fracrom/inverse.hpp"

#include <cstdint>
#include <optional>
#include <string>

namespace fracrom::cli {

struct FomSolveArgs {
    std::string problem;
    double beta = 0.5;
    GridFlags grid;
    std::string out;
    bool trajectory = false;
};

struct SnapshotsArgs {
    std::string problem;
    std::string samples;
    GridFlags grid;
    std::string out;
};

struct BuildRomArgs {
    std::string manifest;
    std::optional<std::size_t> r;
    std::optional<std::size_t> s;
};

struct RomSolveArgs {
    std::string manifest;
    double beta = 0.5;
    std::string out;
    bool full_evaluation = false;
    bool compare_fom = false;
};

struct IdentifyArgs {
    std::string manifest;
    std::optional<double> beta_star;
    std::string data;
    double noise = 0.0;
    std::string forward = "rom";
    std::string trace;
    std::string result;
    LmConfig config;
    bool unregularized = false;
};

struct BenchArgs {
    std::string problem;
    GridFlags grid;
    double beta_star = 0.75;
    double beta0 = 0.5;
};

struct ReproduceArgs {
    int table = 0;
    bool rom_only = false;  ///< tables 7 and 8: skip the FOM path
};

// Each returns the process exit code.
int run_fom_solve(const FomSolveArgs& args);
int run_snapshots(const SnapshotsArgs& args);
int run_build_rom(const BuildRomArgs& args);
int run_rom_solve(const RomSolveArgs& args);
int run_identify(const IdentifyArgs& args, std::uint64_t seed);
int run_bench(const BenchArgs& args);
int run_reproduce_table(const ReproduceArgs& args, std::uint64_t seed);

}  // namespace fracrom::cli
