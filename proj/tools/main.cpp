#include "commands.hpp"

#include "fracrom/errors.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <stdexcept>

namespace {

using namespace fracrom::cli;

void add_grid_flags(CLI::App* cmd, GridFlags& g) {
    cmd->add_option("--n", g.n, "interior nodes per axis")->check(CLI::PositiveNumber);
    cmd->add_option("--m", g.steps, "time steps")->check(CLI::PositiveNumber);
    cmd->add_option("--T", g.final_time, "final time")->check(CLI::PositiveNumber);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Time-fractional diffusion-reaction solver with POD/DEIM reduction and order identification"};
    app.require_subcommand(1);
    app.fallthrough();
    std::uint64_t seed = 0;
    app.add_option("--seed", seed, "seed for every random draw")->capture_default_str();

    FomSolveArgs fom;
    auto* fom_cmd = app.add_subcommand("fom-solve", "full-order solve at one beta");
    fom_cmd->add_option("problem", fom.problem, "case id (test1 test2 ex1 ex2 ex3 ex4) or problem .json")->required();
    fom_cmd->add_option("--beta", fom.beta, "fractional order")->required();
    add_grid_flags(fom_cmd, fom.grid);
    fom_cmd->add_option("--out", fom.out, "write the final state (FRMAT1)");
    fom_cmd->add_flag("--trajectory", fom.trajectory, "write every time level instead of the final state");

    SnapshotsArgs snap;
    auto* snap_cmd = app.add_subcommand("snapshots", "FOM snapshots at sample orders");
    snap_cmd->add_option("problem", snap.problem, "case id or problem .json")->required();
    snap_cmd->add_option("--samples", snap.samples, "comma-separated beta samples")->required();
    snap_cmd->add_option("--out", snap.out, "output directory")->required();
    add_grid_flags(snap_cmd, snap.grid);

    BuildRomArgs build;
    auto* build_cmd = app.add_subcommand("build-rom", "POD basis and DEIM operator from a snapshot manifest");
    build_cmd->add_option("manifest", build.manifest, "manifest.json")->required()->check(CLI::ExistingFile);
    build_cmd->add_option("--r", build.r, "POD dimension");
    build_cmd->add_option("--s", build.s, "DEIM dimension (0 disables)");

    RomSolveArgs rom;
    auto* rom_cmd = app.add_subcommand("rom-solve", "reduced solve at one beta");
    rom_cmd->add_option("manifest", rom.manifest, "manifest.json")->required()->check(CLI::ExistingFile);
    rom_cmd->add_option("--beta", rom.beta, "fractional order")->required();
    rom_cmd->add_option("--out", rom.out, "write the lifted final state (FRMAT1)");
    rom_cmd->add_flag("--full-evaluation", rom.full_evaluation, "evaluate the nonlinear term on every node");
    rom_cmd->add_flag("--compare-fom", rom.compare_fom, "also run the FOM and report the gap");

    IdentifyArgs ident;
    auto* ident_cmd = app.add_subcommand("identify", "recover beta from final-time data");
    ident_cmd->add_option("manifest", ident.manifest, "manifest.json")->required()->check(CLI::ExistingFile);
    ident_cmd->add_option("--data", ident.data, "observation vector (FRMAT1)");
    ident_cmd->add_option("--beta-star", ident.beta_star, "generate data from the FOM at this order");
    ident_cmd->add_option("--noise", ident.noise, "relative noise level in percent")->check(CLI::NonNegativeNumber);
    ident_cmd->add_option("--beta0", ident.config.beta0, "initial guess")->capture_default_str();
    ident_cmd->add_option("--forward", ident.forward, "rom or fom")->check(CLI::IsMember({"rom", "fom"}))->capture_default_str();
    ident_cmd->add_option("--alpha0", ident.config.alpha0, "initial regularisation")->capture_default_str();
    ident_cmd->add_option("--rho", ident.config.rho, "backtracking factor")->capture_default_str();
    ident_cmd->add_option("--sigma", ident.config.sigma, "Armijo constant")->capture_default_str();
    ident_cmd->add_option("--delta", ident.config.delta, "finite-difference increment")->capture_default_str();
    ident_cmd->add_option("--tol", ident.config.tol, "step tolerance")->capture_default_str();
    ident_cmd->add_option("--kmax", ident.config.kmax, "iteration cap")->capture_default_str();
    ident_cmd->add_flag("--unregularized", ident.unregularized, "d = -J^T r / J^T J");
    ident_cmd->add_option("--trace", ident.trace, "write the iteration trace (CSV)");
    ident_cmd->add_option("--result", ident.result, "write the result (JSON)");

    BenchArgs bench;
    auto* bench_cmd = app.add_subcommand("bench", "FOM vs ROM timing on a catalog case");
    bench_cmd->add_option("problem", bench.problem, "case id")->required();
    bench_cmd->add_option("--beta-star", bench.beta_star)->capture_default_str();
    bench_cmd->add_option("--beta0", bench.beta0)->capture_default_str();
    add_grid_flags(bench_cmd, bench.grid);

    ReproduceArgs repro;
    auto* repro_cmd = app.add_subcommand("reproduce-table", "recompute a published table and compare");
    repro_cmd->add_option("table", repro.table, "table id 1-8")->required()->check(CLI::Range(1, 8));
    repro_cmd->add_flag("--rom-only", repro.rom_only, "tables 7 and 8: skip the FOM runs");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*fom_cmd) return run_fom_solve(fom);
        if (*snap_cmd) return run_snapshots(snap);
        if (*build_cmd) return run_build_rom(build);
        if (*rom_cmd) return run_rom_solve(rom);
        if (*ident_cmd) return run_identify(ident, seed);
        if (*bench_cmd) return run_bench(bench);
        if (*repro_cmd) return run_reproduce_table(repro, seed);
    } catch (const fracrom::NumericalError& e) {
        std::fprintf(stderr, "numerical failure: %s\n", e.what());
        return 1;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const fracrom::FormatError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "failure: %s\n", e.what());
        return 1;
    }
    return 2;
}
