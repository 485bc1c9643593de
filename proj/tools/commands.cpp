#include "commands.hpp"

#include "fracrom/experiments.hpp"
#include "fracrom/rom.hpp"

#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace fracrom::cli {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

Eigen::MatrixXd column(std::span<const double> v) {
    return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

void report_error(const ProblemHandle& problem, const DiscretizationGrid& grid, std::span<const double> u,
                  double beta, const char* label) {
    if (!problem.exact) return;
    const auto exact = sample_exact(problem.exact, grid, grid.final_time(), beta);
    std::printf("%s error at t=%g: %.6e\n", label, grid.final_time(), discrete_l2_error(u, exact, grid));
}

void print_grid(const DiscretizationGrid& g) {
    std::printf("grid: dim=%d n=%zu unknowns=%zu h=%.6g M=%zu dt=%.6g T=%g\n", g.dimension(), g.nodes_per_axis(),
                g.unknowns(), g.h(0), g.steps(), g.dt(), g.final_time());
}

}  // namespace

int run_fom_solve(const FomSolveArgs& args) {
    const auto problem = resolve_problem(args.problem, args.grid);
    const auto spec = problem.factory(FractionalOrder(args.beta));
    print_grid(spec.grid);

    FomStats stats;
    const auto t0 = Clock::now();
    const auto traj = fom_solve(spec, {}, &stats);
    const double secs = seconds_since(t0);

    report_error(problem, spec.grid, traj.final_state(), args.beta, "FOM");
    std::printf("linear solves: %zu  newton iterations: %zu  pcg iterations: %zu\n", stats.linear_solves,
                stats.newton_iterations, stats.pcg_iterations);
    std::printf("wall time: %.3f s\n", secs);

    if (!args.out.empty()) {
        Eigen::MatrixXd out;
        if (args.trajectory) {
            out.resize(static_cast<Eigen::Index>(traj.dim()), static_cast<Eigen::Index>(traj.size()));
            for (std::size_t m = 0; m < traj.size(); ++m) out.col(static_cast<Eigen::Index>(m)) = column(traj[m]);
        } else {
            out = column(traj.final_state());
        }
        const auto sum = write_matrix(args.out, out);
        std::printf("wrote %s (%td x %td, fnv1a64 %016llx)\n", args.out.c_str(), out.rows(), out.cols(),
                    static_cast<unsigned long long>(sum));
    }
    return 0;
}

int run_snapshots(const SnapshotsArgs& args) {
    const auto samples = parse_list(args.samples);
    for (double b : samples) FractionalOrder{b};  // validate before any solve
    const auto problem = resolve_problem(args.problem, args.grid);
    const auto spec = problem.factory(FractionalOrder(samples.front()));
    const bool nonlinear = spec.reaction.has_value() || static_cast<bool>(spec.source);
    print_grid(spec.grid);

    const fs::path dir(args.out);
    fs::create_directories(dir);

    const auto t0 = Clock::now();
    const auto set = generate_snapshots(problem.factory, samples, nonlinear);
    std::printf("%zu FOM solves in %.3f s\n", samples.size(), seconds_since(t0));

    RunManifest m;
    m.problem = problem.id;
    m.dimension = spec.grid.dimension();
    m.n = spec.grid.nodes_per_axis();
    m.steps = spec.grid.steps();
    m.h = spec.grid.h(0);
    m.dt = spec.grid.dt();
    m.final_time = spec.grid.final_time();
    m.samples = samples;
    if (problem.definition) {
        fs::copy_file(*problem.definition, dir / "problem.json", fs::copy_options::overwrite_existing);
        m.set_file({"problem", "problem.json", file_checksum(dir / "problem.json")});
    }
    m.set_file({"snapshots", "snapshots.frmat", write_matrix(dir / "snapshots.frmat", set.states.data)});
    std::printf("snapshots: %td x %td\n", set.states.data.rows(), set.states.data.cols());
    if (set.nonlinear) {
        m.set_file({"nonlinear", "nonlinear.frmat", write_matrix(dir / "nonlinear.frmat", set.nonlinear->data)});
        std::printf("nonlinear snapshots: %td x %td\n", set.nonlinear->data.rows(), set.nonlinear->data.cols());
    }
    write_manifest(dir / "manifest.json", m);
    std::printf("wrote %s\n", (dir / "manifest.json").string().c_str());
    return 0;
}

int run_build_rom(const BuildRomArgs& args) {
    const fs::path path(args.manifest);
    const fs::path dir = path.parent_path();
    RunManifest m = load_manifest(path);
    const auto problem = problem_from_manifest(m, dir);
    const std::size_t r = args.r.value_or(problem.pod_dim);
    const std::size_t s = args.s.value_or(problem.deim_dim);

    const Eigen::MatrixXd states = read_ref(m, dir, "snapshots");
    const std::size_t full = static_cast<std::size_t>(std::min(states.rows(), states.cols()));
    const auto spectrum = compute_basis(states, full).singular_values;
    const std::size_t rank = numerical_rank(spectrum);
    if (r == 0 || r > rank) {
        throw std::invalid_argument("r = " + std::to_string(r) + " exceeds the snapshot rank " + std::to_string(rank));
    }

    std::printf("singular values (sigma_i / sigma_1):");
    for (std::size_t i = 0; i < std::min<std::size_t>(spectrum.size(), 12); ++i) {
        std::printf(" %.3e", spectrum[i] / spectrum[0]);
    }
    std::printf("\nnumerical rank %zu, 1-1e-10 energy dimension %zu\n", rank, energy_dimension(spectrum));

    std::optional<Eigen::MatrixXd> nonlinear;
    if (s > 0) {
        if (!m.find("nonlinear")) throw std::invalid_argument("s > 0 but the manifest has no nonlinear snapshots");
        nonlinear = read_ref(m, dir, "nonlinear");
    }
    SnapshotMatrix u{states, {}, SnapshotKind::state};
    std::optional<SnapshotMatrix> f;
    if (nonlinear) f = SnapshotMatrix{*nonlinear, {}, SnapshotKind::nonlinear};

    const auto spec = problem.factory(FractionalOrder(m.samples.front()));
    const auto a = assemble_stiffness(spec.mu, spec.grid);
    const OfflineModel model = build_offline_model(a, u, f ? &*f : nullptr, r, s);

    const double proj = truncation_error(states, model.phi);
    const double tail = discarded_energy(model.phi);
    const double total = states.squaredNorm();
    std::printf("projection error %.6e, discarded energy %.6e (difference %.2e of ||U||_F^2)\n", proj, tail,
                std::abs(proj - tail) / total);

    Eigen::VectorXd sigma = Eigen::Map<const Eigen::VectorXd>(model.phi.singular_values.data(),
                                                              static_cast<Eigen::Index>(model.phi.singular_values.size()));
    m.set_file({"phi", "phi.frmat", write_matrix(dir / "phi.frmat", model.phi.vectors)});
    m.set_file({"sigma", "sigma.frmat", write_matrix(dir / "sigma.frmat", sigma)});
    m.pod_dim = r;
    m.requested_deim_dim = s;
    m.deim_dim = 0;
    if (model.psi && model.rom.deim) {
        const auto& idx = model.rom.deim->indices();
        Eigen::VectorXd iv(static_cast<Eigen::Index>(idx.size()));
        for (std::size_t i = 0; i < idx.size(); ++i) iv(static_cast<Eigen::Index>(i)) = static_cast<double>(idx[i]);
        m.set_file({"psi", "psi.frmat", write_matrix(dir / "psi.frmat", model.psi->vectors)});
        m.set_file({"deim_indices", "deim_indices.frmat", write_matrix(dir / "deim_indices.frmat", iv)});
        m.deim_dim = idx.size();
        std::printf("DEIM: s = %zu (requested %zu), points (1-based):", idx.size(), s);
        for (auto i : idx) std::printf(" %zu", i + 1);
        std::printf("\n");
    }
    write_manifest(path, m);
    std::printf("r = %zu, updated %s\n", r, path.string().c_str());
    return 0;
}

int run_rom_solve(const RomSolveArgs& args) {
    const fs::path path(args.manifest);
    const fs::path dir = path.parent_path();
    const RunManifest m = load_manifest(path);
    const auto problem = problem_from_manifest(m, dir);
    const auto model = load_offline_model(m, dir, problem);
    const auto spec = problem.factory(FractionalOrder(args.beta));

    RomOptions options;
    options.newton_tol = m.tolerances.rom_newton;
    options.full_evaluation = args.full_evaluation;
    RomStats stats;
    const auto t0 = Clock::now();
    const auto traj = rom_solve(model.rom, spec, options, &stats);
    const double secs = seconds_since(t0);
    const auto u = traj.lift_final();

    std::printf("ROM r=%zu s=%zu\n", model.rom.dim(), model.rom.deim ? model.rom.deim->points() : 0);
    report_error(problem, spec.grid, u, args.beta, "ROM");
    std::printf("newton iterations: %zu  factorizations: %zu  pointwise evaluations: %zu\n", stats.newton_iterations,
                stats.factorizations, stats.pointwise_evaluations);
    std::printf("wall time: %.4f s\n", secs);
    if (args.compare_fom) {
        const auto fom = fom_solve(spec);
        report_error(problem, spec.grid, fom.final_state(), args.beta, "FOM");
        std::printf("||u_rom - u_fom|| = %.6e\n", discrete_l2_error(u, fom.final_state(), spec.grid));
    }
    if (!args.out.empty()) write_matrix(args.out, column(u));
    return 0;
}

int run_identify(const IdentifyArgs& args, std::uint64_t seed) {
    const fs::path path(args.manifest);
    const fs::path dir = path.parent_path();
    const RunManifest m = load_manifest(path);
    const auto problem = problem_from_manifest(m, dir);
    if (args.forward != "rom" && args.forward != "fom") throw std::invalid_argument("--forward must be rom or fom");
    if (args.data.empty() && !args.beta_star) throw std::invalid_argument("give --data or --beta-star");

    LmConfig config = args.config;
    config.regularized = !args.unregularized;
    config.validate();

    FomOptions fom_options;
    fom_options.newton_tol = m.tolerances.newton;
    fom_options.pcg.tol = m.tolerances.pcg;
    FomForward fom(problem.factory, fom_options);

    ObservationData data;
    if (!args.data.empty()) {
        const Eigen::MatrixXd g = read_matrix(args.data);
        if (g.size() != static_cast<Eigen::Index>(fom.dim())) {
            throw std::invalid_argument("data has " + std::to_string(g.size()) + " values, grid has " +
                                        std::to_string(fom.dim()));
        }
        data.g.assign(g.data(), g.data() + g.size());
        if (args.noise > 0.0) data = add_noise(data.g, args.noise, seed);
    } else {
        data = add_noise(fom.final_state(FractionalOrder(*args.beta_star)), args.noise, seed);
    }

    std::optional<OfflineModel> model;
    std::optional<RomForward> rom;
    if (args.forward == "rom") {
        model = load_offline_model(m, dir, problem);
        RomOptions ro;
        ro.newton_tol = m.tolerances.rom_newton;
        rom.emplace(problem.factory, model->rom, ro);
    }
    const ForwardModel& forward = rom ? static_cast<const ForwardModel&>(*rom) : fom;
    const auto res = identify(config, data, forward);

    std::printf("forward: %s  beta0: %g  noise: %g%%  seed: %llu\n", args.forward.c_str(), config.beta0, args.noise,
                static_cast<unsigned long long>(seed));
    std::printf("beta_inv = %.10f\n", res.beta_inv);
    if (args.beta_star) std::printf("|beta* - beta_inv| = %.4e\n", std::abs(*args.beta_star - res.beta_inv));
    std::printf("iterations = %zu (loop passes %zu)%s%s\n", res.iterations, res.loop_passes,
                res.converged ? "" : " (not converged)",
                res.line_search_stalled ? " (line search stalled)" : "");
    std::printf("forward solves = %zu\nwall time = %.4f s\n", res.forward_solves, res.wall_time);

    if (!args.trace.empty()) write_trace(args.trace, res);
    if (!args.result.empty()) {
        nlohmann::json doc = {
            {"forward", args.forward},
            {"beta0", config.beta0},
            {"noise_percent", args.noise},
            {"seed", seed},
            {"beta_inv", res.beta_inv},
            {"iterations", res.iterations},
            {"loop_passes", res.loop_passes},
            {"converged", res.converged},
            {"line_search_stalled", res.line_search_stalled},
            {"forward_solves", res.forward_solves},
            {"beta_star", args.beta_star ? nlohmann::json(*args.beta_star) : nlohmann::json(nullptr)},
        };
        std::ofstream(args.result, std::ios::trunc) << doc.dump(2) << '\n';
    }
    return res.converged ? 0 : 1;
}

int run_bench(const BenchArgs& args) {
    const auto& c = benchmark_case(args.problem);
    const IdentificationBench bench(c, args.grid.to_case_grid(), args.beta_star);
    const auto spec = case_factory(c, args.grid.to_case_grid())(FractionalOrder(args.beta0));
    print_grid(spec.grid);
    std::printf("offline: %.3f s (r=%zu, s=%zu)\n", bench.offline_seconds(), bench.offline().rom.dim(),
                bench.offline().rom.deim ? bench.offline().rom.deim->points() : 0);

    FomStats fs;
    RomStats rs;
    auto t0 = Clock::now();
    fom_solve(spec, {}, &fs);
    const double fom_once = seconds_since(t0);
    t0 = Clock::now();
    rom_solve(bench.offline().rom, spec, {}, &rs);
    const double rom_once = seconds_since(t0);
    std::printf("single solve  FOM %.4f s (linear solves %zu, newton %zu, pcg %zu)\n", fom_once, fs.linear_solves,
                fs.newton_iterations, fs.pcg_iterations);
    std::printf("              ROM %.4f s (newton %zu, factorizations %zu, pointwise evals %zu)\n", rom_once,
                rs.newton_iterations, rs.factorizations, rs.pointwise_evaluations);

    const auto fom_res = bench.run(args.beta0, bench.clean_data(), ForwardKind::fom);
    const auto rom_res = bench.run(args.beta0, bench.clean_data(), ForwardKind::rom);
    std::printf("identify FOM: beta_inv %.10f  itr %zu (passes %zu)  solves %zu  %.3f s\n", fom_res.beta_inv, fom_res.iterations, fom_res.loop_passes,
                fom_res.forward_solves, fom_res.wall_time);
    std::printf("identify ROM: beta_inv %.10f  itr %zu (passes %zu)  solves %zu  %.3f s\n", rom_res.beta_inv, rom_res.iterations, rom_res.loop_passes,
                rom_res.forward_solves, rom_res.wall_time);
    std::printf("online speedup: %.1fx\n", fom_res.wall_time / rom_res.wall_time);
    return 0;
}

}  // namespace fracrom::cli
