#include "common.hpp"

#include <sstream>
#include <stdexcept>

namespace fracrom::cli {

CaseGrid GridFlags::to_case_grid() const {
    CaseGrid g;
    g.n = n;
    g.steps = steps;
    g.final_time = final_time;
    return g;
}

ProblemHandle resolve_problem(const std::string& arg, const GridFlags& flags) {
    ProblemHandle h;
    if (fs::path(arg).extension() == ".json") {
        CustomProblem def = load_custom_problem(arg);
        if (flags.n) def.n = *flags.n;
        if (flags.steps) def.steps = *flags.steps;
        if (flags.final_time) def.final_time = *flags.final_time;
        h.id = "custom";
        h.exact = custom_exact(def);
        h.factory = [def](FractionalOrder b) { return make_custom_problem(def, b); };
        h.samples = {0.2, 0.4, 0.6, 0.8};
        h.pod_dim = 4;
        h.deim_dim = def.reaction.empty() && def.source.empty() ? 0 : 10;
        h.definition = fs::path(arg);
        return h;
    }
    const BenchmarkCase& c = benchmark_case(arg);
    const CaseGrid grid = flags.to_case_grid();
    h.id = c.id;
    h.exact = c.exact;
    h.factory = [&c, grid](FractionalOrder b) { return c.make(b, grid); };
    h.samples.assign(c.samples.begin(), c.samples.end());
    h.pod_dim = c.pod_dim;
    h.deim_dim = c.deim_dim;
    return h;
}

ProblemHandle problem_from_manifest(const RunManifest& m, const fs::path& dir) {
    GridFlags flags{m.n, m.steps, m.final_time};
    if (m.problem == "custom") {
        const FileRef* ref = m.find("problem");
        if (!ref) throw FormatError("custom manifest has no 'problem' file");
        return resolve_problem((dir / ref->path).string(), flags);
    }
    return resolve_problem(m.problem, flags);
}

RunManifest load_manifest(const fs::path& path) {
    RunManifest m = read_manifest(path);
    validate_manifest(m, path.parent_path());
    return m;
}

Eigen::MatrixXd read_ref(const RunManifest& m, const fs::path& dir, const std::string& role) {
    const FileRef* ref = m.find(role);
    if (!ref) throw FormatError("manifest has no '" + role + "' file");
    return read_matrix(dir / ref->path, ref->checksum);
}

OfflineModel load_offline_model(const RunManifest& m, const fs::path& dir, const ProblemHandle& problem) {
    if (m.pod_dim == 0 || !m.find("phi")) {
        throw std::invalid_argument("manifest has no reduced basis; run build-rom first");
    }
    OfflineModel model;
    model.phi.vectors = read_ref(m, dir, "phi");
    if (const auto sigma = read_ref(m, dir, "sigma"); sigma.size() > 0) {
        model.phi.singular_values.assign(sigma.data(), sigma.data() + sigma.size());
    }
    model.requested_deim_dim = m.requested_deim_dim;

    const auto spec = problem.factory(FractionalOrder(0.5));
    if (static_cast<std::size_t>(model.phi.vectors.rows()) != spec.grid.unknowns()) {
        throw FormatError("basis has " + std::to_string(model.phi.vectors.rows()) + " rows, grid has " +
                          std::to_string(spec.grid.unknowns()) + " unknowns");
    }
    const auto a = assemble_stiffness(spec.mu, spec.grid);

    std::optional<DeimOperator> deim;
    if (m.deim_dim > 0) {
        ReducedBasis psi;
        psi.vectors = read_ref(m, dir, "psi");
        const Eigen::MatrixXd idx = read_ref(m, dir, "deim_indices");
        std::vector<std::size_t> indices;
        for (Eigen::Index i = 0; i < idx.size(); ++i) {
            const double v = idx(i);
            if (!(v >= 0.0) || v != static_cast<double>(static_cast<std::size_t>(v))) {
                throw FormatError("deim_indices holds a non-integer entry");
            }
            indices.push_back(static_cast<std::size_t>(v));
        }
        deim.emplace(build_deim_operator(model.phi, psi, indices));
        model.psi = std::move(psi);
    }
    model.rom = build_rom(a, model.phi, std::move(deim));
    return model;
}

std::vector<double> parse_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(item, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != item.size()) throw std::invalid_argument("not a number: '" + item + "'");
        out.push_back(v);
    }
    if (out.empty()) throw std::invalid_argument("empty list");
    return out;
}

}  // namespace fracrom::cli
