#include "fracrom/persistence.hpp"

#include <json.hpp>

#include <algorithm>
#include <bit>
#include <cctype>
#include <cinttypes>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <iterator>
#include <limits>
#include <sstream>

namespace fracrom {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr std::size_t header_size = 24;
constexpr char magic[6] = {'F', 'R', 'M', 'A', 'T', '1'};
constexpr std::byte kind_float64{0x01};
constexpr std::byte layout_row_major{0x00};

void put_u64(std::byte* out, std::uint64_t v) noexcept {
    for (int i = 0; i < 8; ++i) out[i] = static_cast<std::byte>((v >> (8 * i)) & 0xffu);
}

std::uint64_t get_u64(const std::byte* in) noexcept {
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= std::to_integer<std::uint64_t>(in[i]) << (8 * i);
    return v;
}

std::vector<std::byte> read_bytes(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("cannot open " + path.string());
    std::vector<char> raw((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    std::vector<std::byte> bytes(raw.size());
    std::memcpy(bytes.data(), raw.data(), raw.size());
    return bytes;
}

void write_bytes(const fs::path& path, std::span<const std::byte> bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw std::runtime_error("write failed for " + path.string());
}

std::string hex64(std::uint64_t v) {
    char buf[19];
    std::snprintf(buf, sizeof buf, "%016" PRIx64, v);
    return buf;
}

std::uint64_t parse_hex64(const std::string& s) {
    if (s.size() != 16 || !std::all_of(s.begin(), s.end(), [](char c) { return std::isxdigit(static_cast<unsigned char>(c)); })) {
        throw FormatError("bad checksum '" + s + "'");
    }
    return std::stoull(s, nullptr, 16);
}

std::string fmt17(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

std::uint64_t fnv1a64(std::span<const std::byte> bytes) noexcept {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (std::byte b : bytes) {
        h ^= std::to_integer<std::uint64_t>(b);
        h *= 0x100000001b3ull;
    }
    return h;
}

std::uint64_t file_checksum(const fs::path& path) { return fnv1a64(read_bytes(path)); }

std::vector<std::byte> encode_matrix(const Eigen::MatrixXd& a) {
    const auto rows = static_cast<std::uint64_t>(a.rows());
    const auto cols = static_cast<std::uint64_t>(a.cols());
    std::vector<std::byte> out(header_size + rows * cols * 8);
    std::memcpy(out.data(), magic, sizeof magic);
    out[6] = kind_float64;
    out[7] = layout_row_major;
    put_u64(out.data() + 8, rows);
    put_u64(out.data() + 16, cols);
    std::byte* p = out.data() + header_size;
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j, p += 8) put_u64(p, std::bit_cast<std::uint64_t>(a(i, j)));
    }
    return out;
}

Eigen::MatrixXd decode_matrix(std::span<const std::byte> bytes) {
    if (bytes.size() < header_size) throw FormatError("matrix file shorter than its 24-byte header");
    if (std::memcmp(bytes.data(), magic, sizeof magic) != 0) throw FormatError("bad magic, expected FRMAT1");
    if (bytes[6] != kind_float64) throw FormatError("unsupported element kind");
    if (bytes[7] != layout_row_major) throw FormatError("unsupported layout");
    const std::uint64_t rows = get_u64(bytes.data() + 8);
    const std::uint64_t cols = get_u64(bytes.data() + 16);
    constexpr auto max_index = static_cast<std::uint64_t>(std::numeric_limits<Eigen::Index>::max());
    if (rows > max_index || cols > max_index || (cols != 0 && rows > (max_index / 8) / cols)) {
        throw FormatError("matrix dimensions overflow");
    }
    const std::uint64_t payload = rows * cols * 8;
    if (bytes.size() - header_size != payload) {
        throw FormatError("payload is " + std::to_string(bytes.size() - header_size) + " bytes, header implies " +
                          std::to_string(payload));
    }
    Eigen::MatrixXd a(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    const std::byte* p = bytes.data() + header_size;
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j, p += 8) a(i, j) = std::bit_cast<double>(get_u64(p));
    }
    return a;
}

std::uint64_t write_matrix(const fs::path& path, const Eigen::MatrixXd& a) {
    const auto bytes = encode_matrix(a);
    write_bytes(path, bytes);
    return fnv1a64(bytes);
}

Eigen::MatrixXd read_matrix(const fs::path& path, std::optional<std::uint64_t> expected_checksum) {
    const auto bytes = read_bytes(path);
    if (expected_checksum && fnv1a64(bytes) != *expected_checksum) {
        throw FormatError("checksum mismatch for " + path.string());
    }
    try {
        return decode_matrix(bytes);
    } catch (const FormatError& e) {
        throw FormatError(path.string() + ": " + e.what());
    }
}

const FileRef* RunManifest::find(std::string_view role) const noexcept {
    const auto it = std::find_if(files.begin(), files.end(), [&](const FileRef& f) { return f.role == role; });
    return it == files.end() ? nullptr : &*it;
}

void RunManifest::set_file(FileRef ref) {
    const auto it = std::find_if(files.begin(), files.end(), [&](const FileRef& f) { return f.role == ref.role; });
    if (it == files.end()) files.push_back(std::move(ref));
    else *it = std::move(ref);
}

void write_manifest(const fs::path& path, const RunManifest& m) {
    json files = json::array();
    for (const auto& f : m.files) files.push_back({{"role", f.role}, {"path", f.path}, {"fnv1a64", hex64(f.checksum)}});
    json doc = {
        {"version", m.version},
        {"problem", m.problem},
        {"grid",
         {{"dimension", m.dimension}, {"n", m.n}, {"steps", m.steps}, {"h", m.h}, {"dt", m.dt}, {"final_time", m.final_time}}},
        {"samples", m.samples},
        {"rom", {{"pod_dim", m.pod_dim}, {"deim_dim", m.deim_dim}, {"requested_deim_dim", m.requested_deim_dim}}},
        {"tolerances", {{"newton", m.tolerances.newton}, {"pcg", m.tolerances.pcg}, {"rom_newton", m.tolerances.rom_newton}}},
        {"seed", m.seed ? json(*m.seed) : json(nullptr)},
        {"files", files},
    };
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << doc.dump(2) << '\n';
}

RunManifest read_manifest(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open manifest " + path.string());
    try {
        const json doc = json::parse(in);
        RunManifest m;
        m.version = doc.at("version").get<std::string>();
        m.problem = doc.at("problem").get<std::string>();
        const auto& g = doc.at("grid");
        m.dimension = g.at("dimension").get<int>();
        m.n = g.at("n").get<std::size_t>();
        m.steps = g.at("steps").get<std::size_t>();
        m.h = g.at("h").get<double>();
        m.dt = g.at("dt").get<double>();
        m.final_time = g.at("final_time").get<double>();
        m.samples = doc.at("samples").get<std::vector<double>>();
        const auto& rom = doc.at("rom");
        m.pod_dim = rom.at("pod_dim").get<std::size_t>();
        m.deim_dim = rom.at("deim_dim").get<std::size_t>();
        m.requested_deim_dim = rom.at("requested_deim_dim").get<std::size_t>();
        const auto& tol = doc.at("tolerances");
        m.tolerances = {tol.at("newton").get<double>(), tol.at("pcg").get<double>(), tol.at("rom_newton").get<double>()};
        if (!doc.at("seed").is_null()) m.seed = doc.at("seed").get<std::uint64_t>();
        for (const auto& f : doc.at("files")) {
            m.files.push_back({f.at("role").get<std::string>(), f.at("path").get<std::string>(),
                               parse_hex64(f.at("fnv1a64").get<std::string>())});
        }
        if (m.dimension != 1 && m.dimension != 2) throw FormatError("grid.dimension must be 1 or 2");
        return m;
    } catch (const json::exception& e) {
        throw FormatError("manifest " + path.string() + ": " + e.what());
    }
}

void validate_manifest(const RunManifest& m, const fs::path& base) {
    for (const auto& f : m.files) {
        const fs::path p = base / f.path;
        if (!fs::exists(p)) throw FormatError("manifest references missing file " + p.string());
        if (file_checksum(p) != f.checksum) throw FormatError("checksum mismatch for " + p.string());
    }
}

void write_trace(const fs::path& path, const IdentificationResult& result) {
    if (result.trace.empty()) throw std::invalid_argument("write_trace: trace has no rows");
    std::ostringstream os;
    os << "k,beta,objective,step,backtracks\n";
    for (const auto& r : result.trace) {
        os << r.k << ',' << fmt17(r.beta) << ',' << fmt17(r.objective) << ',' << fmt17(r.step) << ',' << r.backtracks
           << '\n';
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << os.str();
}

std::vector<TraceRow> read_trace(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open trace " + path.string());
    std::string line;
    if (!std::getline(in, line) || line != "k,beta,objective,step,backtracks") throw FormatError("bad trace header");
    std::vector<TraceRow> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        TraceRow r{};
        if (std::sscanf(line.c_str(), "%zu,%lf,%lf,%lf,%zu", &r.k, &r.beta, &r.objective, &r.step, &r.backtracks) != 5) {
            throw FormatError("bad trace row '" + line + "'");
        }
        rows.push_back(r);
    }
    if (rows.empty()) throw FormatError("trace has no rows");
    return rows;
}

CustomProblem parse_custom_problem(std::string_view text) {
    try {
        const json doc = json::parse(text);
        CustomProblem def;
        def.dimension = doc.value("dimension", 1);
        if (def.dimension != 1 && def.dimension != 2) throw std::invalid_argument("custom problem: dimension must be 1 or 2");
        if (doc.contains("domain")) {
            for (const auto& iv : doc.at("domain")) def.domain.push_back({iv.at(0).get<double>(), iv.at(1).get<double>()});
        } else {
            def.domain.assign(static_cast<std::size_t>(def.dimension), Interval{0.0, 1.0});
        }
        def.n = doc.value("n", def.n);
        def.final_time = doc.value("final_time", def.final_time);
        def.steps = doc.value("steps", def.steps);
        def.mu_x = doc.value("mu_x", def.mu_x);
        def.mu_y = doc.value("mu_y", def.mu_y);
        def.reaction = doc.value("reaction", def.reaction);
        def.reaction_derivative = doc.value("reaction_derivative", def.reaction_derivative);
        def.source = doc.value("source", def.source);
        def.initial = doc.value("initial", def.initial);
        def.exact = doc.value("exact", def.exact);
        return def;
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("custom problem: ") + e.what());
    }
}

CustomProblem load_custom_problem(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open problem file " + path.string());
    std::ostringstream os;
    os << in.rdbuf();
    return parse_custom_problem(os.str());
}

}  // namespace fracrom
