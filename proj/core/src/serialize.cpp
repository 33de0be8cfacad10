#include "dlab/serialize.hpp"

#include <bit>
#include <cinttypes>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include "dlab/errors.hpp"

static_assert(std::endian::native == std::endian::little,
              "binary dumps assume a little-endian host");

namespace dlab {

namespace {

std::ofstream open_out(const std::filesystem::path& p, std::ios_base::openmode m) {
    std::ofstream os(p, m);
    if (!os) throw io_error("cannot open for writing: " + p.string());
    return os;
}

std::ifstream open_in(const std::filesystem::path& p, std::ios_base::openmode m) {
    std::ifstream is(p, m);
    if (!is) throw io_error("cannot open for reading: " + p.string());
    return is;
}

std::string fmt17(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace

void write_field_csv(const Field& f, const std::filesystem::path& path) {
    auto os = open_out(path, std::ios_base::out);
    os << "x,re,im\n";
    for (std::size_t j = 0; j < f.size(); ++j)
        os << fmt17(f.grid.x(j)) << ',' << fmt17(f[j].real()) << ','
           << fmt17(f[j].imag()) << '\n';
    if (!os) throw io_error("write failed: " + path.string());
}

Field read_field_csv(const std::filesystem::path& path) {
    auto is = open_in(path, std::ios_base::in);
    std::string line;
    if (!std::getline(is, line) || line.rfind("x,re,im", 0) != 0)
        throw io_error("bad CSV header: " + path.string());
    std::vector<double> xs;
    std::vector<cplx> vals;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        double x, re, im;
        if (std::sscanf(line.c_str(), "%lg,%lg,%lg", &x, &re, &im) != 3)
            throw io_error("bad CSV row: " + path.string());
        xs.push_back(x);
        vals.push_back({re, im});
    }
    if (xs.size() < 8) throw io_error("too few CSV rows: " + path.string());
    double dx = xs[1] - xs[0];
    Field f(Grid1D(xs.size(), dx * double(xs.size())));
    f.samples = std::move(vals);
    return f;
}

void write_field_binary(const Field& f, const std::filesystem::path& path) {
    auto os = open_out(path, std::ios_base::out | std::ios_base::binary);
    std::uint64_t n = f.size();
    double L = f.grid.box_length;
    os.write(reinterpret_cast<const char*>(&n), sizeof n);
    os.write(reinterpret_cast<const char*>(&L), sizeof L);
    // std::complex<double> is layout-compatible with double[2]
    os.write(reinterpret_cast<const char*>(f.samples.data()),
             std::streamsize(n * 2 * sizeof(double)));
    if (!os) throw io_error("write failed: " + path.string());
}

Field read_field_binary(const std::filesystem::path& path) {
    auto is = open_in(path, std::ios_base::in | std::ios_base::binary);
    std::uint64_t n = 0;
    double L = 0.0;
    is.read(reinterpret_cast<char*>(&n), sizeof n);
    is.read(reinterpret_cast<char*>(&L), sizeof L);
    if (!is || n == 0 || n > (1u << 26))
        throw io_error("bad binary header: " + path.string());
    Field f(Grid1D(std::size_t(n), L));
    is.read(reinterpret_cast<char*>(f.samples.data()),
            std::streamsize(n * 2 * sizeof(double)));
    if (!is) throw io_error("truncated binary dump: " + path.string());
    return f;
}

void write_kv(const std::map<std::string, std::string>& kv,
              const std::filesystem::path& path) {
    auto os = open_out(path, std::ios_base::out);
    for (const auto& [k, v] : kv) os << k << '=' << v << '\n';
    if (!os) throw io_error("write failed: " + path.string());
}

std::map<std::string, std::string> read_kv(const std::filesystem::path& path) {
    auto is = open_in(path, std::ios_base::in);
    std::map<std::string, std::string> kv;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw io_error("bad key=value line in " + path.string() + ": " + line);
        kv[line.substr(0, eq)] = line.substr(eq + 1);
    }
    return kv;
}

namespace {

const char* kind_name(EqKind k) {
    switch (k) {
        case EqKind::NLS: return "NLS";
        case EqKind::SMALL_DISP_NLS: return "SMALL_DISP_NLS";
        case EqKind::MKDV: return "MKDV";
        case EqKind::KDV: return "KDV";
        case EqKind::MKDV_SYSTEM: return "MKDV_SYSTEM";
        default: return "PC_NLS";
    }
}

EqKind kind_from(const std::string& s) {
    for (EqKind k : {EqKind::NLS, EqKind::SMALL_DISP_NLS, EqKind::MKDV,
                     EqKind::KDV, EqKind::MKDV_SYSTEM, EqKind::PC_NLS})
        if (s == kind_name(k)) return k;
    throw io_error("unknown equation kind: " + s);
}

std::string sample_name(std::size_t i, std::size_t c) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "sample_%04zu_c%zu.bin", i, c);
    return buf;
}

} // namespace

void write_trajectory(const Trajectory& traj, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    std::map<std::string, std::string> kv;
    kv["equation"] = kind_name(traj.equation.kind);
    kv["delta"] = fmt17(traj.equation.delta);
    kv["frame_velocity"] = fmt17(traj.equation.frame_velocity);
    kv["step_size"] = fmt17(traj.step_size);
    kv["scheme_order"] = std::to_string(traj.scheme_order);
    kv["arity"] = std::to_string(traj.equation.field_arity());
    kv["num_samples"] = std::to_string(traj.samples.size());
    for (std::size_t i = 0; i < traj.samples.size(); ++i) {
        char key[24];
        std::snprintf(key, sizeof key, "time_%04zu", i);
        kv[key] = fmt17(traj.samples[i].first);
        for (std::size_t c = 0; c < traj.samples[i].second.size(); ++c)
            write_field_binary(traj.samples[i].second[c], dir / sample_name(i, c));
    }
    write_kv(kv, dir / "manifest.txt");
}

Trajectory read_trajectory(const std::filesystem::path& dir) {
    auto kv = read_kv(dir / "manifest.txt");
    auto need = [&](const char* k) -> const std::string& {
        auto it = kv.find(k);
        if (it == kv.end())
            throw io_error(std::string("manifest missing key: ") + k);
        return it->second;
    };
    Trajectory traj;
    traj.equation.kind = kind_from(need("equation"));
    traj.equation.delta = std::stod(need("delta"));
    traj.equation.frame_velocity = std::stod(need("frame_velocity"));
    traj.step_size = std::stod(need("step_size"));
    traj.scheme_order = std::stoi(need("scheme_order"));
    std::size_t arity = std::stoul(need("arity"));
    std::size_t ns = std::stoul(need("num_samples"));
    for (std::size_t i = 0; i < ns; ++i) {
        char key[24];
        std::snprintf(key, sizeof key, "time_%04zu", i);
        State st;
        for (std::size_t c = 0; c < arity; ++c)
            st.push_back(read_field_binary(dir / sample_name(i, c)));
        traj.samples.emplace_back(std::stod(need(key)), std::move(st));
    }
    return traj;
}

} // namespace dlab
