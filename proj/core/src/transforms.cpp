#include "dlab/transforms.hpp"

#include <cmath>

#include "dlab/errors.hpp"
#include "dlab/fft.hpp"

namespace dlab {

namespace {

void require_resolved(const Field& f, const char* who, const char* param) {
    if (spectral_tail_fraction(f) > 1e-8)
        throw resolution_error(std::string(who) + ": result under-resolved (" +
                               param + ")");
}

} // namespace

Field modulate(const Field& u, const ModulationParams& p) {
    if (!(p.tau > 0.0))
        throw invalid_argument_error("modulate: tau must be positive");
    const Grid1D& g = u.grid;
    std::vector<double> pts(g.num_points);
    for (std::size_t j = 0; j < g.num_points; ++j)
        pts[j] = (g.x(j) - p.x0) / p.tau;
    auto vals = interp_eval(u, pts);
    Field out(g);
    for (std::size_t j = 0; j < g.num_points; ++j)
        out[j] = p.A * std::polar(1.0, p.M * g.x(j)) * vals[j];
    require_resolved(out, "modulate", "tau or M");
    return out;
}

ModulationRatio modulation_bound_ratio(const Field& u, const ModulationParams& p,
                                       SobolevIndex s, double sigma) {
    int regime = 0;
    if (s.s >= 0.0 && p.M * p.tau >= 1.0)
        regime = 1;
    else if (s.s < 0.0 && sigma >= -s.s &&
             p.tau * std::pow(p.M, 1.0 + s.s / sigma) >= 1.0)
        regime = 2;
    else if (p.M * p.tau >= 1.0)
        regime = 3;
    else
        throw domain_error("modulation_bound_ratio: no hypothesis regime applies");
    Field v = modulate(u, p);
    double denom_norm = sobolev_norm(u, std::max(s.s, sigma));
    double denom = std::abs(p.A) * std::sqrt(p.tau) * std::pow(p.M, s.s) * denom_norm;
    return {sobolev_norm(v, s) / denom, regime};
}

Field galilean_boost(const Field& u, double alpha, double t) {
    // spatial shift x -> x + alpha t through the Fourier phase, then the
    // pointwise modulation phases
    auto bins = spectrum(u);
    for (std::size_t j = 0; j < u.grid.num_points; ++j)
        bins[j] *= std::polar(1.0, u.grid.xi(j) * alpha * t);
    Field shifted = field_from_spectrum(u.grid, std::move(bins));
    Field out(u.grid);
    const double tphase = alpha * alpha * t / 4.0;
    for (std::size_t j = 0; j < u.grid.num_points; ++j)
        out[j] = std::polar(1.0, 0.5 * alpha * u.grid.x(j) + tphase) * shifted[j];
    require_resolved(out, "galilean_boost", "alpha");
    return out;
}

namespace {

ScaledField scale_generic(const Field& u, double lambda, double t_in,
                          double amp_power, double time_power) {
    if (lambda < 1.0 / 256.0 || lambda > 256.0)
        throw invalid_argument_error("scale: lambda outside [2^-8, 2^8]");
    // sampling points follow the dilation exactly: x'_j = lambda x_j, so the
    // rescaled field is pointwise on a grid with box_length * lambda
    Grid1D g2(u.grid.num_points, u.grid.box_length * lambda);
    Field out(g2, u.reality_tag);
    const double amp = std::pow(lambda, amp_power);
    for (std::size_t j = 0; j < u.grid.num_points; ++j) out[j] = amp * u[j];
    return {std::move(out), t_in * std::pow(lambda, time_power)};
}

} // namespace

ScaledField scale_nls(const Field& u, double lambda, double t_in) {
    return scale_generic(u, lambda, t_in, -1.0, 2.0);
}

ScaledField scale_mkdv(const Field& u, double lambda, double t_in) {
    return scale_generic(u, lambda, t_in, -1.0, 3.0);
}

ScaledField scale_kdv(const Field& u, double lambda, double t_in) {
    return scale_generic(u, lambda, t_in, -2.0, 3.0);
}

PcForwardResult pc_forward(const Field& u, double t) {
    if (t < 0.0) throw domain_error("pc_forward: t must be nonnegative");
    const double s = 1.0 / (t + 1.0);
    if (s < 1.0 / 64.0 && u.grid.num_points <= (1u << 14))
        throw resolution_error("pc_forward: s below supported minimum 1/64");
    Grid1D g2(u.grid.num_points, u.grid.box_length * s);
    Field v(g2);
    const double rs = std::sqrt(s);
    for (std::size_t j = 0; j < g2.num_points; ++j) {
        double y = g2.x(j); // equals x_j * s
        v[j] = std::polar(1.0, y * y / (4.0 * s)) * u[j] / rs;
    }
    require_resolved(v, "pc_forward", "t");
    return {std::move(v), s};
}

PcInverseResult pc_inverse(const Field& v, double s) {
    if (!(s > 0.0) || s > 1.0)
        throw domain_error("pc_inverse: s must lie in (0,1]");
    const double t = 1.0 / s - 1.0;
    Grid1D g2(v.grid.num_points, v.grid.box_length / s);
    Field u(g2);
    const double rs = std::sqrt(s);
    for (std::size_t j = 0; j < g2.num_points; ++j) {
        double x = g2.x(j);
        u[j] = rs * std::polar(1.0, -x * x / (4.0 * (t + 1.0))) * v[j];
    }
    require_resolved(u, "pc_inverse", "s");
    return {std::move(u), t};
}

namespace {

Field embed_on_points(const EmbedParams& p, const Grid1D& target,
                      const std::vector<cplx>& uvals) {
    const double amp = std::sqrt(2.0 / (3.0 * p.N));
    Field out(target, true);
    for (std::size_t j = 0; j < target.num_points; ++j) {
        double xp = target.x(j);
        // lab phase N x + N^3 t with x = x' - 3N^2 t
        double phase = p.N * xp - 2.0 * p.N * p.N * p.N * p.t;
        out[j] = cplx(amp * (std::polar(1.0, phase) * uvals[j]).real(), 0.0);
    }
    return out;
}

} // namespace

Field nls_to_mkdv_embed(const Field& u, const EmbedParams& p) {
    // derived target: box stretched by sqrt(3N), point count raised until the
    // third harmonic sits comfortably under Nyquist
    const double stretch = std::sqrt(3.0 * p.N);
    const double box = u.grid.box_length * stretch;
    std::size_t n = u.grid.num_points;
    while (std::numbers::pi * double(n) / box <= 4.5 * p.N) n *= 2;
    return nls_to_mkdv_embed(u, p, Grid1D(n, box));
}

Field nls_to_mkdv_embed(const Field& u, const EmbedParams& p, const Grid1D& target) {
    const double stretch = std::sqrt(3.0 * p.N);
    if (target.xi_max() <= 3.0 * p.N)
        throw resolution_error("nls_to_mkdv_embed: third harmonic above Nyquist");
    if (target.box_length > u.grid.box_length * stretch * (1.0 + 1e-12))
        throw resolution_error("nls_to_mkdv_embed: target box exceeds source support");
    std::vector<double> ypts(target.num_points);
    for (std::size_t j = 0; j < target.num_points; ++j)
        ypts[j] = target.x(j) / stretch;
    auto uvals = interp_eval(u, ypts);
    Field out = embed_on_points(p, target, uvals);
    require_resolved(out, "nls_to_mkdv_embed", "N");
    return out;
}

} // namespace dlab
