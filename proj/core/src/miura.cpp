#include "dlab/miura.hpp"

#include <cmath>

#include "dlab/errors.hpp"
#include "dlab/spectral.hpp"

namespace dlab {

Field miura(const Field& v, bool focusing) {
    Field sq = dealiased_product(v, v);
    Field out = spectral_derivative(v, 1);
    const cplx c = focusing ? cplx(0.0, 1.0) : cplx(1.0, 0.0);
    for (std::size_t j = 0; j < out.size(); ++j) out[j] += c * sq[j];
    out.reality_tag = v.reality_tag && !focusing;
    return out;
}

Field gen_miura(const MiuraPair& p) {
    if (p.v.grid.num_points != p.w.grid.num_points ||
        p.v.grid.box_length != p.w.grid.box_length)
        throw invalid_argument_error("gen_miura: components on different grids");
    return miura(p.v) + p.w;
}

namespace {

// one fixed-point application v -> dx^{-1} P(u - v^2)
Field invert_step(const Field& u, const Field& v, double cutoff) {
    Field rhs = u - dealiased_product(v, v);
    return antiderivative_highpass(rhs, cutoff);
}

} // namespace

double choose_cutoff(const Field& u) {
    for (double c = 1.0; c < u.grid.xi_max(); c *= 2.0) {
        Field v(u.grid, u.reality_tag);
        double prev = 0.0;
        bool ok = true;
        for (int i = 0; i < 5; ++i) {
            Field next = invert_step(u, v, c);
            double change = sobolev_norm(next - v, 0.25);
            if (i > 0 && change > 0.5 * prev) {
                ok = false;
                break;
            }
            prev = change;
            v = std::move(next);
        }
        if (ok) return c;
    }
    throw cutoff_error("choose_cutoff: no contracting cutoff below Nyquist",
                       u.grid.xi_max());
}

MiuraInversion invert_gen_miura(const Field& u, double A, double cutoff,
                                double tol, int max_iter) {
    if (!(A > 0.0)) throw invalid_argument_error("invert_gen_miura: A must be positive");
    if (sobolev_norm(u, -0.75) > A * (1.0 + 1e-12))
        throw domain_error("invert_gen_miura: data outside the declared ball");
    if (cutoff <= 0.0) cutoff = choose_cutoff(u);

    Field v(u.grid, u.reality_tag);
    MiuraInversion res;
    res.cutoff = cutoff;
    for (int it = 1; it <= max_iter; ++it) {
        v = invert_step(u, v, cutoff);
        Field rhs = u - dealiased_product(v, v);
        // (1 - P): keep |xi| < cutoff, the exact complement of the v band
        auto bins = spectrum(rhs);
        for (std::size_t j = 0; j < rhs.size(); ++j)
            if (std::abs(rhs.grid.xi(j)) >= cutoff) bins[j] = 0.0;
        Field w = field_from_spectrum(rhs.grid, std::move(bins), rhs.reality_tag);
        res.pair = {v, std::move(w)};
        res.iterations = it;
        res.residual = sobolev_norm(gen_miura(res.pair) - u, -0.75);
        if (res.residual < tol) return res;
    }
    throw cutoff_error("invert_gen_miura: no contraction after max_iter; "
                       "retry with a larger cutoff",
                       2.0 * cutoff);
}

Trajectory kdv_endpoint_solve(const Field& u0, double A, double T, double dt,
                              double cutoff) {
    auto inv = invert_gen_miura(u0, A, cutoff);
    auto sys = evolve({EqKind::MKDV_SYSTEM}, {inv.pair.v, inv.pair.w}, 0.0, T, dt);
    Trajectory out;
    out.equation = EquationSpec{EqKind::KDV};
    out.step_size = sys.step_size;
    out.scheme_order = sys.scheme_order;
    for (const auto& [t, st] : sys.samples)
        out.samples.emplace_back(t, State{gen_miura({st[0], st[1]})});
    return out;
}

} // namespace dlab
