#include <cmath>

#include "doctest.h"
#include "dlab/errors.hpp"
#include "dlab/evolve.hpp"
#include "dlab/miura.hpp"
#include "dlab/spectral.hpp"
#include "helpers.hpp"

using namespace dlab;

TEST_CASE("miura transform basics") {
    Grid1D g(128, 2.0 * M_PI);

    Field zero(g, true);
    CHECK(miura(zero).max_abs() == 0.0);

    // constant: derivative vanishes, square survives
    Field c(g, true);
    for (std::size_t j = 0; j < c.size(); ++j) c[j] = 0.7;
    Field mc = miura(c);
    for (std::size_t j = 0; j < mc.size(); ++j)
        CHECK(std::abs(mc[j] - cplx(0.49, 0.0)) < 1e-13);

    // focusing variant v_x + i v^2 on real input: imaginary part is v^2
    Field v = sample_field(g, [](double x) { return cplx(std::cos(x), 0.0); }, true);
    Field mf = miura(v, true);
    CHECK_FALSE(mf.reality_tag);
    for (std::size_t j = 0; j < mf.size(); ++j) {
        double x = g.x(j);
        CHECK(std::abs(mf[j].real() + std::sin(x)) < 1e-12);
        CHECK(std::abs(mf[j].imag() - std::cos(x) * std::cos(x)) < 1e-12);
    }
}

TEST_CASE("miura intertwines the mkdv and kdv flows") {
    Grid1D g(4096, 40.0 * M_PI);
    Field v0 = sample_field(
        g, [](double x) { return cplx(0.2 * std::exp(-x * x), 0.0); }, true);

    const double T = 1.0, dt = 0.01;
    EvolveOptions opts;
    opts.store_stride = 1000; // endpoints only
    auto vtraj = evolve({EqKind::MKDV}, {v0}, 0.0, T, dt, opts);
    auto utraj = evolve({EqKind::KDV}, {miura(v0)}, 0.0, T, dt, opts);

    const Field& vT = vtraj.samples.back().second[0];
    const Field& uT = utraj.samples.back().second[0];
    CHECK(sobolev_norm(miura(vT) - uT, -1.0) < 1e-4);
}

TEST_CASE("generalized transform reduces, pins the gardner case, is linear in w") {
    Grid1D g(256, 2.0 * M_PI);
    Field v = testutil::random_band_limited(g, 1, 20, 411, true);
    Field w1 = testutil::random_band_limited(g, 1, 20, 412, true);
    Field w2 = testutil::random_band_limited(g, 1, 20, 413, true);

    // w = 0 reduction
    Field m0 = gen_miura({v, Field(g, true)});
    Field mv = miura(v);
    for (std::size_t j = 0; j < m0.size(); ++j)
        CHECK(std::abs(m0[j] - mv[j]) == 0.0);

    // linearity in the smooth part
    Field d = gen_miura({v, w1 + w2}) - gen_miura({v, w1});
    double scale = w2.max_abs();
    for (std::size_t j = 0; j < d.size(); ++j)
        CHECK(std::abs(d[j] - w2[j]) < 1e-13 * scale);

    // gardner substitution v = a y, w = b y with y = cos x:
    // output is -a sin x + a^2 cos^2 x + b cos x (a^2, not a, on the square)
    const double a = 0.5, b = 0.25;
    Field y = sample_field(g, [](double x) { return cplx(std::cos(x), 0.0); }, true);
    Field gm = gen_miura({cplx(a, 0.0) * y, cplx(b, 0.0) * y});
    for (std::size_t j = 0; j < gm.size(); ++j) {
        double x = g.x(j);
        double want = -a * std::sin(x) + a * a * std::cos(x) * std::cos(x) +
                      b * std::cos(x);
        CHECK(std::abs(gm[j] - cplx(want, 0.0)) < 1e-12);
    }

    // mismatched grids rejected
    Grid1D g2(128, 2.0 * M_PI);
    CHECK_THROWS_AS(gen_miura({v, Field(g2, true)}), invalid_argument_error);
}

TEST_CASE("inversion round-trips a small two-mode datum") {
    Grid1D g(256, 2.0 * M_PI);
    // 0.1 e^{6ix} + 0.1 e^{-6ix}
    Field u = sample_field(
        g, [](double x) { return cplx(0.2 * std::cos(6.0 * x), 0.0); }, true);

    auto inv = invert_gen_miura(u, 1.0, 3.0);
    CHECK(inv.iterations <= 30);
    CHECK(inv.cutoff == 3.0);
    CHECK(inv.residual < 1e-8);
    CHECK(sobolev_norm(gen_miura(inv.pair) - u, -0.75) < 1e-8);

    // complementarity: v supported on |xi| >= 3, w strictly below
    auto vb = spectrum(inv.pair.v);
    auto wb = spectrum(inv.pair.w);
    double vmax = inv.pair.v.max_abs(), wmax = inv.pair.w.max_abs();
    for (std::size_t j = 0; j < g.num_points; ++j) {
        double xi = std::abs(g.xi(j));
        if (xi < 3.0) CHECK(std::abs(vb[j]) < 1e-12 * (vmax + 1.0));
        else CHECK(std::abs(wb[j]) < 1e-12 * (wmax + 1.0));
    }
}

TEST_CASE("inversion round-trips twenty seeded random data") {
    Grid1D g(256, 2.0 * M_PI);
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        Field raw = testutil::random_band_limited(g, 1, 32, 9000 + seed, true);
        Field u = testutil::normalized_to(raw, -0.75, 1.0);
        auto inv = invert_gen_miura(u, 1.0, 0.0, 1e-9, 30);
        CHECK(inv.iterations <= 30);
        CHECK(inv.residual < 1e-8);
        CHECK(sobolev_norm(gen_miura(inv.pair) - u, -0.75) < 1e-8);
    }
}

TEST_CASE("inversion input validation and non-contraction reporting") {
    Grid1D g(256, 2.0 * M_PI);

    // zero datum: trivial fixed point
    auto inv0 = invert_gen_miura(Field(g, true), 1.0);
    CHECK(inv0.pair.v.max_abs() == 0.0);
    CHECK(inv0.pair.w.max_abs() == 0.0);
    CHECK(inv0.residual == 0.0);

    Field u = sample_field(
        g, [](double x) { return cplx(0.2 * std::cos(6.0 * x), 0.0); }, true);
    CHECK_THROWS_AS(invert_gen_miura(u, 0.0), invalid_argument_error);
    // datum outside the declared ball
    CHECK_THROWS_AS(invert_gen_miura(u, 0.01), domain_error);

    // amplitude too large for the forced cutoff: iteration cannot contract
    Field big = cplx(500.0, 0.0) * u;
    try {
        invert_gen_miura(big, 100.0, 3.0, 1e-10, 20);
        CHECK(false);
    } catch (const cutoff_error& e) {
        CHECK(e.suggested_cutoff == doctest::Approx(6.0));
    }
}

TEST_CASE("generalized transform is lipschitz on bounded pairs") {
    Grid1D g(256, 2.0 * M_PI);
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        Field v = testutil::normalized_to(
            testutil::random_band_limited(g, 1, 32, 100 + seed, true), 0.25, 1.0);
        Field v2 = testutil::normalized_to(
            testutil::random_band_limited(g, 1, 32, 200 + seed, true), 0.25, 1.0);
        Field w = testutil::normalized_to(
            testutil::random_band_limited(g, 1, 32, 300 + seed, true), 1.0, 1.0);
        Field w2 = testutil::normalized_to(
            testutil::random_band_limited(g, 1, 32, 400 + seed, true), 1.0, 1.0);
        double num = sobolev_norm(gen_miura({v, w}) - gen_miura({v2, w2}), -0.75);
        double den = sobolev_norm(v - v2, 0.25) + sobolev_norm(w - w2, 1.0);
        CHECK(num <= 10.0 * den);
    }
}

TEST_CASE("endpoint pipeline on zero and smooth data") {
    Grid1D g(256, 2.0 * M_PI);

    auto ztraj = kdv_endpoint_solve(Field(g, true), 1.0, 0.25, 0.01);
    CHECK(ztraj.equation.kind == EqKind::KDV);
    for (const auto& [t, st] : ztraj.samples) CHECK(st[0].max_abs() == 0.0);

    // smooth datum: the factorized flow must agree with the direct solver
    Field u0 = sample_field(
        g, [](double x) { return cplx(0.2 * std::cos(6.0 * x), 0.0); }, true);
    const double T = 0.5, dt = 0.00125;
    auto pipe = kdv_endpoint_solve(u0, 1.0, T, dt);
    auto direct = evolve({EqKind::KDV}, {u0}, 0.0, T, dt);
    CHECK(pipe.samples.back().first == doctest::Approx(T));
    const Field& a = pipe.samples.back().second[0];
    const Field& b = direct.samples.back().second[0];
    CHECK(sobolev_norm(a - b, -1.0) < 1e-4);
}

TEST_CASE("endpoint pipeline output satisfies the target equation") {
    // short densely-sampled run so the time-difference error sits well below
    // the asserted residual
    Grid1D g(256, 2.0 * M_PI);
    Field u0 = sample_field(
        g, [](double x) { return cplx(0.2 * std::cos(6.0 * x), 0.0); }, true);
    auto traj = kdv_endpoint_solve(u0, 1.0, 0.02, 2e-4);
    auto res = residual({EqKind::KDV}, traj, -1.0);
    for (const auto& r : res)
        if (!r.endpoint) CHECK(r.value < 1e-3);
}

TEST_CASE("endpoint pipeline survives rough data and is lipschitz there") {
    Grid1D g(512, 2.0 * M_PI);
    Field u0 = testutil::normalized_to(
        testutil::random_band_limited(g, 4, 40, 77, true), -0.75, 0.5);
    Field pert = testutil::normalized_to(
        testutil::random_band_limited(g, 4, 40, 78, true), -0.75, 0.01);
    Field u0b = u0 + pert;
    double d = sobolev_norm(u0 - u0b, -0.75);

    double cutoff = choose_cutoff(u0);
    const double T = 0.25, dt = 2.5e-4;
    auto ta = kdv_endpoint_solve(u0, 1.0, T, dt, cutoff);
    auto tb = kdv_endpoint_solve(u0b, 1.0, T, dt, cutoff);

    const Field& fa = ta.samples.back().second[0];
    const Field& fb = tb.samples.back().second[0];
    CHECK(std::isfinite(fa.max_abs()));
    CHECK(fa.reality_ok(1e-8));
    double C = sobolev_norm(fa - fb, -0.75) / d;
    CHECK(C < 50.0);
}
