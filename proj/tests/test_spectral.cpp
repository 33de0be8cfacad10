#include <doctest.h>

#include <cmath>
#include <numbers>

#include "dlab/errors.hpp"
#include "dlab/field.hpp"
#include "dlab/spectral.hpp"
#include "helpers.hpp"

using namespace dlab;
using std::numbers::pi;

namespace {

double inner_l2(const Field& a, const Field& b) {
    double acc = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j)
        acc += (std::conj(a[j]) * b[j]).real();
    return acc * a.grid.dx();
}

} // namespace

TEST_CASE("spectral_derivative basics") {
    Grid1D g(64, 2.0 * pi);

    Field one = sample_field(g, [](double) { return cplx(1.0, 0.0); }, true);
    Field d1 = spectral_derivative(one, 1);
    CHECK(d1.max_abs() < 1e-14);

    Field mode = sample_field(g, [](double x) { return std::polar(1.0, x); });
    Field d3 = spectral_derivative(mode, 3);
    double err = 0.0;
    for (std::size_t j = 0; j < g.num_points; ++j)
        err = std::max(err, std::abs(d3[j] - cplx(0.0, -1.0) * mode[j]));
    // rounding in the FFT is amplified by xi^3 at the top of the ladder
    CHECK(err < 1e-10);

    Field s2 = sample_field(g, [](double x) { return cplx(std::sin(2.0 * x), 0.0); }, true);
    Field dd = spectral_derivative(s2, 2);
    err = 0.0;
    for (std::size_t j = 0; j < g.num_points; ++j)
        err = std::max(err, std::abs(dd[j] - cplx(-4.0 * std::sin(2.0 * g.x(j)), 0.0)));
    CHECK(err < 1e-12);

    CHECK_THROWS_AS(spectral_derivative(one, 5), invalid_argument_error);

    // odd-order derivatives keep real fields real (Nyquist zeroing)
    Field r = testutil::random_band_limited(Grid1D(128, 10.0), 1, 60, 7, true);
    CHECK(spectral_derivative(r, 1).reality_ok());
    CHECK(spectral_derivative(r, 3).reality_ok());
}

TEST_CASE("sobolev_norm oracles") {
    Grid1D g(256, 2.0 * pi);
    Field z(g);
    CHECK(sobolev_norm(z, 1.3) == 0.0);

    // single mode a e^{iNx}: norm = sqrt(2 pi) |a| (1+N^2)^{s/2} with the
    // documented normalization (sqrt(box) factor from the continuum L^2)
    const double a = 0.7;
    const int N = 5;
    Field mode = sample_field(g, [&](double x) { return a * std::polar(1.0, N * x); });
    for (double s : {-1.0, 0.0, 0.25, 1.0}) {
        double expect = std::sqrt(2.0 * pi) * a * std::pow(1.0 + N * N, 0.5 * s);
        CHECK(sobolev_norm(mode, s) == doctest::Approx(expect).epsilon(1e-12));
    }

    // Gaussian H^1 on box 40 pi against an independent quadrature oracle:
    // ||g||_{H^1}^2 = (2 pi)^{-1} int (1+xi^2) |ghat|^2, ghat = sqrt(pi) e^{-xi^2/4}
    Grid1D gg(2048, 40.0 * pi);
    Field gauss = sample_field(gg, [](double x) { return cplx(std::exp(-x * x), 0.0); }, true);
    double oracle2 = testutil::adaptive_simpson(
        [](double xi) {
            return (1.0 + xi * xi) * pi * std::exp(-xi * xi / 2.0);
        }, -40.0, 40.0, 1e-12) / (2.0 * pi);
    double num = sobolev_norm(gauss, 1.0);
    CHECK(std::abs(num - std::sqrt(oracle2)) / std::sqrt(oracle2) < 1e-6);

    // s=0 equals the discrete L2 norm
    Field r = testutil::random_band_limited(gg, 1, 500, 21, false);
    CHECK(sobolev_norm(r, 0.0) == doctest::Approx(std::sqrt(mass(r))).epsilon(1e-12));
}

TEST_CASE("mass oracles") {
    Grid1D g(512, 40.0 * pi);
    CHECK(mass(Field(g)) == 0.0);

    Field c = sample_field(g, [](double) { return cplx(1.5, 0.0); }, true);
    CHECK(mass(c) == doctest::Approx(1.5 * 1.5 * 40.0 * pi).epsilon(1e-12));

    Field gauss = sample_field(g, [](double x) { return cplx(std::exp(-x * x), 0.0); }, true);
    CHECK(std::abs(mass(gauss) - std::sqrt(pi / 2.0)) < 1e-8);
}

TEST_CASE("band_project behavior") {
    Grid1D g(128, 2.0 * pi);
    Field f = sample_field(g, [](double x) {
        return cplx(1.0, 0.0) + std::polar(1.0, 5.0 * x);
    });
    Field full = band_project(f, 0.0);
    double err = 0.0;
    for (std::size_t j = 0; j < g.num_points; ++j)
        err = std::max(err, std::abs(full[j] - f[j]));
    CHECK(err < 1e-13);

    Field hi = band_project(f, 2.0);
    err = 0.0;
    for (std::size_t j = 0; j < g.num_points; ++j)
        err = std::max(err, std::abs(hi[j] - std::polar(1.0, 5.0 * g.x(j))));
    CHECK(err < 1e-12);

    Field r = testutil::random_band_limited(g, 1, 60, 3, false);
    Field p1 = band_project(r, 2.0, 8.0);
    Field p2 = band_project(p1, 2.0, 8.0);
    CHECK(l2_distance(p1, p2) < 1e-12);

    // self-adjointness in the discrete L2 inner product
    Field u = testutil::random_band_limited(g, 1, 60, 11, false);
    Field v = testutil::random_band_limited(g, 1, 60, 12, false);
    double lhs = inner_l2(band_project(u, 2.0, 8.0), v);
    double rhs = inner_l2(u, band_project(v, 2.0, 8.0));
    CHECK(std::abs(lhs - rhs) < 1e-10 * (std::abs(lhs) + 1.0));
}

TEST_CASE("antiderivative_highpass") {
    Grid1D g(128, 2.0 * pi);
    Field m4 = sample_field(g, [](double x) { return std::polar(1.0, 4.0 * x); });
    Field a = antiderivative_highpass(m4, 2.0);
    double err = 0.0;
    for (std::size_t j = 0; j < g.num_points; ++j)
        err = std::max(err, std::abs(a[j] - m4[j] / cplx(0.0, 4.0)));
    CHECK(err < 1e-12);

    Field c = sample_field(g, [](double) { return cplx(3.0, 0.0); }, true);
    CHECK(antiderivative_highpass(c, 1.0).max_abs() < 1e-14);

    CHECK_THROWS_AS(antiderivative_highpass(c, 0.0), invalid_argument_error);

    Field r = testutil::random_band_limited(g, 1, 40, 5, true);
    Field round = spectral_derivative(antiderivative_highpass(r, 3.0), 1);
    Field want = band_project(r, 3.0);
    CHECK(l2_distance(round, want) < 1e-10);
}

TEST_CASE("spectral invariants on random fields") {
    Grid1D g(256, 17.0);
    for (std::uint64_t seed : {101, 102, 103, 104, 105}) {
        Field f = testutil::random_band_limited(g, 1, 100, seed, false);
        // Parseval
        double m = mass(f), n0 = sobolev_norm(f, 0.0);
        CHECK(std::abs(m - n0 * n0) <= 1e-10 * m);
        // monotonicity in s
        CHECK(sobolev_norm(f, -0.5) <= sobolev_norm(f, 0.25) + 1e-12);
        CHECK(sobolev_norm(f, 0.25) <= sobolev_norm(f, 1.5) + 1e-12);
        // derivative multiplier bound
        CHECK(sobolev_norm(spectral_derivative(f, 1), 0.5) <=
              sobolev_norm(f, 1.5) * (1.0 + 1e-12));
    }
}

TEST_CASE("dealiased product matches exact product for well-separated bands") {
    Grid1D g(256, 2.0 * pi);
    Field u = testutil::random_band_limited(g, 1, 20, 31, true);
    Field v = testutil::random_band_limited(g, 1, 20, 32, true);
    Field p = dealiased_product(u, v);
    double err = 0.0;
    for (std::size_t j = 0; j < g.num_points; ++j)
        err = std::max(err, std::abs(p[j] - u[j] * v[j]));
    CHECK(err < 1e-11);
}

TEST_CASE("trigonometric interpolation") {
    Grid1D g(128, 7.0);
    Field f = testutil::random_band_limited(g, 1, 40, 9, false);
    // at grid points the interpolant reproduces the samples
    std::vector<double> pts;
    for (std::size_t j = 0; j < g.num_points; j += 7) pts.push_back(g.x(j));
    auto vals = interp_eval(f, pts);
    std::size_t i = 0;
    for (std::size_t j = 0; j < g.num_points; j += 7, ++i)
        CHECK(std::abs(vals[i] - f[j]) < 1e-11);

    // off-grid values match the closure for a band-limited function
    Field s = sample_field(g, [&](double x) {
        return cplx(std::sin(3.0 * 2.0 * pi * x / 7.0), 0.0);
    }, true);
    std::vector<double> off = {0.123, -2.5, 3.01};
    auto sv = interp_eval(s, off);
    for (std::size_t k = 0; k < off.size(); ++k)
        CHECK(std::abs(sv[k] - std::sin(3.0 * 2.0 * pi * off[k] / 7.0)) < 1e-11);
}
