#ifndef DLAB_TEST_HELPERS_HPP
#define DLAB_TEST_HELPERS_HPP

#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "dlab/field.hpp"
#include "dlab/fft.hpp"
#include "dlab/spectral.hpp"

namespace testutil {

// Random band-limited field with Fourier support in kmin <= |k| <= kmax.
// Deterministic for a fixed seed.
inline dlab::Field random_band_limited(const dlab::Grid1D& g, long kmin, long kmax,
                                       std::uint64_t seed, bool real = true) {
    std::mt19937_64 rng(seed);
    auto unit = [&rng]() {
        // fixed mapping, independent of libstdc++ distribution details
        return double(rng() >> 11) * 0x1.0p-53;
    };
    const long n = long(g.num_points);
    std::vector<dlab::cplx> bins(g.num_points, 0.0);
    for (long k = kmin; k <= kmax && k < n / 2; ++k) {
        if (k == 0) continue;
        double re = 2.0 * unit() - 1.0, im = 2.0 * unit() - 1.0;
        bins[std::size_t(k)] = dlab::cplx(re, im);
        if (real)
            bins[std::size_t(n - k)] = std::conj(bins[std::size_t(k)]);
        else
            bins[std::size_t(n - k)] = dlab::cplx(2.0 * unit() - 1.0, 2.0 * unit() - 1.0);
    }
    dlab::fft_inverse(bins);
    dlab::Field f(g, real);
    f.samples = std::move(bins);
    if (real) f.take_real_part();
    return f;
}

inline dlab::Field normalized_to(const dlab::Field& f, double s, double target) {
    double nrm = dlab::sobolev_norm(f, s);
    return dlab::cplx(target / nrm, 0.0) * f;
}

// Adaptive Simpson quadrature (independent oracle for norm/decoherence tests).
inline double adaptive_simpson(const std::function<double(double)>& f, double a,
                               double b, double tol = 1e-10, int depth = 24) {
    std::function<double(double, double, double, double, double, double, int)> rec =
        [&](double lo, double hi, double flo, double fmid, double fhi, double whole,
            int d) -> double {
        double m = 0.5 * (lo + hi);
        double lm = 0.5 * (lo + m), rm = 0.5 * (m + hi);
        double flm = f(lm), frm = f(rm);
        double left = (m - lo) / 6.0 * (flo + 4.0 * flm + fmid);
        double right = (hi - m) / 6.0 * (fmid + 4.0 * frm + fhi);
        if (d <= 0 || std::abs(left + right - whole) < 15.0 * tol)
            return left + right + (left + right - whole) / 15.0;
        return rec(lo, m, flo, flm, fmid, left, d - 1) +
               rec(m, hi, fmid, frm, fhi, right, d - 1);
    };
    double m = 0.5 * (a + b);
    double fa = f(a), fm = f(m), fb = f(b);
    double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return rec(a, b, fa, fm, fb, whole, depth);
}

// Least-squares slope of log(y) against log(x).
inline double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = double(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        double lx = std::log(x[i]), ly = std::log(y[i]);
        sx += lx; sy += ly; sxx += lx * lx; sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

inline double pearson(const std::vector<double>& x, const std::vector<double>& y) {
    double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
    const double n = double(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i]; sy += y[i];
        sxx += x[i] * x[i]; syy += y[i] * y[i]; sxy += x[i] * y[i];
    }
    double num = n * sxy - sx * sy;
    double den = std::sqrt((n * sxx - sx * sx) * (n * syy - sy * sy));
    return num / den;
}

} // namespace testutil

#endif
