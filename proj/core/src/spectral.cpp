#include "dlab/spectral.hpp"

#include <cmath>

#include "dlab/errors.hpp"
#include "dlab/fft.hpp"

namespace dlab {

std::vector<cplx> spectrum(const Field& f) {
    std::vector<cplx> bins = f.samples;
    fft_forward(bins);
    return bins;
}

Field field_from_spectrum(const Grid1D& g, std::vector<cplx> bins, bool real_tag) {
    fft_inverse(bins);
    Field out(g, real_tag);
    out.samples = std::move(bins);
    return out;
}

Field spectral_derivative(const Field& f, int order) {
    if (order < 1 || order > 4)
        throw invalid_argument_error("spectral_derivative: order must be in 1..4");
    auto bins = spectrum(f);
    const std::size_t n = f.grid.num_points;
    for (std::size_t j = 0; j < n; ++j) {
        if (order % 2 == 1 && j == n / 2) {
            bins[j] = 0.0; // unpaired Nyquist mode would break reality
            continue;
        }
        // (i xi)^order exactly: i^order cycles through {1, i, -1, -i}
        static const cplx ipow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
        double xi = f.grid.xi(j);
        bins[j] *= ipow[order % 4] * std::pow(xi, order);
    }
    return field_from_spectrum(f.grid, std::move(bins), f.reality_tag);
}

double sobolev_norm(const Field& f, SobolevIndex s) {
    auto bins = spectrum(f);
    const std::size_t n = f.grid.num_points;
    // (1/L) sum |hat f_k|^2 (1+xi^2)^s with hat f_k = (L/n) * raw bin.
    double acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        double xi = f.grid.xi(j);
        acc += std::pow(1.0 + xi * xi, s.s) * std::norm(bins[j]);
    }
    acc *= f.grid.box_length / double(n) / double(n);
    return std::sqrt(acc);
}

double homogeneous_sobolev_norm(const Field& f, SobolevIndex s) {
    auto bins = spectrum(f);
    const std::size_t n = f.grid.num_points;
    double acc = 0.0;
    for (std::size_t j = 1; j < n; ++j) {
        double xi = f.grid.xi(j);
        acc += std::pow(xi * xi, s.s) * std::norm(bins[j]);
    }
    acc *= f.grid.box_length / double(n) / double(n);
    return std::sqrt(acc);
}

Field band_project(const Field& f, double xi_min, double xi_max) {
    if (xi_min > xi_max)
        throw invalid_argument_error("band_project: xi_min > xi_max");
    auto bins = spectrum(f);
    for (std::size_t j = 0; j < f.grid.num_points; ++j) {
        double a = std::abs(f.grid.xi(j));
        if (a < xi_min || a > xi_max) bins[j] = 0.0;
    }
    return field_from_spectrum(f.grid, std::move(bins), f.reality_tag);
}

Field antiderivative_highpass(const Field& f, double xi_min) {
    if (!(xi_min > 0.0))
        throw invalid_argument_error("antiderivative_highpass: xi_min must be positive");
    auto bins = spectrum(f);
    for (std::size_t j = 0; j < f.grid.num_points; ++j) {
        double xi = f.grid.xi(j);
        if (std::abs(xi) < xi_min)
            bins[j] = 0.0;
        else
            bins[j] /= cplx(0.0, xi);
    }
    return field_from_spectrum(f.grid, std::move(bins), f.reality_tag);
}

double mass(const Field& f) {
    double acc = 0.0;
    for (const auto& z : f.samples) acc += std::norm(z);
    return acc * f.grid.dx();
}

namespace {

void truncate_23(std::vector<cplx>& bins) {
    const long n = long(bins.size());
    const long kmax = n / 3;
    for (long j = 0; j < n; ++j) {
        long k = j < n / 2 ? j : j - n;
        if (std::abs(k) > kmax) bins[std::size_t(j)] = 0.0;
    }
}

} // namespace

Field dealiased_product(const Field& a, const Field& b) {
    auto ba = spectrum(a);
    auto bb = spectrum(b);
    truncate_23(ba);
    truncate_23(bb);
    fft_inverse(ba);
    fft_inverse(bb);
    std::vector<cplx> prod(ba.size());
    for (std::size_t j = 0; j < prod.size(); ++j) prod[j] = ba[j] * bb[j];
    fft_forward(prod);
    truncate_23(prod);
    return field_from_spectrum(a.grid, std::move(prod),
                               a.reality_tag && b.reality_tag);
}

Field dealiased_triple(const Field& a, const Field& b, const Field& c) {
    // Cascaded binary products keep the 2/3 rule alias-free for cubics.
    return dealiased_product(dealiased_product(a, b), c);
}

double spectral_tail_fraction(const Field& f) {
    auto bins = spectrum(f);
    const long n = long(bins.size());
    double peak = 0.0, tail = 0.0;
    for (long j = 0; j < n; ++j) {
        long k = j < n / 2 ? j : j - n;
        double m = std::abs(bins[std::size_t(j)]);
        peak = std::max(peak, m);
        if (std::abs(k) * 16 >= 7 * (n / 2) * 2) tail = std::max(tail, m);
    }
    if (peak == 0.0) return 0.0;
    return tail / peak;
}

double boundary_fraction(const Field& f) {
    double m = f.max_abs();
    if (m == 0.0) return 0.0;
    double edge = std::max(std::abs(f.samples.front()),
                           std::abs(f.samples.back()));
    return edge / m;
}

std::vector<cplx> interp_eval(const Field& f, const std::vector<double>& points) {
    auto bins = spectrum(f);
    const long n = long(bins.size());
    const double L = f.grid.box_length;
    const double inv_n = 1.0 / double(n);
    std::vector<cplx> out(points.size());
    for (std::size_t p = 0; p < points.size(); ++p) {
        // f(x) = (1/n) sum_k F_k e^{i xi_k (x + L/2)}; the +L/2 accounts for
        // the grid origin at -L/2. Positive and negative k are accumulated by
        // incremental phase multiplication.
        const double u = points[p] + 0.5 * L;
        const cplx step = std::polar(1.0, 2.0 * std::numbers::pi * u / L);
        const cplx cstep = std::conj(step);
        cplx acc = bins[0];
        cplx ppos = 1.0, pneg = 1.0;
        for (long k = 1; k < n / 2; ++k) {
            ppos *= step;
            pneg *= cstep;
            acc += bins[std::size_t(k)] * ppos + bins[std::size_t(n - k)] * pneg;
        }
        // Nyquist as a cosine keeps real inputs real.
        ppos *= step;
        acc += bins[std::size_t(n / 2)] * ppos.real();
        out[p] = acc * inv_n;
    }
    return out;
}

double l2_distance(const Field& a, const Field& b) {
    double acc = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) acc += std::norm(a[j] - b[j]);
    return std::sqrt(acc * a.grid.dx());
}

} // namespace dlab
