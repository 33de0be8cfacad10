#ifndef DLAB_FIELD_HPP
#define DLAB_FIELD_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <vector>

#include "dlab/grid.hpp"

namespace dlab {

using cplx = std::complex<double>;

// Samples of one field at one instant. reality_tag asserts the imaginary
// parts are numerically negligible (checked, not enforced).
struct Field {
    Grid1D grid;
    std::vector<cplx> samples;
    bool reality_tag = false;

    Field() = default;
    explicit Field(const Grid1D& g, bool real_tag = false)
        : grid(g), samples(g.num_points, cplx(0.0)), reality_tag(real_tag) {}

    std::size_t size() const { return samples.size(); }
    cplx& operator[](std::size_t j) { return samples[j]; }
    const cplx& operator[](std::size_t j) const { return samples[j]; }

    double max_abs() const {
        double m = 0.0;
        for (const auto& z : samples) m = std::max(m, std::abs(z));
        return m;
    }

    double max_imag() const {
        double m = 0.0;
        for (const auto& z : samples) m = std::max(m, std::abs(z.imag()));
        return m;
    }

    bool reality_ok(double tol = 1e-10) const {
        return max_imag() <= tol * std::max(max_abs(), 1e-300);
    }

    void take_real_part() {
        for (auto& z : samples) z = cplx(z.real(), 0.0);
        reality_tag = true;
    }
};

inline Field sample_field(const Grid1D& g, const std::function<cplx(double)>& f,
                          bool real_tag = false) {
    Field out(g, real_tag);
    for (std::size_t j = 0; j < g.num_points; ++j) out[j] = f(g.x(j));
    return out;
}

inline Field operator+(const Field& a, const Field& b) {
    Field out(a.grid, a.reality_tag && b.reality_tag);
    for (std::size_t j = 0; j < out.size(); ++j) out[j] = a[j] + b[j];
    return out;
}

inline Field operator-(const Field& a, const Field& b) {
    Field out(a.grid, a.reality_tag && b.reality_tag);
    for (std::size_t j = 0; j < out.size(); ++j) out[j] = a[j] - b[j];
    return out;
}

inline Field operator*(cplx c, const Field& a) {
    Field out(a.grid, a.reality_tag && c.imag() == 0.0);
    for (std::size_t j = 0; j < out.size(); ++j) out[j] = c * a[j];
    return out;
}

} // namespace dlab

#endif
