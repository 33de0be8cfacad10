#ifndef DLAB_GRID_HPP
#define DLAB_GRID_HPP

#include <cstddef>
#include <numbers>

#include "dlab/errors.hpp"

namespace dlab {

// Uniform periodic grid on [-L/2, L/2). Wavenumbers follow the usual FFT
// layout: bin j holds integer frequency j for j < n/2 and j - n otherwise;
// the physical wavenumber is xi_k = 2 pi k / L.
struct Grid1D {
    std::size_t num_points = 0;
    double box_length = 0.0;

    Grid1D() = default;
    Grid1D(std::size_t n, double L) : num_points(n), box_length(L) {
        if (n < 8 || (n & (n - 1)) != 0)
            throw invalid_argument_error("Grid1D: num_points must be a power of two >= 8");
        if (!(L > 0.0))
            throw invalid_argument_error("Grid1D: box_length must be positive");
    }

    double dx() const { return box_length / double(num_points); }

    double x(std::size_t j) const {
        return -0.5 * box_length + dx() * double(j);
    }

    // Integer frequency of FFT bin j.
    long freq(std::size_t j) const {
        return j < num_points / 2 ? long(j) : long(j) - long(num_points);
    }

    double xi(std::size_t j) const {
        return 2.0 * std::numbers::pi * double(freq(j)) / box_length;
    }

    double xi_max() const {
        return 2.0 * std::numbers::pi * double(num_points / 2) / box_length;
    }

    bool operator==(const Grid1D& o) const {
        return num_points == o.num_points && box_length == o.box_length;
    }
};

} // namespace dlab

#endif
