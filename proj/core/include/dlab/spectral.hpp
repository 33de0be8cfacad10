#ifndef DLAB_SPECTRAL_HPP
#define DLAB_SPECTRAL_HPP

#include <limits>
#include <vector>

#include "dlab/field.hpp"

namespace dlab {

struct SobolevIndex {
    double s = 0.0;
    SobolevIndex(double v = 0.0) : s(v) {}
};

// Raw FFT bins of a field (unnormalized, FFT layout; see fft.hpp).
std::vector<cplx> spectrum(const Field& f);
Field field_from_spectrum(const Grid1D& g, std::vector<cplx> bins,
                          bool real_tag = false);

// Fourier multiplier (i xi)^order; Nyquist zeroed for odd orders so real
// fields stay real. order <= 4.
Field spectral_derivative(const Field& f, int order);

// H^s norm with the continuum normalization
//   hat f(xi_k) = (L/n) sum_j f_j e^{-i xi_k x_j}
//   ||f||_{H^s}^2 = (2 pi)^{-1} (2 pi / L) sum_k (1 + xi_k^2)^s |hat f(xi_k)|^2
//               = (1/L) sum_k (1 + xi_k^2)^s |hat f(xi_k)|^2,
// chosen so s = 0 reproduces the L^2 norm (Parseval) and single continuum
// modes match their closed-form values.
double sobolev_norm(const Field& f, SobolevIndex s);

// Same but with weight |xi|^{2s} and the zero mode dropped (scaling tests on
// zero-mean data).
double homogeneous_sobolev_norm(const Field& f, SobolevIndex s);

// Sharp cutoff keeping modes with xi_min <= |xi_k| <= xi_max.
Field band_project(const Field& f, double xi_min,
                   double xi_max = std::numeric_limits<double>::infinity());

// (i xi)^{-1} after projecting away |xi| < xi_min; xi_min must be positive.
Field antiderivative_highpass(const Field& f, double xi_min);

// int |f|^2 dx (exact for trigonometric polynomials on a uniform grid).
double mass(const Field& f);

// Pointwise product with 2/3-rule dealiasing (inputs truncated to |k| <= n/3,
// as is the result). Used by every cubic/quadratic nonlinearity.
Field dealiased_product(const Field& a, const Field& b);
Field dealiased_triple(const Field& a, const Field& b, const Field& c);

// max |hat f_k| over the top eighth of the spectrum divided by max over all k.
double spectral_tail_fraction(const Field& f);

// max boundary |f| relative to max |f| (whole-line box adequacy check).
double boundary_fraction(const Field& f);

// Trigonometric interpolation of f at arbitrary points (periodic).
std::vector<cplx> interp_eval(const Field& f, const std::vector<double>& points);

double l2_distance(const Field& a, const Field& b);

} // namespace dlab

#endif
