#ifndef DLAB_MIURA_HPP
#define DLAB_MIURA_HPP

#include "dlab/evolve.hpp"
#include "dlab/field.hpp"

namespace dlab {

// v_x + v^2 (derivative spectral, square dealiased); focusing=true gives the
// complex variant v_x + i v^2.
Field miura(const Field& v, bool focusing = false);

struct MiuraPair {
    Field v; // rough component (high Fourier band in inversion output)
    Field w; // smooth component (low band)
};

// v_x + v^2 + w
Field gen_miura(const MiuraPair& p);

struct MiuraInversion {
    MiuraPair pair;
    int iterations = 0;
    double cutoff = 0.0;
    double residual = 0.0; // ||gen_miura(pair) - u||_{H^{-3/4}}
};

// Fixed point of v <- dx^{-1} P_{|xi| >= cutoff}(u - v^2), then
// w = (1 - P)(u - v^2). cutoff <= 0 picks the smallest power of two whose
// first five iterations contract by a factor >= 2. By construction v is
// supported on |xi| >= cutoff and w strictly below it.
MiuraInversion invert_gen_miura(const Field& u, double A, double cutoff = 0.0,
                                double tol = 1e-10, int max_iter = 50);

// smallest contracting power-of-two cutoff (throws cutoff_error if none fits
// under the grid's Nyquist)
double choose_cutoff(const Field& u);

// KdV flow through the factorization: invert u0 into (v0, w0), evolve the
// coupled system v_t + v_xxx = 6(v^2+w)v_x, w_t + w_xxx = 6(v^2+w)w_x, and
// map samples back through gen_miura. Returned trajectory carries the KdV tag.
Trajectory kdv_endpoint_solve(const Field& u0, double A, double T, double dt,
                              double cutoff = 0.0);

} // namespace dlab

#endif
