#ifndef DLAB_FAMILIES_HPP
#define DLAB_FAMILIES_HPP

#include <filesystem>
#include <functional>
#include <map>
#include <vector>

#include "dlab/evolve.hpp"
#include "dlab/field.hpp"

namespace dlab {

// Envelope profile: a unit-amplitude real shape plus the small amplitude
// epsilon that every construction folds in. parity/kappa are metadata the
// factories guarantee and check_profile verifies on a grid.
struct ProfileW {
    std::function<double(double)> shape;
    double epsilon = 0.1;
    enum Parity { NONE, EVEN, ODD } parity = NONE;
    int kappa = 0; // vanishing order of the shape's Fourier transform at 0
    double value(double y) const { return epsilon * shape(y); }
};

ProfileW gaussian_profile(double eps);          // e^{-y^2}
ProfileW odd_gaussian_profile(double eps);      // y e^{-y^2}
ProfileW hermite_profile(double eps);           // (16y^4-48y^2+12)e^{-y^2}, kappa=4

Field sample_profile(const ProfileW& w, const Grid1D& g); // epsilon*shape
// parity to 1e-10; |shape_hat| = O(|xi|^kappa) on the lowest modes; eps range
void check_profile(const ProfileW& w, const Grid1D& g);

// v^[aw](s,y) = a w(y) exp(-i |a w(y)|^2 log s): exact solution of the
// dispersionless i v_s = s^{-1}|v|^2 v with data a w at s = 1.
Field ode_profile(const ProfileW& w, cplx a, double s, const Grid1D& g);

// L^2_y distance between ode_profile(a) and ode_profile(a') at log s = -theta
// (parameterized by theta >= 0 so astronomically small s stay representable).
double decoherence_distance(const ProfileW& w, cplx a, cplx a2, double theta,
                            const Grid1D& g);
std::vector<std::pair<double, double>> decoherence_curve(
    const ProfileW& w, cplx a, cplx a2, const std::vector<double>& s_grid,
    const Grid1D& g);

// u^[aw](t) = pc_inverse(ode_profile(aw, s)), s = 1/(1+t). First form returns
// the pc-inverse output grid (box/s); second evaluates the same closed form
// on a fixed lab grid (needed when differentiating in t on one grid).
Field nls_profile(const ProfileW& w, cplx a, double t, const Grid1D& ygrid);
Field nls_profile_on(const ProfileW& w, cplx a, double t, const Grid1D& lab);

// Exact pc-equation solution with data v^[aw](s_start): integrates
// i v_s + v_yy = s^{-1}|v|^2 v upward. Rejected (non_convergence_error) when
// the phase winding |a max w|^2 |log s_start| exceeds the contraction window,
// or when the correction phi = v - v^[aw] leaves twice the anchor profile's
// H^1 norm (the purely dispersive mismatch tops out near 1.2 by s = 1).
Trajectory construct_exact_pc(const ProfileW& w, cplx a, double s_start,
                              double s_end, const Grid1D& g, double dt = 1e-3);

// Slowly-decaying mKdV wave packet in the co-moving frame x' = x + 3N^2 t
// (lab x = x' - 3N^2 t; pair with EquationSpec.frame_velocity = 3N^2):
//   v = 2 eps N^{-1/2} t^{-1/2} cos(phi) w(z) [+ third harmonic],
//   z = x' / (N^{1/2} t),  phi = -(-4x^3/27t)^{1/2}
//                                + 6 eps^2 log(t) N^{-1} (-x/3t)^{1/2} w(z)^2.
// Requires t >= 2 and a window where x < 0 (box << 6 N^2).
Field muchado_profile(const ProfileW& w, double N, double t,
                      bool third_harmonic, const Grid1D& g);

// f e^{i t |f|^2} with f = a w: zero-dispersion limit profile.
Field small_dispersion_profile(const ProfileW& w, cplx a, double t,
                               const Grid1D& g);

struct SupercriticalParams {
    double gamma;
    double lambda;
};
// gamma = (-2s+1)/(-2s-1), lambda = delta^gamma; s < -1/2 required.
SupercriticalParams supercritical_params(double s, double delta);

struct SupercriticalDatum {
    Field field;
    bool kappa_warning; // H^s norm failed to stabilize under delta -> delta/2
};
// delta^{-gamma} a w(delta^{1-gamma} x)
SupercriticalDatum supercritical_datum(const ProfileW& w, cplx a, double delta,
                                       double s, const Grid1D& g);

// a e^{i(Nx + N^2 t + |a|^2 t)}: exact plane-wave NLS solution.
Field periodic_plane_wave(int N, cplx a, double t, const Grid1D& g);

// Fourier coefficients of the periodic mKdV solution sum_k b_k e^{ik psi},
// psi = Nx + (N^3 + sigma)t, over odd |k| <= k_max with b_{-k} = b_k.
struct OdeSystemSolution {
    int N = 0;
    double sigma = 0.0;
    int k_max = 0;
    std::map<int, double> b; // odd k, both signs
    double residual_norm = 0.0;
};

// Gauss-Seidel fixed point of
//   sigma = 2N S_1 / b_1,   b_k = 2N S_k / (N^3(1-k^2)+sigma)  (|k| > 1),
// S_k = sum over odd triples k1+k2+k3 = k of b_{k1} b_{k2} b_{k3}.
OdeSystemSolution solve_odesystem(int N, double b1, int k_max, double tol);

void write_odesystem_csv(const OdeSystemSolution& sol,
                         const std::filesystem::path& path);

Field periodic_mkdv_solution(const OdeSystemSolution& sol, double t,
                             const Grid1D& g);

struct SeparationReport {
    double predicted = 0.0; // scaling law with C = pi
    double measured = 0.0;  // first sampled crossing of the declared criterion
    bool separated = false;
};

// Phase-decoherence separation time of the periodic pair (amp, amp2) at
// carrier N in H^s; criterion ||u-u'|| >= (||u||+||u'||)/2, evaluated on the
// Fourier coefficients (closed forms, no grid).
SeparationReport separation_time_periodic(EqKind kind, int N, double amp,
                                          double amp2, double s);

} // namespace dlab

#endif
