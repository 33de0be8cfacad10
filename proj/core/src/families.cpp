#include "dlab/families.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>

#include "dlab/errors.hpp"
#include "dlab/spectral.hpp"
#include "dlab/transforms.hpp"

namespace dlab {

namespace {

void require_eps(double eps) {
    if (!(eps > 0.0) || eps > 0.5)
        throw invalid_argument_error("profile amplitude must lie in (0, 0.5]");
}

} // namespace

ProfileW gaussian_profile(double eps) {
    require_eps(eps);
    return {[](double y) { return std::exp(-y * y); }, eps, ProfileW::EVEN, 0};
}

ProfileW odd_gaussian_profile(double eps) {
    require_eps(eps);
    return {[](double y) { return y * std::exp(-y * y); }, eps, ProfileW::ODD, 1};
}

ProfileW hermite_profile(double eps) {
    require_eps(eps);
    return {[](double y) {
                double y2 = y * y;
                return (16.0 * y2 * y2 - 48.0 * y2 + 12.0) * std::exp(-y2);
            },
            eps, ProfileW::EVEN, 4};
}

Field sample_profile(const ProfileW& w, const Grid1D& g) {
    return sample_field(g, [&](double y) { return cplx(w.value(y), 0.0); }, true);
}

void check_profile(const ProfileW& w, const Grid1D& g) {
    require_eps(w.epsilon);
    double mx = 0.0;
    for (std::size_t j = 0; j < g.num_points; ++j)
        mx = std::max(mx, std::abs(w.shape(g.x(j))));
    if (w.parity != ProfileW::NONE) {
        double sign = w.parity == ProfileW::ODD ? -1.0 : 1.0;
        for (std::size_t j = 0; j < g.num_points; ++j) {
            double y = g.x(j);
            if (std::abs(w.shape(-y) - sign * w.shape(y)) > 1e-10 * mx)
                throw invalid_argument_error("profile parity violated");
        }
    }
    if (w.kappa > 0) {
        auto bins = spectrum(sample_profile(w, g));
        double top = 0.0;
        for (const auto& z : bins) top = std::max(top, std::abs(z));
        if (std::abs(bins[0]) > 1e-8 * top)
            throw invalid_argument_error("profile zero mode too large for kappa > 0");
        // |w_hat| <= C |xi|^kappa near 0: the ratio at the first nonzero mode
        // must not exceed the one a few modes up by much
        double r1 = std::abs(bins[1]) / std::pow(g.xi(1), w.kappa);
        double r4 = std::abs(bins[4]) / std::pow(g.xi(4), w.kappa);
        if (r1 > 10.0 * r4)
            throw invalid_argument_error("profile lacks declared vanishing order");
    }
}

Field ode_profile(const ProfileW& w, cplx a, double s, const Grid1D& g) {
    if (!(s > 0.0) || s > 1.0)
        throw domain_error("ode_profile: s must lie in (0, 1]");
    const double logs = std::log(s);
    Field out(g);
    for (std::size_t j = 0; j < g.num_points; ++j) {
        cplx A = a * w.value(g.x(j));
        out[j] = A * std::polar(1.0, -std::norm(A) * logs);
    }
    return out;
}

double decoherence_distance(const ProfileW& w, cplx a, cplx a2, double theta,
                            const Grid1D& g) {
    double acc = 0.0;
    for (std::size_t j = 0; j < g.num_points; ++j) {
        cplx A = a * w.value(g.x(j));
        cplx B = a2 * w.value(g.x(j));
        // e^{-i|.|^2 log s} with log s = -theta
        acc += std::norm(A * std::polar(1.0, std::norm(A) * theta) -
                         B * std::polar(1.0, std::norm(B) * theta));
    }
    return std::sqrt(acc * g.dx());
}

std::vector<std::pair<double, double>> decoherence_curve(
    const ProfileW& w, cplx a, cplx a2, const std::vector<double>& s_grid,
    const Grid1D& g) {
    std::vector<std::pair<double, double>> out;
    for (double s : s_grid) {
        if (!(s > 0.0) || s > 1.0)
            throw domain_error("decoherence_curve: s must lie in (0, 1]");
        out.emplace_back(s, decoherence_distance(w, a, a2, -std::log(s), g));
    }
    return out;
}

Field nls_profile(const ProfileW& w, cplx a, double t, const Grid1D& ygrid) {
    if (t < 0.0) throw domain_error("nls_profile: t must be nonnegative");
    const double s = 1.0 / (1.0 + t);
    return pc_inverse(ode_profile(w, a, s, ygrid), s).field;
}

Field nls_profile_on(const ProfileW& w, cplx a, double t, const Grid1D& lab) {
    if (t < 0.0) throw domain_error("nls_profile_on: t must be nonnegative");
    const double s = 1.0 / (1.0 + t);
    const double logs = std::log(s);
    Field out(lab);
    const double rs = std::sqrt(s);
    for (std::size_t j = 0; j < lab.num_points; ++j) {
        double x = lab.x(j);
        cplx A = a * w.value(x * s);
        out[j] = rs * std::polar(1.0, -x * x / (4.0 * (t + 1.0))) * A *
                 std::polar(1.0, -std::norm(A) * logs);
    }
    return out;
}

Trajectory construct_exact_pc(const ProfileW& w, cplx a, double s_start,
                              double s_end, const Grid1D& g, double dt) {
    if (s_start < 1.0 / 64.0)
        throw domain_error("construct_exact_pc: s_start below supported minimum");
    // the iteration only contracts while the total nonlinear phase winding
    // |a w|^2 |log s_start| stays O(1); far outside that window the correction
    // decoheres from the profile entirely
    double peak_w = sample_profile(w, g).max_abs();
    double wind = std::norm(a) * peak_w * peak_w * std::abs(std::log(s_start));
    if (wind > 8.0) {
        char buf[128];
        std::snprintf(buf, sizeof buf,
                      "construct_exact_pc: phase winding %.3g exceeds the "
                      "contraction window (limit 8)", wind);
        throw non_convergence_error(buf);
    }
    Trajectory traj = evolve({EqKind::PC_NLS},
                             {ode_profile(w, a, s_start, g)}, s_start, s_end, dt);
    // The dispersive mismatch alone reaches ~1.2 times the profile norm by
    // s = 1, and the profile's phase gradient contributes an |a|^3-sized
    // piece; both track the anchor profile's H^1 size, so the detector sits
    // at twice that. Non-contraction shows up as a sharp rise well past it.
    double bound = 2.0 * sobolev_norm(ode_profile(w, a, s_start, g), 1.0);
    for (const auto& [s, st] : traj.samples) {
        Field phi = st[0] - ode_profile(w, a, s, g);
        double n = sobolev_norm(phi, 1.0);
        if (n > bound || !std::isfinite(n)) {
            char buf[128];
            std::snprintf(buf, sizeof buf,
                          "construct_exact_pc: correction left the contraction "
                          "window at s=%.6g (%.3g > %.3g)", s, n, bound);
            throw non_convergence_error(buf);
        }
    }
    return traj;
}

Field muchado_profile(const ProfileW& w, double N, double t,
                      bool third_harmonic, const Grid1D& g) {
    if (t < 2.0) throw domain_error("muchado_profile: requires t >= 2");
    const double eps = w.epsilon;
    const double rn = std::sqrt(N);
    Field out(g, true);
    for (std::size_t j = 0; j < g.num_points; ++j) {
        double xp = g.x(j);               // co-moving coordinate
        double x = xp - 3.0 * N * N * t;  // lab coordinate
        if (x >= 0.0)
            throw domain_error("muchado_profile: window leaves x < 0 region "
                               "(shrink the box or raise N*t)");
        double z = xp / (rn * t);
        double ww = w.shape(z);
        double phix = std::sqrt(-x / (3.0 * t)); // = Phi_x
        double Phi = -std::sqrt(4.0 * (-x) * (-x) * (-x) / (27.0 * t));
        double phi = Phi + 6.0 * eps * eps * std::log(t) / N * phix * ww * ww;
        double v = 2.0 * eps / rn / std::sqrt(t) * std::cos(phi) * ww;
        if (third_harmonic) {
            double phi3 = -0.25 * ww * ww * ww /
                          (1.0 - z / (3.0 * N * rn));
            v += 2.0 * eps * eps * eps * std::pow(N, -3.5) * std::pow(t, -1.5) *
                 std::cos(3.0 * phi) * phi3;
        }
        out[j] = cplx(v, 0.0);
    }
    return out;
}

Field small_dispersion_profile(const ProfileW& w, cplx a, double t,
                               const Grid1D& g) {
    Field out(g);
    for (std::size_t j = 0; j < g.num_points; ++j) {
        cplx f = a * w.value(g.x(j));
        out[j] = f * std::polar(1.0, t * std::norm(f));
    }
    return out;
}

SupercriticalParams supercritical_params(double s, double delta) {
    if (!(s < -0.5))
        throw domain_error("supercritical_params: requires s < -1/2");
    if (!(delta > 0.0) || delta > 1.0)
        throw invalid_argument_error("supercritical_params: delta in (0, 1]");
    double gamma = (-2.0 * s + 1.0) / (-2.0 * s - 1.0);
    return {gamma, std::pow(delta, gamma)};
}

namespace {

Field supercritical_field(const ProfileW& w, cplx a, double delta, double gamma,
                          const Grid1D& g) {
    const double amp = std::pow(delta, -gamma);
    const double squeeze = std::pow(delta, 1.0 - gamma);
    Field out(g);
    for (std::size_t j = 0; j < g.num_points; ++j)
        out[j] = amp * a * w.value(squeeze * g.x(j));
    return out;
}

} // namespace

SupercriticalDatum supercritical_datum(const ProfileW& w, cplx a, double delta,
                                       double s, const Grid1D& g) {
    double gamma = supercritical_params(s, delta).gamma;
    Field f = supercritical_field(w, a, delta, gamma, g);
    if (a != 0.0 && spectral_tail_fraction(f) > 1e-8)
        throw resolution_error("supercritical_datum: under-resolved at this delta");
    bool warn = false;
    if (a != 0.0) {
        double n1 = sobolev_norm(f, s);
        try {
            Field h = supercritical_field(w, a, 0.5 * delta, gamma, g);
            if (spectral_tail_fraction(h) <= 1e-8)
                warn = std::abs(sobolev_norm(h, s) - n1) > 0.1 * n1;
        } catch (const error&) {
            // cannot cross-check at delta/2; leave unflagged
        }
    }
    return {std::move(f), warn};
}

Field periodic_plane_wave(int N, cplx a, double t, const Grid1D& g) {
    if (N <= 0) throw invalid_argument_error("periodic_plane_wave: N must be positive");
    if (double(N) >= g.xi_max())
        throw resolution_error("periodic_plane_wave: carrier above Nyquist");
    const double phase_t = (double(N) * N + std::norm(a)) * t;
    return sample_field(g, [&](double x) {
        return a * std::polar(1.0, N * x + phase_t);
    });
}

namespace {

struct OdeWork {
    int k_max;
    std::vector<double> b; // index (k-1)/2 for odd k >= 1

    double get(int k) const {
        int a = std::abs(k);
        return a <= k_max ? b[std::size_t((a - 1) / 2)] : 0.0;
    }
    // sum over odd triples k1+k2+k3 = k of b b b
    double S(int k) const {
        double acc = 0.0;
        for (int k1 = -k_max; k1 <= k_max; k1 += 2)
            for (int k2 = -k_max; k2 <= k_max; k2 += 2) {
                int k3 = k - k1 - k2;
                if (std::abs(k3) <= k_max)
                    acc += get(k1) * get(k2) * get(k3);
            }
        return acc;
    }
};

} // namespace

OdeSystemSolution solve_odesystem(int N, double b1, int k_max, double tol) {
    if (N < 1) throw invalid_argument_error("solve_odesystem: N must be positive");
    if (!(b1 > 0.0)) throw domain_error("solve_odesystem: b1 must be positive");
    if (k_max < 3 || k_max % 2 == 0 || k_max > 31)
        throw invalid_argument_error("solve_odesystem: k_max odd in [3, 31]");
    if (!(tol > 0.0)) throw invalid_argument_error("solve_odesystem: tol > 0");

    OdeWork work{k_max, std::vector<double>(std::size_t((k_max + 1) / 2), 0.0)};
    work.b[0] = b1;
    const double N3 = double(N) * N * N;
    double sigma = 0.0, prev_change = 0.0;
    int growing = 0;
    bool done = false;
    for (int sweep = 0; sweep < 1000 && !done; ++sweep) {
        double change = 0.0;
        sigma = 2.0 * N * work.S(1) / b1;
        for (int k = 3; k <= k_max; k += 2) {
            double den = N3 * (1.0 - double(k) * k) + sigma;
            if (std::abs(den) < 1e-9 * N3 * (double(k) * k - 1.0))
                throw resonance_error("solve_odesystem: small denominator at k=" +
                                      std::to_string(k));
            double next = 2.0 * N * work.S(k) / den;
            change = std::max(change, std::abs(next - work.get(k)));
            work.b[std::size_t((k - 1) / 2)] = next;
        }
        if (change < tol) done = true;
        if (sweep > 0 && change > prev_change) {
            if (++growing >= 3)
                throw non_convergence_error("solve_odesystem: diverging iteration");
        } else {
            growing = 0;
        }
        prev_change = change;
    }
    if (!done) throw non_convergence_error("solve_odesystem: sweep limit reached");

    OdeSystemSolution sol;
    sol.N = N;
    sol.sigma = sigma;
    sol.k_max = k_max;
    sol.residual_norm = std::abs(b1 * sigma - 2.0 * N * work.S(1));
    for (int k = 1; k <= k_max; k += 2) {
        sol.b[k] = work.get(k);
        sol.b[-k] = work.get(k);
        if (k > 1) {
            double den = N3 * (1.0 - double(k) * k) + sigma;
            sol.residual_norm = std::max(
                sol.residual_norm,
                std::abs(work.get(k) * den - 2.0 * N * work.S(k)));
        }
    }
    return sol;
}

void write_odesystem_csv(const OdeSystemSolution& sol,
                         const std::filesystem::path& path) {
    std::ofstream os(path);
    if (!os) throw io_error("cannot open for writing: " + path.string());
    char buf[128];
    std::snprintf(buf, sizeof buf, "# N=%d,sigma=%.17g,residual=%.17g\n", sol.N,
                  sol.sigma, sol.residual_norm);
    os << buf << "k,b_k\n";
    for (const auto& [k, bk] : sol.b) {
        std::snprintf(buf, sizeof buf, "%d,%.17g\n", k, bk);
        os << buf;
    }
    if (!os) throw io_error("write failed: " + path.string());
}

Field periodic_mkdv_solution(const OdeSystemSolution& sol, double t,
                             const Grid1D& g) {
    if (double(sol.k_max) * sol.N >= g.xi_max())
        throw resolution_error("periodic_mkdv_solution: k_max*N above Nyquist");
    Field out(g, true);
    const double wt = (double(sol.N) * sol.N * sol.N + sol.sigma) * t;
    for (std::size_t j = 0; j < g.num_points; ++j) {
        double psi = sol.N * g.x(j) + wt;
        double v = 0.0;
        for (const auto& [k, bk] : sol.b)
            if (k > 0) v += 2.0 * bk * std::cos(k * psi);
        out[j] = cplx(v, 0.0);
    }
    return out;
}

namespace {

// phase gap at which |a e^{i th} - a2| reaches half the norm sum
double crossing_phase(double a, double a2) {
    double c = (a * a + a2 * a2 - 0.25 * (a + a2) * (a + a2)) / (2.0 * a * a2);
    return std::acos(std::clamp(c, -1.0, 1.0));
}

} // namespace

SeparationReport separation_time_periodic(EqKind kind, int N, double amp,
                                          double amp2, double s) {
    if (kind != EqKind::NLS && kind != EqKind::MKDV)
        throw invalid_argument_error("separation_time_periodic: NLS or MKDV only");
    if (N < 1 || !(amp > 0.0) || !(amp2 > 0.0))
        throw invalid_argument_error("separation_time_periodic: bad parameters");
    SeparationReport rep;
    const double pi = std::numbers::pi;
    const double gap = std::abs(amp - amp2);

    if (kind == EqKind::NLS) {
        rep.predicted = gap > 0.0
                            ? pi / (gap * gap) * std::pow(double(N), 2.0 * s)
                            : std::numeric_limits<double>::infinity();
        double a = amp * std::pow(double(N), -s);
        double a2 = amp2 * std::pow(double(N), -s);
        double rate = std::abs(a * a - a2 * a2); // relative phase speed
        if (rate == 0.0) return rep;             // never decoheres
        double weight = std::pow(1.0 + double(N) * N, 0.5 * s) *
                        std::sqrt(2.0 * pi);
        double half_sum = 0.5 * weight * (a + a2);
        double tstar = crossing_phase(a, a2) / rate;
        double dt = tstar / 256.0;
        for (int j = 0; j * dt <= 4.0 * tstar; ++j) {
            double th = rate * j * dt;
            double d = weight * std::abs(a * std::polar(1.0, th) - a2);
            if (d >= half_sum) {
                rep.measured = j * dt;
                rep.separated = true;
                break;
            }
        }
        return rep;
    }

    // MKDV: full coefficient ladders; relative phase (sigma - sigma') t per k
    rep.predicted = gap > 0.0
                        ? pi / (gap * gap) * std::pow(double(N), 2.0 * s - 1.0)
                        : std::numeric_limits<double>::infinity();
    auto sol = solve_odesystem(N, amp * std::pow(double(N), -s), 9, 1e-13);
    auto sol2 = solve_odesystem(N, amp2 * std::pow(double(N), -s), 9, 1e-13);
    double rate = std::abs(sol.sigma - sol2.sigma);
    if (rate == 0.0) return rep;
    auto hs = [&](auto f) { // sqrt(2 pi sum_k |f(k)|^2 (1+(kN)^2)^s)
        double acc = 0.0;
        for (int k = -sol.k_max; k <= sol.k_max; k += 2)
            acc += std::norm(f(k)) *
                   std::pow(1.0 + double(k) * k * N * N, s);
        return std::sqrt(2.0 * pi * acc);
    };
    double half_sum = 0.5 * (hs([&](int k) { return cplx(sol.b.at(k), 0.0); }) +
                             hs([&](int k) { return cplx(sol2.b.at(k), 0.0); }));
    double tstar = crossing_phase(sol.b.at(1), sol2.b.at(1)) / rate;
    double dt = tstar / 256.0;
    for (int j = 0; j * dt <= 6.0 * tstar; ++j) {
        double t = j * dt;
        double d = hs([&](int k) {
            return cplx(sol.b.at(k), 0.0) * std::polar(1.0, k * sol.sigma * t) -
                   cplx(sol2.b.at(k), 0.0) * std::polar(1.0, k * sol2.sigma * t);
        });
        if (d >= half_sum) {
            rep.measured = t;
            rep.separated = true;
            break;
        }
    }
    return rep;
}

} // namespace dlab
