#include "dlab/evolve.hpp"

#include <array>
#include <cmath>

#include "dlab/errors.hpp"
#include "dlab/fft.hpp"

namespace dlab {

namespace {

bool nls_family(EqKind k) {
    return k == EqKind::NLS || k == EqKind::SMALL_DISP_NLS || k == EqKind::PC_NLS;
}

double state_max_abs(const State& st) {
    double m = 0.0;
    for (const auto& f : st) m = std::max(m, f.max_abs());
    return m;
}

bool state_has_nan(const State& st) {
    for (const auto& f : st)
        for (const auto& z : f.samples)
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return true;
    return false;
}

// ---- NLS-family Strang splitting (exact substeps) ----

void linear_phase_step(const EquationSpec& eq, Field& u, double tau) {
    auto bins = spectrum(u);
    for (std::size_t j = 0; j < u.grid.num_points; ++j) {
        double xi = u.grid.xi(j);
        double phase;
        switch (eq.kind) {
            case EqKind::NLS: phase = xi * xi * tau; break;
            case EqKind::SMALL_DISP_NLS:
                phase = eq.delta * eq.delta * xi * xi * tau; break;
            default: phase = -xi * xi * tau; break; // PC_NLS
        }
        bins[j] *= std::polar(1.0, phase);
    }
    Field out = field_from_spectrum(u.grid, std::move(bins));
    u.samples = std::move(out.samples);
}

// Exact solution of the nonlinear substep: |u| is pointwise conserved, so the
// phase rotates by the time integral of the coefficient.
void nonlinear_phase_step(const EquationSpec& eq, Field& u, double t0, double t1) {
    double factor = (eq.kind == EqKind::PC_NLS) ? -std::log(t1 / t0) : (t1 - t0);
    for (auto& z : u.samples) z *= std::polar(1.0, factor * std::norm(z));
}

void strang_step(const EquationSpec& eq, Field& u, double t0, double t1) {
    linear_phase_step(eq, u, 0.5 * (t1 - t0));
    nonlinear_phase_step(eq, u, t0, t1);
    linear_phase_step(eq, u, 0.5 * (t1 - t0));
}

// ---- KdV-family integrating-factor RK4 ----

using Bins = std::vector<std::vector<cplx>>; // per component

Bins to_bins(const State& st) {
    Bins b(st.size());
    for (std::size_t c = 0; c < st.size(); ++c) b[c] = spectrum(st[c]);
    return b;
}

State from_bins(const Grid1D& g, const Bins& b, const State& like) {
    State st;
    for (std::size_t c = 0; c < b.size(); ++c)
        st.push_back(field_from_spectrum(g, b[c], like[c].reality_tag));
    return st;
}

// spectral bins of the nonlinear term for each component
Bins nonlinear_bins(const EquationSpec& eq, const Grid1D& g, const Bins& b,
                    const State& like) {
    State u = from_bins(g, b, like);
    Bins out(b.size());
    if (eq.kind == EqKind::MKDV) {
        Field cub = dealiased_triple(u[0], u[0], u[0]);
        out[0] = spectrum(spectral_derivative(cub, 1));
        for (auto& z : out[0]) z *= 2.0; // 6 u^2 u_x = 2 (u^3)_x
    } else if (eq.kind == EqKind::KDV) {
        Field sq = dealiased_product(u[0], u[0]);
        out[0] = spectrum(spectral_derivative(sq, 1));
        for (auto& z : out[0]) z *= 3.0; // 6 u u_x = 3 (u^2)_x
    } else { // MKDV_SYSTEM
        Field q = dealiased_product(u[0], u[0]) + u[1];
        for (int c = 0; c < 2; ++c) {
            Field dx = spectral_derivative(u[std::size_t(c)], 1);
            Field t = dealiased_product(q, dx);
            out[std::size_t(c)] = spectrum(t);
            for (auto& z : out[std::size_t(c)]) z *= 6.0;
        }
    }
    return out;
}

struct IfRk4 {
    std::vector<cplx> E, E2; // exp(L dt/2), exp(L dt); |.| = 1 (L imaginary)

    IfRk4(const EquationSpec& eq, const Grid1D& g, double dt) {
        const std::size_t n = g.num_points;
        E.resize(n);
        E2.resize(n);
        for (std::size_t j = 0; j < n; ++j) {
            double xi = g.xi(j);
            // u_t + c u_x + u_xxx = N(u): L = i xi^3 - i c xi
            double L = xi * xi * xi - eq.frame_velocity * xi;
            if (j == n / 2) { // unpaired Nyquist would break reality
                E[j] = E2[j] = 0.0;
                continue;
            }
            E[j] = std::polar(1.0, 0.5 * L * dt);
            E2[j] = std::polar(1.0, L * dt);
        }
    }

    void step(const EquationSpec& eq, const Grid1D& g, Bins& U, double dt,
              const State& like) const {
        auto axpy = [](const Bins& a, double h, const Bins& k) {
            Bins r = a;
            for (std::size_t c = 0; c < r.size(); ++c)
                for (std::size_t j = 0; j < r[c].size(); ++j)
                    r[c][j] += h * k[c][j];
            return r;
        };
        auto mul = [](const std::vector<cplx>& e, Bins b) {
            for (auto& comp : b)
                for (std::size_t j = 0; j < comp.size(); ++j) comp[j] *= e[j];
            return b;
        };
        Bins k1 = nonlinear_bins(eq, g, U, like);
        Bins k2 = nonlinear_bins(eq, g, mul(E, axpy(U, 0.5 * dt, k1)), like);
        Bins k3 = nonlinear_bins(eq, g, axpy(mul(E, U), 0.5 * dt, k2), like);
        Bins k4 = nonlinear_bins(eq, g, axpy(mul(E2, U), dt, mul(E, k3)), like);
        Bins out = mul(E2, U);
        Bins t1 = mul(E2, k1);
        Bins t23 = mul(E, axpy(k2, 1.0, k3));
        for (std::size_t c = 0; c < out.size(); ++c)
            for (std::size_t j = 0; j < out[c].size(); ++j)
                out[c][j] += dt / 6.0 *
                             (t1[c][j] + 2.0 * t23[c][j] + k4[c][j]);
        U = std::move(out);
    }
};

} // namespace

Trajectory evolve(const EquationSpec& eq, State initial, double t0, double t1,
                  double dt, const EvolveOptions& opts) {
    if (!(dt > 0.0)) throw invalid_argument_error("evolve: dt must be positive");
    if (initial.size() != std::size_t(eq.field_arity()))
        throw invalid_argument_error("evolve: state arity mismatch");
    if (eq.kind == EqKind::SMALL_DISP_NLS && !(eq.delta > 0.0 && eq.delta <= 1.0))
        throw invalid_argument_error("evolve: delta must lie in (0,1]");
    const Grid1D g = initial[0].grid;
    const double init_max = state_max_abs(initial);

    Trajectory traj;
    traj.equation = eq;
    traj.scheme_order = nls_family(eq.kind) ? 2 : 4;
    traj.step_size = dt * double(opts.store_stride);

    auto check_state = [&](const State& st, double t_good) {
        if (state_has_nan(st) || state_max_abs(st) > 1e6 * std::max(init_max, 1e-300))
            throw blow_up_error("evolve: blow-up detected", t_good);
    };

    if (eq.kind == EqKind::PC_NLS) {
        if (!(t0 > 0.0)) throw domain_error("evolve: PC_NLS requires t0 > 0");
        if (!(t1 >= t0)) throw domain_error("evolve: PC_NLS integrates s upward");
        State st = std::move(initial);
        double s = t0;
        traj.samples.emplace_back(s, st);
        std::size_t step_i = 0;
        while (s < t1 * (1.0 - 1e-15)) {
            double ds = std::min(dt * s, t1 - s);
            strang_step(eq, st[0], s, s + ds);
            double s_prev = s;
            s += ds;
            check_state(st, s_prev);
            ++step_i;
            if (step_i % opts.store_stride == 0 || s >= t1 * (1.0 - 1e-15))
                traj.samples.emplace_back(s, st);
        }
        return traj;
    }

    const double span = t1 - t0;
    std::size_t n_steps = std::max<std::size_t>(
        1, std::size_t(std::ceil(std::abs(span) / dt - 1e-12)));
    const double h = span / double(n_steps); // signed
    traj.step_size = std::abs(h) * double(opts.store_stride);

    if (nls_family(eq.kind)) {
        State st = std::move(initial);
        traj.samples.emplace_back(t0, st);
        for (std::size_t i = 0; i < n_steps; ++i) {
            double ta = t0 + double(i) * h, tb = t0 + double(i + 1) * h;
            strang_step(eq, st[0], ta, tb);
            check_state(st, ta);
            if ((i + 1) % opts.store_stride == 0 || i + 1 == n_steps)
                traj.samples.emplace_back(tb, st);
        }
        return traj;
    }

    // KdV family
    IfRk4 scheme(eq, g, h);
    Bins U = to_bins(initial);
    // drop the unpaired Nyquist mode once up front (reality preservation)
    for (auto& comp : U) comp[g.num_points / 2] = 0.0;
    traj.samples.emplace_back(t0, from_bins(g, U, initial));
    for (std::size_t i = 0; i < n_steps; ++i) {
        scheme.step(eq, g, U, h, initial);
        double tb = t0 + double(i + 1) * h;
        if ((i + 1) % opts.store_stride == 0 || i + 1 == n_steps) {
            State st = from_bins(g, U, initial);
            check_state(st, tb - h);
            traj.samples.emplace_back(tb, st);
        } else if (i % 16 == 0) {
            State st = from_bins(g, U, initial);
            check_state(st, tb - h);
        }
    }
    return traj;
}

State equation_defect(const EquationSpec& eq, double t, const State& u,
                      const State& dudt) {
    const cplx I(0.0, 1.0);
    State out;
    switch (eq.kind) {
        case EqKind::NLS:
        case EqKind::SMALL_DISP_NLS: {
            double d2 = eq.kind == EqKind::NLS ? 1.0 : eq.delta * eq.delta;
            Field uxx = spectral_derivative(u[0], 2);
            Field r(u[0].grid);
            for (std::size_t j = 0; j < r.size(); ++j)
                r[j] = -I * dudt[0][j] + d2 * uxx[j] -
                       std::norm(u[0][j]) * u[0][j];
            out.push_back(std::move(r));
            break;
        }
        case EqKind::PC_NLS: {
            Field uyy = spectral_derivative(u[0], 2);
            Field r(u[0].grid);
            for (std::size_t j = 0; j < r.size(); ++j)
                r[j] = I * dudt[0][j] + uyy[j] -
                       std::norm(u[0][j]) * u[0][j] / t;
            out.push_back(std::move(r));
            break;
        }
        case EqKind::MKDV:
        case EqKind::KDV: {
            Field nl = eq.kind == EqKind::MKDV
                           ? cplx(2.0, 0.0) * spectral_derivative(
                                 dealiased_triple(u[0], u[0], u[0]), 1)
                           : cplx(3.0, 0.0) * spectral_derivative(
                                 dealiased_product(u[0], u[0]), 1);
            Field ux = spectral_derivative(u[0], 1);
            Field uxxx = spectral_derivative(u[0], 3);
            Field r(u[0].grid, u[0].reality_tag);
            for (std::size_t j = 0; j < r.size(); ++j)
                r[j] = dudt[0][j] + eq.frame_velocity * ux[j] + uxxx[j] - nl[j];
            out.push_back(std::move(r));
            break;
        }
        case EqKind::MKDV_SYSTEM: {
            Field q = dealiased_product(u[0], u[0]) + u[1];
            for (int c = 0; c < 2; ++c) {
                const Field& f = u[std::size_t(c)];
                Field fx = spectral_derivative(f, 1);
                Field nl = cplx(6.0, 0.0) * dealiased_product(q, fx);
                Field fxxx = spectral_derivative(f, 3);
                Field r(f.grid, f.reality_tag);
                for (std::size_t j = 0; j < r.size(); ++j)
                    r[j] = dudt[std::size_t(c)][j] + eq.frame_velocity * fx[j] +
                           fxxx[j] - nl[j];
                out.push_back(std::move(r));
            }
            break;
        }
    }
    return out;
}

namespace {

double state_hs_norm(const State& st, SobolevIndex s) {
    double acc = 0.0;
    for (const auto& f : st) {
        double v = sobolev_norm(f, s);
        acc += v * v;
    }
    return std::sqrt(acc);
}

State fd_combine(const std::vector<const State*>& states,
                 const std::vector<double>& coeff) {
    State out;
    const State& first = *states[0];
    for (std::size_t c = 0; c < first.size(); ++c) {
        Field acc(first[c].grid);
        for (std::size_t i = 0; i < states.size(); ++i)
            for (std::size_t j = 0; j < acc.size(); ++j)
                acc[j] += coeff[i] * (*states[i])[c][j];
        out.push_back(std::move(acc));
    }
    return out;
}

} // namespace

namespace {

// Fornberg weights for the first derivative at t0 over arbitrary nodes
std::vector<double> fd_weights(double t0, const std::vector<double>& x) {
    const std::size_t n = x.size();
    std::vector<std::array<double, 2>> C(n, {0.0, 0.0});
    C[0][0] = 1.0;
    double c1 = 1.0, c4 = x[0] - t0;
    for (std::size_t i = 1; i < n; ++i) {
        double c2 = 1.0, c5 = c4;
        c4 = x[i] - t0;
        for (std::size_t j = 0; j < i; ++j) {
            double c3 = x[i] - x[j];
            c2 *= c3;
            if (j + 1 == i) {
                C[i][1] = c1 * (C[i - 1][0] - c5 * C[i - 1][1]) / c2;
                C[i][0] = -c1 * c5 * C[i - 1][0] / c2;
            }
            C[j][1] = (c4 * C[j][1] - C[j][0]) / c3;
            C[j][0] = c4 * C[j][0] / c3;
        }
        c1 = c2;
    }
    std::vector<double> w(n);
    for (std::size_t j = 0; j < n; ++j) w[j] = C[j][1];
    return w;
}

} // namespace

std::vector<ResidualSample> residual(const EquationSpec& eq, const Trajectory& traj,
                                     SobolevIndex s) {
    const auto& S = traj.samples;
    if (S.size() < 3)
        throw invalid_argument_error("residual: need at least 3 time samples");
    const std::size_t n = S.size();
    const std::size_t width = std::min<std::size_t>(7, n); // 6th order when possible

    std::vector<ResidualSample> out;
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t a = i > width / 2 ? i - width / 2 : 0;
        a = std::min(a, n - width);
        std::vector<double> ts(width);
        std::vector<const State*> sts(width);
        for (std::size_t j = 0; j < width; ++j) {
            ts[j] = S[a + j].first;
            sts[j] = &S[a + j].second;
        }
        State dudt = fd_combine(sts, fd_weights(S[i].first, ts));
        State defect = equation_defect(eq, S[i].first, S[i].second, dudt);
        // boundary samples lean on a one-sided stencil
        out.push_back({S[i].first, state_hs_norm(defect, s), i == 0 || i + 1 == n});
    }
    return out;
}

std::vector<ResidualSample> residual_of_profile(
    const EquationSpec& eq, const std::function<State(double)>& profile,
    const std::vector<double>& times, SobolevIndex s, double h) {
    if (!(h > 0.0)) throw invalid_argument_error("residual_of_profile: h must be positive");
    std::vector<ResidualSample> out;
    for (double t : times) {
        State m2 = profile(t - 2.0 * h), m1 = profile(t - h);
        State p1 = profile(t + h), p2 = profile(t + 2.0 * h);
        State u = profile(t);
        State dudt = fd_combine({&m2, &m1, &p1, &p2},
                                {1.0 / (12.0 * h), -8.0 / (12.0 * h),
                                 8.0 / (12.0 * h), -1.0 / (12.0 * h)});
        State defect = equation_defect(eq, t, u, dudt);
        out.push_back({t, state_hs_norm(defect, s), false});
    }
    return out;
}

namespace {

double quartic_integral(const Field& u) {
    double acc = 0.0;
    for (const auto& z : u.samples) acc += std::norm(z) * std::norm(z);
    return acc * u.grid.dx();
}

double cubic_integral(const Field& u) {
    double acc = 0.0;
    for (const auto& z : u.samples) acc += (z * z * z).real();
    return acc * u.grid.dx();
}

} // namespace

ConservationReport conservation_report(const Trajectory& traj) {
    const auto& S = traj.samples;
    if (S.size() < 2)
        throw invalid_argument_error("conservation_report: need >= 2 samples");
    const EqKind k = traj.equation.kind;

    auto total_mass = [](const State& st) {
        double m = 0.0;
        for (const auto& f : st) m += mass(f);
        return m;
    };
    auto energy = [&](const State& st) -> double {
        const Field& u = st[0];
        Field ux = spectral_derivative(u, 1);
        switch (k) {
            case EqKind::NLS: return mass(ux) + 0.5 * quartic_integral(u);
            case EqKind::SMALL_DISP_NLS:
                return traj.equation.delta * traj.equation.delta * mass(ux) +
                       0.5 * quartic_integral(u);
            case EqKind::MKDV: return mass(ux) + quartic_integral(u);
            case EqKind::KDV: return 0.5 * mass(ux) + cubic_integral(u);
            default: return 0.0;
        }
    };

    ConservationReport rep;
    rep.has_energy = (k == EqKind::NLS || k == EqKind::SMALL_DISP_NLS ||
                      k == EqKind::MKDV || k == EqKind::KDV);
    double m0 = total_mass(S[0].second);
    double e0 = rep.has_energy ? energy(S[0].second) : 0.0;
    for (const auto& [t, st] : S) {
        (void)t;
        rep.mass_drift = std::max(rep.mass_drift,
                                  std::abs(total_mass(st) - m0) / std::max(m0, 1e-300));
        if (rep.has_energy)
            rep.energy_drift = std::max(rep.energy_drift,
                                        std::abs(energy(st) - e0) /
                                            std::max(std::abs(e0), 1e-300));
    }
    return rep;
}

} // namespace dlab
