// Acceptance gate: one pass/fail line per criterion, nonzero exit on any
// failure. Runs standalone (no doctest) so the output stays one line each.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <numbers>
#include <string>
#include <vector>

#include "dlab/evolve.hpp"
#include "dlab/experiments.hpp"
#include "dlab/families.hpp"
#include "dlab/fft.hpp"
#include "dlab/miura.hpp"
#include "dlab/spectral.hpp"
#include "dlab/transforms.hpp"
#include "helpers.hpp"

using namespace dlab;
using cplx = dlab::cplx;
constexpr double pi = std::numbers::pi;

namespace {

int g_failures = 0;

struct Check {
    bool ok = true;
    std::string detail;
    void require(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            if (!detail.empty()) detail += "; ";
            detail += what;
        }
    }
    void note(const std::string& what) {
        if (!detail.empty()) detail += "; ";
        detail += what;
    }
};

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

template <class F>
void criterion(int id, const char* name, F body) {
    auto start = std::chrono::steady_clock::now();
    Check c;
    try {
        body(c);
    } catch (const std::exception& e) {
        c.ok = false;
        c.note(std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(
                      std::chrono::steady_clock::now() - start)
                      .count();
    std::printf("criterion %2d %-4s %s (%s%.1fs)\n", id,
                c.ok ? "PASS" : "FAIL", name,
                c.detail.empty() ? "" : (c.detail + ", ").c_str(), secs);
    std::fflush(stdout);
    if (!c.ok) ++g_failures;
}

Field gaussian(const Grid1D& g, double amp) {
    return sample_field(
        g, [amp](double x) { return cplx(amp * std::exp(-x * x), 0.0); }, true);
}

} // namespace

int main() {
    auto suite_start = std::chrono::steady_clock::now();

    criterion(1, "plane-wave evolution is exact", [](Check& c) {
        auto t0 = std::chrono::steady_clock::now();
        Grid1D g(64, 2.0 * pi);
        auto tr = evolve({EqKind::NLS}, {periodic_plane_wave(8, 0.7, 0.0, g)},
                         0.0, 1.0, 1e-3);
        double worst = 0.0;
        for (const auto& r : residual({EqKind::NLS}, tr, 0.0))
            if (!r.endpoint) worst = std::max(worst, r.value);
        double secs = std::chrono::duration<double>(
                          std::chrono::steady_clock::now() - t0)
                          .count();
        c.require(worst < 1e-6, "L2 residual " + num(worst) + " >= 1e-6");
        c.require(secs < 5.0, "runtime over 5s");
        c.note("residual=" + num(worst));
    });

    criterion(2, "mass and energy conservation", [](Check& c) {
        Grid1D g(256, 40.0);
        auto cn = conservation_report(
            evolve({EqKind::NLS}, {gaussian(g, 0.1)}, 0.0, 5.0, 2e-3));
        auto cm = conservation_report(
            evolve({EqKind::MKDV}, {gaussian(g, 0.1)}, 0.0, 5.0, 2e-3));
        c.require(cn.has_energy && cm.has_energy, "missing energy functional");
        c.require(cn.mass_drift < 1e-8, "NLS mass " + num(cn.mass_drift));
        c.require(cn.energy_drift < 1e-5, "NLS energy " + num(cn.energy_drift));
        c.require(cm.mass_drift < 1e-8, "mKdV mass " + num(cm.mass_drift));
        c.require(cm.energy_drift < 1e-5, "mKdV energy " + num(cm.energy_drift));
        c.note("drifts=" + num(cn.energy_drift) + "/" + num(cm.energy_drift));
    });

    criterion(3, "step-halving convergence orders", [](Check& c) {
        auto t0 = std::chrono::steady_clock::now();
        Grid1D g(256, 40.0);
        auto ratio = [](const EquationSpec& eq, State f, double t0_, double t1,
                        double dt) {
            auto a = evolve(eq, f, t0_, t1, dt).samples.back().second;
            auto b = evolve(eq, f, t0_, t1, dt / 2).samples.back().second;
            auto cst = evolve(eq, f, t0_, t1, dt / 4).samples.back().second;
            double n1 = 0.0, n2 = 0.0;
            for (std::size_t k = 0; k < a.size(); ++k) {
                n1 = std::max(n1, l2_distance(a[k], b[k]));
                n2 = std::max(n2, l2_distance(b[k], cst[k]));
            }
            return n1 / n2;
        };
        auto in_window = [&](double r, int p, const char* tag) {
            bool ok = r > std::pow(2.0, p - 0.5) && r < std::pow(2.0, p + 0.5);
            c.require(ok, std::string(tag) + " ratio " + num(r) +
                              " outside order-" + std::to_string(p) + " window");
        };
        in_window(ratio({EqKind::NLS}, {gaussian(g, 1.0)}, 0.0, 1.0, 0.02), 2,
                  "NLS");
        in_window(ratio({EqKind::PC_NLS}, {gaussian(g, 0.5)}, 0.25, 1.0, 0.02),
                  2, "PC");
        in_window(ratio({EqKind::MKDV}, {gaussian(g, 0.5)}, 0.0, 1.0, 0.02), 4,
                  "mKdV");
        Grid1D gk(512, 40.0);
        Field sol = sample_field(
            gk,
            [](double x) {
                double c_ = std::cosh(0.5 * x);
                return cplx(0.5 * 0.5 / (2.0 * c_ * c_), 0.0);
            },
            true);
        in_window(ratio({EqKind::KDV}, {sol}, 0.0, 1.0, 2e-3), 4, "KdV");
        in_window(ratio({EqKind::MKDV_SYSTEM},
                        {gaussian(g, 0.3), gaussian(g, 0.1)}, 0.0, 1.0, 1e-3),
                  4, "system");
        double secs = std::chrono::duration<double>(
                          std::chrono::steady_clock::now() - t0)
                          .count();
        c.require(secs < 60.0, "runtime over 1min");
    });

    criterion(4, "Miura map intertwines mKdV and KdV flows", [](Check& c) {
        Grid1D g(1u << 12, 40.0 * pi);
        Field v0 = gaussian(g, 0.2);
        auto mk = evolve({EqKind::MKDV}, {v0}, 0.0, 1.0, 0.01,
                         {std::size_t(1) << 30});
        auto kd = evolve({EqKind::KDV}, {miura(v0)}, 0.0, 1.0, 0.01,
                         {std::size_t(1) << 30});
        double gap = sobolev_norm(
            miura(mk.samples.back().second[0]) - kd.samples.back().second[0],
            -1.0);
        c.require(gap < 1e-4, "H^-1 gap " + num(gap));
        c.note("gap=" + num(gap));
    });

    criterion(5, "generalized Miura inversion round-trips", [](Check& c) {
        auto t0 = std::chrono::steady_clock::now();
        Grid1D g(256, 2.0 * pi);
        double worst = 0.0;
        int worst_iter = 0;
        for (std::uint64_t seed = 1; seed <= 20; ++seed) {
            Field u = seeded_rough_field(g, 1, 32, seed, -0.75, 1.0);
            auto inv = invert_gen_miura(u, 1.0, 0.0, 1e-9, 30);
            worst = std::max(worst, inv.residual);
            worst_iter = std::max(worst_iter, inv.iterations);
        }
        double secs = std::chrono::duration<double>(
                          std::chrono::steady_clock::now() - t0)
                          .count();
        c.require(worst < 1e-8, "round-trip " + num(worst));
        c.require(worst_iter <= 30, "iterations " + std::to_string(worst_iter));
        c.require(secs < 10.0, "runtime over 10s");
        c.note("worst=" + num(worst) + ", iters<=" + std::to_string(worst_iter));
    });

    criterion(6, "factorized KdV flow matches the direct solver", [](Check& c) {
        Grid1D g(256, 2.0 * pi);
        Field u0 = sample_field(
            g, [](double x) { return cplx(0.2 * std::cos(6.0 * x), 0.0); },
            true);
        auto pipe = kdv_endpoint_solve(u0, 1.0, 0.5, 1.25e-3);
        auto direct = evolve({EqKind::KDV}, {u0}, 0.0, 0.5, 1.25e-3,
                             {std::size_t(1) << 30});
        double gap = sobolev_norm(pipe.samples.back().second[0] -
                                      direct.samples.back().second[0],
                                  -1.0);
        c.require(gap < 1e-4, "H^-1 gap " + num(gap));
        c.note("gap=" + num(gap));
    });

    criterion(7, "phase decoherence: oracle match and gap scaling", [](Check& c) {
        Grid1D g(1024, 32.0);
        ProfileW w = gaussian_profile(0.1);
        for (double s : {1.0, 0.5, 0.1, 0.01}) {
            double theta = -std::log(s);
            double oracle = std::sqrt(testutil::adaptive_simpson(
                [&](double y) {
                    cplx A = 0.1 * std::exp(-y * y);
                    cplx B = 1.2 * A;
                    return std::norm(
                        A * std::polar(1.0, std::norm(A) * theta) -
                        B * std::polar(1.0, std::norm(B) * theta));
                },
                -16.0, 16.0, 1e-14));
            double got = decoherence_curve(w, 1.0, 1.2, {s}, g)[0].second;
            c.require(std::abs(got - oracle) < 1e-6,
                      "oracle gap " + num(std::abs(got - oracle)) + " at s=" +
                          num(s));
        }
        // crossing s* vs amplitude gap: theta* ~ C / |a^2 - a'^2|
        double half = 0.0;
        std::vector<double> inv_gap, log_s_star;
        for (double a2 : {1.2, 1.1, 1.05}) {
            double wl2 = sobolev_norm(sample_profile(w, g), 0.0);
            half = 0.5 * (1.0 + a2) * wl2;
            double lo = 0.0, hi = 1.0;
            while (decoherence_distance(w, 1.0, a2, hi, g) < half) hi *= 2.0;
            for (int it = 0; it < 60; ++it) {
                double mid = 0.5 * (lo + hi);
                (decoherence_distance(w, 1.0, a2, mid, g) < half ? lo : hi) =
                    mid;
            }
            inv_gap.push_back(1.0 / std::abs(1.0 - a2 * a2));
            log_s_star.push_back(-hi); // log s* = -theta*
        }
        c.require(log_s_star[0] > log_s_star[1] && log_s_star[1] > log_s_star[2],
                  "s* not monotone in the amplitude gap");
        double r = testutil::pearson(inv_gap, log_s_star);
        c.require(std::abs(r) >= 0.9, "correlation " + num(r));
        c.note("corr=" + num(r));
    });

    criterion(8, "periodic mKdV family: residual and separation law", [](Check& c) {
        for (int N : {8, 16, 32}) {
            auto sol = solve_odesystem(N, 0.5, 9, 1e-13);
            c.require(sol.residual_norm < 1e-6,
                      "N=" + std::to_string(N) + " residual " +
                          num(sol.residual_norm));
        }
        auto scan = scan_separation_periodic(EqKind::MKDV, 0.0, {8, 16, 32},
                                             0.4, 0.5);
        double want = -1.0; // 2s - 1 at s = 0
        c.require(std::abs(scan.fitted_exponent - want) <= 0.2 * std::abs(want),
                  "exponent " + num(scan.fitted_exponent));
        c.note("exponent=" + num(scan.fitted_exponent));
    });

    criterion(9, "periodic NLS family separation law", [](Check& c) {
        auto scan = scan_separation_periodic(EqKind::NLS, -0.25,
                                             {8, 16, 32, 64}, 1.0, 1.1);
        double want = -0.5; // 2s at s = -1/4
        c.require(std::abs(scan.fitted_exponent - want) <= 0.2 * std::abs(want),
                  "exponent " + num(scan.fitted_exponent));
        c.note("exponent=" + num(scan.fitted_exponent));
    });

    criterion(10, "embedded wave packet residual scaling", [](Check& c) {
        auto st = embed_residual_study({16, 32, 64}, 0.02, 65536);
        c.require(st.fitted_exponent >= -1.9 && st.fitted_exponent <= -1.1,
                  "exponent " + num(st.fitted_exponent));
        c.note("exponent=" + num(st.fitted_exponent));
    });

    criterion(11, "slowly-decaying packet: residual decay and norm", [](Check& c) {
        auto st = muchado_decay_study(16.0, 0.1, {2.001, 4.0, 8.0, 16.0, 32.0,
                                                  64.0},
                                      65536, 2048.0, false);
        c.require(st.residual_slope <= -1.7,
                  "slope " + num(st.residual_slope));
        double lo = st.hs_norm[0], hi = st.hs_norm[0];
        for (double n : st.hs_norm) {
            lo = std::min(lo, n);
            hi = std::max(hi, n);
        }
        c.require(hi / lo < 4.0, "norm spread " + num(hi / lo));
        c.note("slope=" + num(st.residual_slope));
    });

    criterion(12, "zero-dispersion approximation error", [](Check& c) {
        auto st = small_dispersion_study({0.2, 0.1, 0.05}, 1.0, 0.1, 1.0, 2048,
                                         1e-3);
        c.require(st.error[0] > st.error[1] && st.error[1] > st.error[2],
                  "H^2 error not decreasing in delta");
        c.require(st.fitted_exponent >= 1.5,
                  "exponent " + num(st.fitted_exponent));
        c.note("exponent=" + num(st.fitted_exponent));
    });

    criterion(13, "supercritical datum normalization", [](Check& c) {
        c.require(supercritical_params(-1.0, 0.1).gamma == 3.0,
                  "gamma(-1) != 3");
        Grid1D g(1u << 15, 20.0);
        ProfileW w = hermite_profile(0.1);
        std::vector<double> ns;
        for (double delta : {0.2, 0.1, 0.05}) {
            auto d = supercritical_datum(w, 1.0, delta, -1.0, g);
            c.require(!d.kappa_warning,
                      "kappa warning at delta=" + num(delta));
            ns.push_back(sobolev_norm(d.field, -1.0));
        }
        for (double n : ns)
            c.require(std::abs(n - ns.back()) < 0.1 * ns.back(),
                      "norm " + num(n) + " off " + num(ns.back()) +
                          " by over 10%");
        c.note("norms=" + num(ns[0]) + "/" + num(ns[1]) + "/" + num(ns[2]));
    });

    criterion(14, "property gate: core invariants", [suite_start](Check& c) {
        Grid1D g(512, 35.0);
        Field f = testutil::random_band_limited(g, 1, 100, 5, false);

        // transform round trip
        auto bins = f.samples;
        fft_forward(bins);
        fft_inverse(bins);
        double rt = 0.0;
        for (std::size_t j = 0; j < bins.size(); ++j)
            rt = std::max(rt, std::abs(bins[j] - f[j]));
        c.require(rt < 1e-10 * f.max_abs(), "fft round trip " + num(rt));

        // Parseval: spectral H^0 norm against the direct sample sum
        double direct = 0.0;
        for (std::size_t j = 0; j < f.size(); ++j) direct += std::norm(f[j]);
        direct = std::sqrt(direct * g.box_length / double(f.size()));
        double spec = sobolev_norm(f, 0.0);
        c.require(std::abs(spec - direct) < 1e-10 * direct,
                  "Parseval gap " + num(std::abs(spec - direct)));

        // projection idempotence
        Field p1 = band_project(f, 10.0, 40.0);
        Field p2 = band_project(p1, 10.0, 40.0);
        c.require(l2_distance(p1, p2) < 1e-12 * sobolev_norm(p1, 0.0),
                  "band projection not idempotent");

        // pc round trip (smooth field; the chirp must stay resolved)
        Field sm = sample_field(g, [](double x) {
            return cplx(0.4 * std::exp(-x * x / 4.0), 0.0);
        });
        auto fw = pc_forward(sm, 0.75);
        auto bk = pc_inverse(fw.field, fw.s);
        c.require(l2_distance(bk.field, sm) < 1e-10 * sobolev_norm(sm, 0.0) &&
                      std::abs(bk.t - 0.75) < 1e-12,
                  "pc round trip");

        // reality preservation under the real-equation flows
        Field r0 = gaussian(Grid1D(256, 40.0), 0.3);
        auto tr = evolve({EqKind::MKDV}, {r0}, 0.0, 0.5, 1e-3);
        c.require(tr.samples.back().second[0].reality_ok(1e-10),
                  "mKdV flow broke reality");

        // grid independence at 5%: same run, doubled resolution
        Grid1D g2(512, 40.0);
        auto e1 = evolve({EqKind::MKDV}, {r0}, 0.0, 0.5, 1e-3).samples.back();
        auto e2 = evolve({EqKind::MKDV}, {gaussian(g2, 0.3)}, 0.0, 0.5, 1e-3)
                      .samples.back();
        double n1 = sobolev_norm(e1.second[0], 0.25);
        double n2 = sobolev_norm(e2.second[0], 0.25);
        c.require(std::abs(n1 - n2) < 0.05 * n2,
                  "grid dependence " + num(std::abs(n1 - n2) / n2));

        double total = std::chrono::duration<double>(
                           std::chrono::steady_clock::now() - suite_start)
                           .count();
        c.require(total < 600.0, "suite over 10min");
        c.note("suite=" + num(total) + "s");
    });

    std::printf("%d of 14 criteria passed\n", 14 - g_failures);
    return g_failures == 0 ? 0 : 1;
}
