#ifndef DLAB_EXPERIMENTS_HPP
#define DLAB_EXPERIMENTS_HPP

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "dlab/evolve.hpp"
#include "dlab/families.hpp"

namespace dlab {

const char* version_string();

// Parameters for one named experiment run. Unset keys fall back to the
// experiment's documented defaults; unknown keys are rejected by run().
struct ExperimentConfig {
    std::string experiment;
    std::map<std::string, std::string> params;
    std::filesystem::path out_dir = "dlab_out";
    std::uint64_t seed = 1;
    bool exact = false; // line experiment: fixed-point construction variant

    double real(const std::string& key, double fallback) const;
    long integer(const std::string& key, long fallback) const;
    std::string str(const std::string& key, const std::string& fallback) const;
    std::vector<double> list(const std::string& key,
                             const std::string& fallback) const;
};

// key=value file; reserved keys: experiment, seed, out, exact.
ExperimentConfig load_config(const std::filesystem::path& path);

struct ExperimentInfo {
    std::string name;
    std::string summary;
    // key -> "default | meaning"
    std::vector<std::pair<std::string, std::string>> keys;
};
const std::vector<ExperimentInfo>& experiment_catalog();

// Dispatch; writes report.csv, manifest.txt and plots/*.svg under
// cfg.out_dir. Fixed seed + config give byte-identical CSV output. Throws
// config_error on unknown experiment/key.
void run(const ExperimentConfig& cfg);

// ---- computation kernels (shared by run() and the acceptance suite) ----

struct SeparationScan {
    double s = 0.0;
    std::vector<int> N_list;
    std::vector<SeparationReport> reports;
    double fitted_exponent = 0.0; // log-log slope of measured time vs N
};
// Periodic plane-wave (NLS) or coefficient-ladder (MKDV) families at fixed
// H^s size; measured separation time per N plus the fitted N-exponent.
SeparationScan scan_separation_periodic(EqKind kind, double s,
                                        const std::vector<int>& N_list,
                                        double amp, double amp2);

// L^2 distance at time t between the evolved mkdv coefficient family and its
// closed form (cross-check that the family is time-exact).
double periodic_mkdv_evolution_gap(int N, double b1, double t);

struct LineSeparationStudy {
    std::vector<double> t_grid;
    std::vector<double> distance; // H^s distance along t_grid
    double norm_a = 0.0, norm_a2 = 0.0; // initial family norms
    double initial_distance = 0.0;
    double separation_time = 0.0;
    bool separated = false;
    // |a-a'| -> initial H^s distance, for the linearity check
    std::vector<std::pair<double, double>> gap_linearity;
};
// Modulated, scaled, boosted profile family on the line, evaluated in the
// packet's co-moving frame. exact=true replaces the closed-form inner profile
// by the fixed-point construction (shorter horizon, s >= 1/64).
LineSeparationStudy line_separation_study(double s, int N, double a, double a2,
                                          double eps, std::size_t n, double box,
                                          bool exact);

struct EmbedResidualStudy {
    std::vector<int> N_list;
    std::vector<double> residual; // H^{1/4}, co-moving frame, at t = 1
    double fitted_exponent = 0.0; // vs N
};
// Residual of the NLS-to-mKdV embedded wave packet built on an exact
// (split-step) inner solution; target_n controls the embedded grid.
EmbedResidualStudy embed_residual_study(const std::vector<int>& N_list,
                                        double eps, std::size_t target_n);

struct MuchadoStudy {
    std::vector<double> t_grid;
    std::vector<double> residual; // H^{1/4} PDE residual of the profile
    std::vector<double> hs_norm;  // H^{1/4} norm of the profile
    double residual_slope = 0.0;
    // optional evolved-distance probe (empty when disabled)
    std::vector<double> dist_t;
    std::vector<double> dist;
    double dist_slope = 0.0;
};
MuchadoStudy muchado_decay_study(double N, double eps,
                                 const std::vector<double>& t_grid,
                                 std::size_t n, double box, bool evolved);

struct SmallDispersionStudy {
    std::vector<double> delta_list;
    std::vector<double> error;    // H^2 against the zero-dispersion profile
    double fitted_exponent = 0.0; // vs delta
};
SmallDispersionStudy small_dispersion_study(const std::vector<double>& deltas,
                                            double a, double eps, double t,
                                            std::size_t n, double dt);

struct EndpointStudy {
    double smooth_gap = 0.0; // pipeline vs direct KdV, H^{-1} at t = 0.5
    std::vector<double> probe_gap;
    std::vector<double> probe_C; // Lipschitz ratios at T
    std::vector<double> t_grid;
    std::vector<double> norm_history; // H^{-3/4} of the rough run
};
EndpointStudy kdv_endpoint_study(std::uint64_t seed, double A, double T,
                                 double dt, std::size_t n);

// Deterministic random real field, Fourier support kmin <= |k| <= kmax,
// rescaled to the given H^s norm (rough-data generator for the experiments).
Field seeded_rough_field(const Grid1D& g, long kmin, long kmax,
                         std::uint64_t seed, double s, double target_norm);

} // namespace dlab

#endif
