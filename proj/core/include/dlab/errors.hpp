#ifndef DLAB_ERRORS_HPP
#define DLAB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace dlab {

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A requested operation would leave the result under-resolved on its grid
// (spectral tail check failed, carrier above Nyquist, ...).
struct resolution_error : error {
    using error::error;
};

// Parameter outside the mathematical domain of the operation.
struct domain_error : error {
    using error::error;
};

// Unsupported derivative order, bad cutoff, etc.
struct invalid_argument_error : error {
    using error::error;
};

// Time integration produced NaN/overflow; carries the last good time.
struct blow_up_error : error {
    double last_good_time;
    blow_up_error(const std::string& msg, double t)
        : error(msg), last_good_time(t) {}
};

// A fixed-point construction failed to contract.
struct non_convergence_error : error {
    using error::error;
};

// Small denominator in the periodic coefficient system.
struct resonance_error : error {
    using error::error;
};

// Generalized Miura inversion needs a larger high-pass cutoff.
struct cutoff_error : error {
    double suggested_cutoff;
    cutoff_error(const std::string& msg, double suggestion)
        : error(msg), suggested_cutoff(suggestion) {}
};

// File could not be read/written or has a malformed layout.
struct io_error : error {
    using error::error;
};

// Bad or incomplete experiment configuration.
struct config_error : error {
    using error::error;
};

} // namespace dlab

#endif
