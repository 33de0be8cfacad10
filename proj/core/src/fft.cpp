#include "dlab/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>

namespace dlab {

namespace {

// One forward/inverse plan pair per size, planned once with FFTW_ESTIMATE for
// determinism. fftw_execute_dft on a cached plan with fresh arrays is
// thread-safe; planning is not, hence the mutex.
struct PlanPair {
    fftw_plan fwd = nullptr;
    fftw_plan inv = nullptr;
};

std::mutex plan_mutex;
std::map<std::size_t, PlanPair>& plan_cache() {
    static std::map<std::size_t, PlanPair> cache;
    return cache;
}

PlanPair get_plans(std::size_t n) {
    std::lock_guard<std::mutex> lock(plan_mutex);
    auto& cache = plan_cache();
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    fftw_complex* buf = fftw_alloc_complex(n);
    PlanPair p;
    p.fwd = fftw_plan_dft_1d(int(n), buf, buf, FFTW_FORWARD, FFTW_ESTIMATE);
    p.inv = fftw_plan_dft_1d(int(n), buf, buf, FFTW_BACKWARD, FFTW_ESTIMATE);
    fftw_free(buf);
    cache.emplace(n, p);
    return p;
}

} // namespace

void fft_forward(std::vector<std::complex<double>>& data) {
    PlanPair p = get_plans(data.size());
    auto* ptr = reinterpret_cast<fftw_complex*>(data.data());
    fftw_execute_dft(p.fwd, ptr, ptr);
}

void fft_inverse(std::vector<std::complex<double>>& data) {
    PlanPair p = get_plans(data.size());
    auto* ptr = reinterpret_cast<fftw_complex*>(data.data());
    fftw_execute_dft(p.inv, ptr, ptr);
    const double scale = 1.0 / double(data.size());
    for (auto& z : data) z *= scale;
}

} // namespace dlab
