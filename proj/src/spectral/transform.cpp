#include "epct/spectral/transform.hpp"

#include <fftw3.h>

#include <algorithm>
#include <memory>
#include <mutex>

namespace epct::spectral {

namespace {

std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

struct FftwFree {
    void operator()(void* p) const { fftw_free(p); }
};

template <class T>
std::unique_ptr<T, FftwFree> fftw_buffer(std::size_t n) {
    return std::unique_ptr<T, FftwFree>(static_cast<T*>(fftw_malloc(sizeof(T) * n)));
}

}  // namespace

FourierTransform::FourierTransform(const Grid& grid) : grid_(grid) {
    const int n = grid.n();
    auto real = fftw_buffer<double>(grid.size());
    auto cplx = fftw_buffer<fftw_complex>(grid.spectral_size());
    std::lock_guard lock(planner_mutex());
    forward_plan_ = fftw_plan_dft_r2c_2d(n, n, real.get(), cplx.get(), FFTW_ESTIMATE | FFTW_UNALIGNED);
    backward_plan_ = fftw_plan_dft_c2r_2d(n, n, cplx.get(), real.get(), FFTW_ESTIMATE | FFTW_UNALIGNED);
}

FourierTransform::~FourierTransform() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(static_cast<fftw_plan>(forward_plan_));
    fftw_destroy_plan(static_cast<fftw_plan>(backward_plan_));
}

Spectrum FourierTransform::forward(const ScalarField& f) const {
    Spectrum out(grid_);
    // r2c leaves its input untouched, but the API is not const-correct.
    auto* in = const_cast<double*>(f.data().data());
    fftw_execute_dft_r2c(static_cast<fftw_plan>(forward_plan_), in,
                         reinterpret_cast<fftw_complex*>(out.coeffs().data()));
    return out;
}

ScalarField FourierTransform::inverse(const Spectrum& s) const {
    // c2r overwrites its input.
    std::vector<Complex> work = s.coeffs();
    ScalarField out(grid_);
    fftw_execute_dft_c2r(static_cast<fftw_plan>(backward_plan_), reinterpret_cast<fftw_complex*>(work.data()),
                         out.data().data());
    const double scale = 1.0 / static_cast<double>(grid_.size());
    for (double& v : out.data()) v *= scale;
    return out;
}

}  // namespace epct::spectral
