#pragma once

// Real 2D FFTs over a Grid, backed by FFTW.

#include "epct/spectral/grid.hpp"

#include <complex>
#include <vector>

namespace epct::spectral {

using Complex = std::complex<double>;

/// Half-plane spectrum of a real field: index j * (N/2 + 1) + m1, with m1 the
/// x1 index in [0, N/2] and j the x2 index in [0, N). Unnormalised.
class Spectrum {
public:
    explicit Spectrum(const Grid& grid) : grid_(grid), coeffs_(grid.spectral_size()) {}

    const Grid& grid() const noexcept { return grid_; }
    int half() const noexcept { return grid_.n() / 2 + 1; }

    Complex& operator()(int m1, int j) noexcept { return coeffs_[static_cast<std::size_t>(j) * half() + m1]; }
    Complex operator()(int m1, int j) const noexcept { return coeffs_[static_cast<std::size_t>(j) * half() + m1]; }

    std::vector<Complex>& coeffs() noexcept { return coeffs_; }
    const std::vector<Complex>& coeffs() const noexcept { return coeffs_; }

private:
    Grid grid_;
    std::vector<Complex> coeffs_;
};

/// Owns forward and backward FFTW plans for one grid. Plan creation is
/// serialised internally; forward/inverse may run concurrently.
class FourierTransform {
public:
    explicit FourierTransform(const Grid& grid);
    ~FourierTransform();

    FourierTransform(const FourierTransform&) = delete;
    FourierTransform& operator=(const FourierTransform&) = delete;

    const Grid& grid() const noexcept { return grid_; }

    Spectrum forward(const ScalarField& f) const;
    /// Normalised inverse: inverse(forward(f)) == f.
    ScalarField inverse(const Spectrum& s) const;

private:
    Grid grid_;
    void* forward_plan_;
    void* backward_plan_;
};

}  // namespace epct::spectral
