#pragma once

// Fourier-multiplier operators on the periodic grid: inverse Laplacian,
// Riesz transforms R_ij = d_i d_j Delta^{-1} (multiplier k_i k_j / |k|^2),
// spectral derivatives, the 2/3 dealiasing mask, trigonometric point
// interpolation, and the norm diagnostics.
//
// Every Poisson/Riesz multiplier has its zero mode set to 0, so inputs are
// effectively replaced by their mean-free part.

#include "epct/riccati.hpp"
#include "epct/spectral/grid.hpp"
#include "epct/spectral/transform.hpp"

#include <cmath>
#include <utility>
#include <vector>

namespace epct::spectral {

/// One sample of the norm diagnostics.
struct NormSample {
    double t = 0.0;
    double rho_sup = 0.0;      ///< max |rho|
    double phi_sup = 0.0;      ///< max |Delta^{-1}(rho - c_b)|
    double dphi_dx_sup = 0.0;  ///< max |d/dx1 Delta^{-1}(rho - c_b)|
};

class SpectralOperators {
public:
    explicit SpectralOperators(const Grid& grid);

    const Grid& grid() const noexcept { return grid_; }
    const FourierTransform& fft() const noexcept { return fft_; }

    /// Wavenumber along x1 for half-spectrum index m1 in [0, N/2].
    double k1(int m1) const noexcept { return k1_[m1]; }
    /// Wavenumber along x2 for index j in [0, N).
    double k2(int j) const noexcept { return k2_[j]; }

    /// True for modes kept by the 2/3 rule (|mode| <= N/3 in both directions).
    bool dealias_keep(int m1, int j) const noexcept;
    void dealias(Spectrum& s) const;

    /// Multiplies every coefficient by m(k1, k2).
    template <class Multiplier>
    void apply(Spectrum& s, Multiplier&& m) const {
        const int half = grid_.n() / 2 + 1;
        for (int j = 0; j < grid_.n(); ++j)
            for (int m1 = 0; m1 < half; ++m1) s(m1, j) *= m(k1_[m1], k2_[j]);
    }

    /// d/dx_axis (axis 0 = x1, 1 = x2); the Nyquist mode is dropped.
    void differentiate(Spectrum& s, int axis) const;

    Spectrum forward(const ScalarField& f) const { return fft_.forward(f); }
    ScalarField inverse(const Spectrum& s) const { return fft_.inverse(s); }

    /// phi with Delta phi = f - mean(f); phi has zero mean.
    ScalarField poisson_inverse(const ScalarField& f) const;
    ScalarField laplacian(const ScalarField& f) const;
    /// R_ij[h] for i, j in {1, 2}.
    ScalarField riesz_apply(int i, int j, const ScalarField& h) const;
    ScalarField derivative(const ScalarField& f, int axis) const;

    /// (f1, f2) = (k (R11 - R22)[rho - c_b], k (R12 + R21)[rho - c_b]) at x.
    std::pair<double, double> f1_f2_eval(const ScalarField& rho, const PhysicalParams& params, const Point& x) const;

    /// Sup norms of rho, Delta^{-1}(rho - c_b) and its x1 derivative (grid maxima).
    NormSample diagnostics(const ScalarField& rho, const PhysicalParams& params, double t = 0.0) const;

private:
    Grid grid_;
    FourierTransform fft_;
    std::vector<double> k1_;
    std::vector<double> k2_;
};

/// Evaluates trigonometric interpolants of half-plane spectra at one point.
/// Nyquist modes are skipped, which is exact for dealiased fields.
class PointEvaluator {
public:
    PointEvaluator(const SpectralOperators& ops, const Point& x);

    double operator()(const Spectrum& s) const {
        return (*this)(s, [](double, double) { return Complex(1.0, 0.0); });
    }

    /// Value at x of the field whose spectrum is m(k1, k2) * s.
    template <class Multiplier>
    double operator()(const Spectrum& s, Multiplier&& m) const {
        const int n = ops_.grid().n();
        const int nyq = n / 2;
        double total = 0.0;
        for (int j = 0; j < n; ++j) {
            if (j == nyq) continue;
            const double kj = ops_.k2(j);
            Complex row(0.0, 0.0);
            for (int m1 = 0; m1 < nyq; ++m1) {
                const Complex c = s(m1, j) * m(ops_.k1(m1), kj) * e1_[m1];
                row += (m1 == 0 ? 1.0 : 2.0) * c;
            }
            total += (row * e2_[j]).real();
        }
        return total / static_cast<double>(ops_.grid().size());
    }

private:
    const SpectralOperators& ops_;
    std::vector<Complex> e1_;
    std::vector<Complex> e2_;
};

// Free-function forms; each builds the transforms it needs.
ScalarField poisson_inverse(const ScalarField& f, const Grid& grid);
ScalarField riesz_apply(int i, int j, const ScalarField& h, const Grid& grid);
std::pair<double, double> f1_f2_eval(const ScalarField& rho, const PhysicalParams& params, const Point& x,
                                     const Grid& grid);
NormSample diagnostics(const ScalarField& rho, const PhysicalParams& params, const Grid& grid);

}  // namespace epct::spectral
