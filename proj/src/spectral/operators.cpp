#include "epct/spectral/operators.hpp"

#include "epct/errors.hpp"

#include <algorithm>
#include <cstdlib>

namespace epct::spectral {

SpectralOperators::SpectralOperators(const Grid& grid) : grid_(grid), fft_(grid) {
    const int n = grid.n();
    k1_.resize(n / 2 + 1);
    k2_.resize(n);
    for (int m = 0; m <= n / 2; ++m) k1_[m] = grid.wavenumber(m);
    for (int j = 0; j < n; ++j) k2_[j] = grid.wavenumber(j);
}

bool SpectralOperators::dealias_keep(int m1, int j) const noexcept {
    const int n = grid_.n();
    const int cut = n / 3;
    return m1 <= cut && std::abs(grid_.mode(j)) <= cut;
}

void SpectralOperators::dealias(Spectrum& s) const {
    const int half = grid_.n() / 2 + 1;
    for (int j = 0; j < grid_.n(); ++j)
        for (int m1 = 0; m1 < half; ++m1)
            if (!dealias_keep(m1, j)) s(m1, j) = 0.0;
}

void SpectralOperators::differentiate(Spectrum& s, int axis) const {
    const int n = grid_.n();
    const int half = n / 2 + 1;
    for (int j = 0; j < n; ++j) {
        for (int m1 = 0; m1 < half; ++m1) {
            if (m1 == n / 2 || j == n / 2) {
                s(m1, j) = 0.0;
                continue;
            }
            const double k = axis == 0 ? k1_[m1] : k2_[j];
            s(m1, j) *= Complex(0.0, k);
        }
    }
}

ScalarField SpectralOperators::poisson_inverse(const ScalarField& f) const {
    Spectrum s = fft_.forward(f);
    apply(s, [](double a, double b) {
        const double k2 = a * a + b * b;
        return k2 == 0.0 ? 0.0 : -1.0 / k2;
    });
    return fft_.inverse(s);
}

ScalarField SpectralOperators::laplacian(const ScalarField& f) const {
    Spectrum s = fft_.forward(f);
    apply(s, [](double a, double b) { return -(a * a + b * b); });
    return fft_.inverse(s);
}

ScalarField SpectralOperators::riesz_apply(int i, int j, const ScalarField& h) const {
    if (i < 1 || i > 2 || j < 1 || j > 2) throw DomainError("Riesz indices must be 1 or 2");
    Spectrum s = fft_.forward(h);
    const int n = grid_.n();
    const int half = n / 2 + 1;
    for (int jj = 0; jj < n; ++jj) {
        for (int m1 = 0; m1 < half; ++m1) {
            const double a = k1_[m1];
            const double b = k2_[jj];
            const double kk = a * a + b * b;
            if (kk == 0.0) {
                s(m1, jj) = 0.0;
                continue;
            }
            const bool mixed = i != j;
            // Odd multipliers have no real Nyquist counterpart.
            if (mixed && (m1 == n / 2 || jj == n / 2)) {
                s(m1, jj) = 0.0;
                continue;
            }
            const double ki = i == 1 ? a : b;
            const double kj = j == 1 ? a : b;
            s(m1, jj) *= ki * kj / kk;
        }
    }
    return fft_.inverse(s);
}

ScalarField SpectralOperators::derivative(const ScalarField& f, int axis) const {
    Spectrum s = fft_.forward(f);
    differentiate(s, axis);
    return fft_.inverse(s);
}

std::pair<double, double> SpectralOperators::f1_f2_eval(const ScalarField& rho, const PhysicalParams& params,
                                                        const Point& x) const {
    // The zero mode is discarded, so subtracting c_b is implicit.
    const Spectrum s = fft_.forward(rho);
    const PointEvaluator at(*this, x);
    const double k = params.k();
    const double f1 = at(s, [k](double a, double b) {
        const double kk = a * a + b * b;
        return Complex(kk == 0.0 ? 0.0 : k * (a * a - b * b) / kk, 0.0);
    });
    const double f2 = at(s, [k](double a, double b) {
        const double kk = a * a + b * b;
        return Complex(kk == 0.0 ? 0.0 : 2.0 * k * a * b / kk, 0.0);
    });
    return {f1, f2};
}

NormSample SpectralOperators::diagnostics(const ScalarField& rho, const PhysicalParams&, double t) const {
    Spectrum phi_hat = fft_.forward(rho);
    apply(phi_hat, [](double a, double b) {
        const double kk = a * a + b * b;
        return kk == 0.0 ? 0.0 : -1.0 / kk;
    });
    Spectrum dphi_hat = phi_hat;
    differentiate(dphi_hat, 0);
    NormSample out;
    out.t = t;
    out.rho_sup = rho.max_abs();
    out.phi_sup = fft_.inverse(phi_hat).max_abs();
    out.dphi_dx_sup = fft_.inverse(dphi_hat).max_abs();
    return out;
}

PointEvaluator::PointEvaluator(const SpectralOperators& ops, const Point& x) : ops_(ops) {
    const Grid& g = ops.grid();
    const int n = g.n();
    e1_.resize(n / 2 + 1);
    e2_.resize(n);
    // Phases are measured from the grid origin at -L.
    const double s1 = x.x1 + g.half_width();
    const double s2 = x.x2 + g.half_width();
    for (int m = 0; m <= n / 2; ++m) e1_[m] = std::polar(1.0, ops.k1(m) * s1);
    for (int j = 0; j < n; ++j) e2_[j] = std::polar(1.0, ops.k2(j) * s2);
}

ScalarField poisson_inverse(const ScalarField& f, const Grid& grid) { return SpectralOperators(grid).poisson_inverse(f); }

ScalarField riesz_apply(int i, int j, const ScalarField& h, const Grid& grid) {
    return SpectralOperators(grid).riesz_apply(i, j, h);
}

std::pair<double, double> f1_f2_eval(const ScalarField& rho, const PhysicalParams& params, const Point& x,
                                     const Grid& grid) {
    return SpectralOperators(grid).f1_f2_eval(rho, params, x);
}

NormSample diagnostics(const ScalarField& rho, const PhysicalParams& params, const Grid& grid) {
    return SpectralOperators(grid).diagnostics(rho, params);
}

}  // namespace epct::spectral
