#pragma once

// Periodic square [-L, L)^2 sampled at N x N points, and real fields on it.
//
// Storage is row-major with x2 selecting the row: sample (i, j) sits at
// x = (-L + i dx, -L + j dx) and is stored at index j * N + i.

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace epct::spectral {

struct Point {
    double x1 = 0.0;
    double x2 = 0.0;
};

class Grid {
public:
    /// Throws DomainError unless n is a power of two >= 16 and half_width > 0.
    Grid(int n, double half_width);

    int n() const noexcept { return n_; }
    double half_width() const noexcept { return half_width_; }
    double dx() const noexcept { return 2.0 * half_width_ / n_; }
    double coord(int i) const noexcept { return -half_width_ + i * dx(); }

    std::size_t size() const noexcept { return static_cast<std::size_t>(n_) * n_; }
    /// Complex coefficients kept by a real-to-complex transform.
    std::size_t spectral_size() const noexcept { return static_cast<std::size_t>(n_) * (n_ / 2 + 1); }

    /// Signed wavenumber of FFT index m in [0, N).
    double wavenumber(int m) const noexcept;
    /// Signed integer mode of FFT index m.
    int mode(int m) const noexcept { return m <= n_ / 2 ? m : m - n_; }

    bool contains(const Point& p) const noexcept;

    bool operator==(const Grid& other) const noexcept = default;

private:
    int n_;
    double half_width_;
};

class ScalarField {
public:
    explicit ScalarField(const Grid& grid, double fill = 0.0);

    static ScalarField from_function(const Grid& grid, const std::function<double(double, double)>& f);

    const Grid& grid() const noexcept { return grid_; }

    double& operator()(int i, int j) noexcept { return data_[static_cast<std::size_t>(j) * grid_.n() + i]; }
    double operator()(int i, int j) const noexcept { return data_[static_cast<std::size_t>(j) * grid_.n() + i]; }

    std::span<double> data() noexcept { return data_; }
    std::span<const double> data() const noexcept { return data_; }

    double max_abs() const noexcept;
    double min() const noexcept;
    double max() const noexcept;
    /// Spatial mean, accumulated in extended precision.
    double mean() const noexcept;

    /// this += s * other
    void axpy(double s, const ScalarField& other);

private:
    Grid grid_;
    std::vector<double> data_;
};

struct VectorField {
    ScalarField u1;
    ScalarField u2;

    explicit VectorField(const Grid& grid) : u1(grid), u2(grid) {}
    VectorField(ScalarField a, ScalarField b) : u1(std::move(a)), u2(std::move(b)) {}

    double max_speed() const noexcept;
};

}  // namespace epct::spectral
