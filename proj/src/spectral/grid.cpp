#include "epct/spectral/grid.hpp"

#include "epct/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace epct::spectral {

Grid::Grid(int n, double half_width) : n_(n), half_width_(half_width) {
    if (n < 16 || (n & (n - 1)) != 0) throw DomainError("grid size must be a power of two >= 16");
    if (!(half_width > 0.0) || !std::isfinite(half_width)) throw DomainError("grid half-width must be positive");
}

double Grid::wavenumber(int m) const noexcept { return std::numbers::pi / half_width_ * mode(m); }

bool Grid::contains(const Point& p) const noexcept {
    return p.x1 >= -half_width_ && p.x1 < half_width_ && p.x2 >= -half_width_ && p.x2 < half_width_;
}

ScalarField::ScalarField(const Grid& grid, double fill) : grid_(grid), data_(grid.size(), fill) {}

ScalarField ScalarField::from_function(const Grid& grid, const std::function<double(double, double)>& f) {
    ScalarField out(grid);
    for (int j = 0; j < grid.n(); ++j)
        for (int i = 0; i < grid.n(); ++i) out(i, j) = f(grid.coord(i), grid.coord(j));
    return out;
}

double ScalarField::max_abs() const noexcept {
    double m = 0.0;
    for (double v : data_) m = std::max(m, std::abs(v));
    return m;
}

double ScalarField::min() const noexcept { return *std::min_element(data_.begin(), data_.end()); }
double ScalarField::max() const noexcept { return *std::max_element(data_.begin(), data_.end()); }

double ScalarField::mean() const noexcept {
    long double s = 0.0L;
    for (double v : data_) s += v;
    return static_cast<double>(s / static_cast<long double>(data_.size()));
}

void ScalarField::axpy(double s, const ScalarField& other) {
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += s * other.data_[k];
}

double VectorField::max_speed() const noexcept {
    double m = 0.0;
    const auto a = u1.data();
    const auto b = u2.data();
    for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, std::hypot(a[k], b[k]));
    return m;
}

}  // namespace epct::spectral
