#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

namespace ctrw {

using Complex = std::complex<double>;

// Composite Gauss-Legendre quadrature, 10 nodes per panel.
double gauss_panels(const std::function<double(double)>& f, double a, double b, int panels);

// Scaled complementary error function exp(z^2) erfc(z), stable for large z.
double erfcx(double z);

// Deterministic pairwise summation in index order.
double pairwise_sum(std::span<const double> v);

// (1 - exp(-x)) / x and (1 - (1+x) exp(-x)) / x^2 with series fallbacks
// near x = 0 (used by the piecewise-exact transforms of tabulated models).
Complex expm1_ratio1(Complex x);
Complex expm1_ratio2(Complex x);

// Natural cubic spline on a strictly increasing grid.
class CubicSpline {
  public:
    CubicSpline() = default;
    CubicSpline(std::vector<double> x, std::vector<double> y);

    double operator()(double x) const;
    double derivative(double x) const;
    double x_min() const { return x_.front(); }
    double x_max() const { return x_.back(); }

  private:
    std::vector<double> x_, y_, c2_; // c2 = second derivatives at nodes
};

} // namespace ctrw
