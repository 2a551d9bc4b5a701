#include "ctrw/math_util.hpp"

#include <algorithm>
#include <cmath>

#include "ctrw/errors.hpp"

namespace ctrw {

namespace {

// 10-point Gauss-Legendre nodes/weights on [-1,1].
constexpr double kGaussX[5] = {
    0.14887433898163121088, 0.43339539412924719080, 0.67940956829902440623,
    0.86506336668898451073, 0.97390652851717172008};
constexpr double kGaussW[5] = {
    0.29552422471475287017, 0.26926671930999635509, 0.21908636251598204400,
    0.14945134915058059315, 0.06667134430868813759};

} // namespace

double gauss_panels(const std::function<double(double)>& f, double a, double b, int panels) {
    if (panels < 1) panels = 1;
    const double h = (b - a) / panels;
    std::vector<double> parts;
    parts.reserve(static_cast<std::size_t>(panels));
    for (int p = 0; p < panels; ++p) {
        const double mid = a + (p + 0.5) * h;
        const double half = 0.5 * h;
        double acc = 0.0;
        for (int i = 0; i < 5; ++i) {
            acc += kGaussW[i] * (f(mid - half * kGaussX[i]) + f(mid + half * kGaussX[i]));
        }
        parts.push_back(acc * half);
    }
    return pairwise_sum(parts);
}

double erfcx(double z) {
    if (z < 0.0) return std::exp(z * z) * std::erfc(z);
    if (z <= 20.0) return std::exp(z * z) * std::erfc(z);
    // asymptotic series: erfcx(z) ~ 1/(z sqrt(pi)) * sum (-1)^n (2n-1)!! / (2 z^2)^n
    const double inv2z2 = 1.0 / (2.0 * z * z);
    double term = 1.0, sum = 1.0;
    for (int n = 1; n <= 10; ++n) {
        term *= -(2.0 * n - 1.0) * inv2z2;
        sum += term;
        if (std::abs(term) < 1e-17 * std::abs(sum)) break;
    }
    return sum / (z * std::sqrt(M_PI));
}

double pairwise_sum(std::span<const double> v) {
    if (v.size() <= 32) {
        double s = 0.0;
        for (double x : v) s += x;
        return s;
    }
    const std::size_t half = v.size() / 2;
    return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

Complex expm1_ratio1(Complex x) {
    if (std::abs(x) < 1e-3) {
        // 1 - x/2 + x^2/6 - x^3/24 + x^4/120
        return 1.0 - x / 2.0 + x * x / 6.0 - x * x * x / 24.0 + x * x * x * x / 120.0;
    }
    return (1.0 - std::exp(-x)) / x;
}

Complex expm1_ratio2(Complex x) {
    if (std::abs(x) < 1e-3) {
        // 1/2 - x/3 + x^2/8 - x^3/30 + x^4/144
        return 0.5 - x / 3.0 + x * x / 8.0 - x * x * x / 30.0 + x * x * x * x / 144.0;
    }
    return (1.0 - (1.0 + x) * std::exp(-x)) / (x * x);
}

CubicSpline::CubicSpline(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
    const std::size_t n = x_.size();
    if (n < 2 || y_.size() != n) throw DomainError("spline: need at least two nodes");
    c2_.assign(n, 0.0);
    if (n == 2) return;
    std::vector<double> u(n, 0.0);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double sig = (x_[i] - x_[i - 1]) / (x_[i + 1] - x_[i - 1]);
        const double p = sig * c2_[i - 1] + 2.0;
        c2_[i] = (sig - 1.0) / p;
        u[i] = (y_[i + 1] - y_[i]) / (x_[i + 1] - x_[i]) -
               (y_[i] - y_[i - 1]) / (x_[i] - x_[i - 1]);
        u[i] = (6.0 * u[i] / (x_[i + 1] - x_[i - 1]) - sig * u[i - 1]) / p;
    }
    c2_[n - 1] = 0.0;
    for (std::size_t k = n - 1; k-- > 0;) c2_[k] = c2_[k] * c2_[k + 1] + u[k];
}

double CubicSpline::operator()(double x) const {
    const auto it = std::upper_bound(x_.begin(), x_.end(), x);
    std::size_t i = (it == x_.begin()) ? 0 : static_cast<std::size_t>(it - x_.begin()) - 1;
    if (i + 1 >= x_.size()) i = x_.size() - 2;
    const double h = x_[i + 1] - x_[i];
    const double a = (x_[i + 1] - x) / h;
    const double b = (x - x_[i]) / h;
    return a * y_[i] + b * y_[i + 1] +
           ((a * a * a - a) * c2_[i] + (b * b * b - b) * c2_[i + 1]) * h * h / 6.0;
}

double CubicSpline::derivative(double x) const {
    const auto it = std::upper_bound(x_.begin(), x_.end(), x);
    std::size_t i = (it == x_.begin()) ? 0 : static_cast<std::size_t>(it - x_.begin()) - 1;
    if (i + 1 >= x_.size()) i = x_.size() - 2;
    const double h = x_[i + 1] - x_[i];
    const double a = (x_[i + 1] - x) / h;
    const double b = (x - x_[i]) / h;
    return (y_[i + 1] - y_[i]) / h +
           ((3.0 * b * b - 1.0) * c2_[i + 1] - (3.0 * a * a - 1.0) * c2_[i]) * h / 6.0;
}

} // namespace ctrw
