#include "ctrw/laplace.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "ctrw/errors.hpp"

namespace ctrw {

namespace {

Complex poly_eval(const std::vector<double>& c, Complex s) {
    Complex acc = 0.0;
    for (std::size_t i = c.size(); i-- > 0;) acc = acc * s + c[i];
    return acc;
}

Complex poly_eval_derivative(const std::vector<double>& c, Complex s) {
    Complex acc = 0.0;
    for (std::size_t i = c.size(); i-- > 1;) acc = acc * s + static_cast<double>(i) * c[i];
    return acc;
}

std::vector<double> strip_leading_zeros(std::vector<double> c) {
    while (c.size() > 1 && c.back() == 0.0) c.pop_back();
    return c;
}

// Gaver-Stehfest weights, computed once per order in extended precision.
std::vector<double> stehfest_weights(int n) {
    if (n % 2 != 0) throw DomainError("gaver-stehfest: order must be even");
    const int half = n / 2;
    auto lfact = [](int k) {
        long double f = 1.0L;
        for (int i = 2; i <= k; ++i) f *= i;
        return f;
    };
    std::vector<double> w(static_cast<std::size_t>(n) + 1, 0.0);
    for (int k = 1; k <= n; ++k) {
        long double sum = 0.0L;
        for (int j = (k + 1) / 2; j <= std::min(k, half); ++j) {
            long double term = std::pow(static_cast<long double>(j), half) * lfact(2 * j);
            term /= lfact(half - j) * lfact(j) * lfact(j - 1) * lfact(k - j) * lfact(2 * j - k);
            sum += term;
        }
        const int sign = ((half + k) % 2 == 0) ? 1 : -1;
        w[static_cast<std::size_t>(k)] = static_cast<double>(sign * sum);
    }
    return w;
}

double invert_talbot(const std::function<Complex(Complex)>& f, double t, int m, double shift) {
    // fixed Talbot contour (single-parameter family, nodes scaled by t)
    const double r = 2.0 * m / (5.0 * t);
    auto eval = [&](Complex s) {
        const Complex v = f(s + shift);
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw NumericalError("talbot: contour evaluation failed at s = " +
                                 std::to_string(s.real()) + " + " + std::to_string(s.imag()) +
                                 "i (shift " + std::to_string(shift) + ")");
        return v;
    };
    double acc = 0.5 * std::exp(r * t) * eval(Complex(r, 0.0)).real();
    for (int k = 1; k < m; ++k) {
        const double theta = k * M_PI / m;
        const double cot = std::cos(theta) / std::sin(theta);
        const Complex s(r * theta * cot, r * theta);
        const double sigma = theta + (theta * cot - 1.0) * cot;
        const Complex term = std::exp(s * t) * eval(s) * Complex(1.0, sigma);
        acc += term.real();
    }
    return std::exp(shift * t) * acc * r / m;
}

double invert_stehfest(const std::function<Complex(Complex)>& f, double t, int n, double shift) {
    static const std::vector<double> w16 = stehfest_weights(16);
    const std::vector<double>& w = (n == 16) ? w16 : stehfest_weights(n);
    const double ln2t = std::log(2.0) / t;
    double acc = 0.0;
    for (int k = 1; k <= n; ++k) {
        const Complex v = f(Complex(k * ln2t + shift, 0.0));
        if (!std::isfinite(v.real()))
            throw NumericalError("gaver-stehfest: evaluation failed on the real axis");
        acc += w[static_cast<std::size_t>(k)] * v.real();
    }
    return std::exp(shift * t) * acc * ln2t;
}

} // namespace

std::vector<Complex> polynomial_roots(const std::vector<double>& coeffs) {
    std::vector<double> c = strip_leading_zeros(coeffs);
    const std::size_t deg = c.size() - 1;
    if (deg == 0) return {};
    if (deg == 1) return {Complex(-c[0] / c[1], 0.0)};
    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(deg),
                                                      static_cast<Eigen::Index>(deg));
    for (std::size_t i = 0; i + 1 < deg; ++i)
        companion(static_cast<Eigen::Index>(i + 1), static_cast<Eigen::Index>(i)) = 1.0;
    for (std::size_t i = 0; i < deg; ++i)
        companion(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(deg - 1)) =
            -c[i] / c[deg];
    Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success)
        throw NumericalError("companion-matrix eigenvalue iteration failed");
    std::vector<Complex> roots;
    roots.reserve(deg);
    for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i)
        roots.emplace_back(solver.eigenvalues()[i].real(), solver.eigenvalues()[i].imag());
    return roots;
}

LaplaceFunction::LaplaceFunction(std::vector<double> numerator, std::vector<double> denominator)
    : rational_(true), num_(strip_leading_zeros(std::move(numerator))),
      den_(strip_leading_zeros(std::move(denominator))) {
    if (num_.size() >= den_.size())
        throw DomainError("rational transform must be strictly proper");
    double a = 0.0;
    for (const Complex& z : polynomial_roots(den_)) a = std::max(a, z.real());
    abscissa_ = a;
    auto num = num_;
    auto den = den_;
    eval_ = [num, den](Complex s) { return poly_eval(num, s) / poly_eval(den, s); };
}

RationalInverse::RationalInverse(std::vector<double> numerator, std::vector<double> denominator) {
    const std::vector<double> num = strip_leading_zeros(std::move(numerator));
    const std::vector<double> den = strip_leading_zeros(std::move(denominator));
    if (num.size() >= den.size())
        throw DomainError("rational inversion needs a strictly proper transform");
    const double lead = den.back();
    std::vector<Complex> roots = polynomial_roots(den);
    poles_ = roots;
    for (const Complex& z : roots) abscissa_ = std::max(abscissa_, z.real());

    // cluster near-degenerate roots into multiplicity classes
    double scale = 0.0;
    for (const Complex& z : roots) scale = std::max(scale, std::abs(z));
    const double tol = 1e-7 * std::max(scale, 1.0);
    std::vector<bool> used(roots.size(), false);
    for (std::size_t i = 0; i < roots.size(); ++i) {
        if (used[i]) continue;
        std::vector<std::size_t> cluster{i};
        for (std::size_t j = i + 1; j < roots.size(); ++j) {
            if (!used[j] && std::abs(roots[j] - roots[i]) < tol) cluster.push_back(j);
        }
        for (std::size_t j : cluster) used[j] = true;
        if (cluster.size() > 2)
            throw UnsupportedError("rational inversion: root multiplicity above 2");

        Complex z = 0.0;
        for (std::size_t j : cluster) z += roots[j];
        z /= static_cast<double>(cluster.size());
        // force conjugate-symmetric arithmetic for (nearly) real roots
        if (std::abs(z.imag()) < tol) z = Complex(z.real(), 0.0);

        // Q(z) = lead * prod over other roots (z - z_j)
        Complex q = lead, dlogq = 0.0;
        for (std::size_t j = 0; j < roots.size(); ++j) {
            if (std::find(cluster.begin(), cluster.end(), j) != cluster.end()) continue;
            q *= z - roots[j];
            dlogq += 1.0 / (z - roots[j]);
        }
        if (std::abs(q) == 0.0)
            throw NumericalError("rational inversion: coincident root clusters");

        Term term;
        term.pole = z;
        if (cluster.size() == 1) {
            term.coef_const = poly_eval(num, z) / q;
            term.coef_linear = 0.0;
        } else {
            const Complex n0 = poly_eval(num, z);
            const Complex n1 = poly_eval_derivative(num, z);
            term.coef_linear = n0 / q;
            term.coef_const = (n1 - n0 * dlogq) / q;
        }
        terms_.push_back(term);
    }
}

double RationalInverse::value(double t) const {
    Complex acc = 0.0;
    double magnitude = 0.0;
    for (const Term& term : terms_) {
        const Complex contrib = (term.coef_linear * t + term.coef_const) * std::exp(term.pole * t);
        acc += contrib;
        magnitude += std::abs(contrib);
    }
    if (std::abs(acc.imag()) > 1e-8 * std::max(1.0, magnitude))
        throw NumericalError("rational inversion: imaginary residue leakage");
    return acc.real();
}

double RationalInverse::derivative(double t) const {
    Complex acc = 0.0;
    double magnitude = 0.0;
    for (const Term& term : terms_) {
        const Complex contrib =
            (term.coef_linear + (term.coef_linear * t + term.coef_const) * term.pole) *
            std::exp(term.pole * t);
        acc += contrib;
        magnitude += std::abs(contrib);
    }
    if (std::abs(acc.imag()) > 1e-8 * std::max(1.0, magnitude))
        throw NumericalError("rational inversion: imaginary residue leakage");
    return acc.real();
}

double invert_rational(const std::vector<double>& numerator, const std::vector<double>& denominator,
                       double t) {
    return RationalInverse(numerator, denominator).value(t);
}

double invert(const LaplaceFunction& f, double t, InversionMethod method, int nodes) {
    if (!(t > 0.0)) throw DomainError("laplace inversion needs t > 0");
    const double shift = std::max(0.0, f.abscissa());
    switch (method) {
    case InversionMethod::Talbot:
        return invert_talbot([&f](Complex s) { return f(s); }, t, nodes > 0 ? nodes : 48, shift);
    case InversionMethod::GaverStehfest:
        return invert_stehfest([&f](Complex s) { return f(s); }, t, nodes > 0 ? nodes : 16, shift);
    }
    return 0.0;
}

} // namespace ctrw
