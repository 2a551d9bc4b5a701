#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "ctrw/math_util.hpp"

namespace ctrw {

// Evaluable s-domain function with a declared abscissa of convergence.
class LaplaceFunction {
  public:
    using Evaluator = std::function<Complex(Complex)>;

    LaplaceFunction(Evaluator f, double abscissa)
        : eval_(std::move(f)), abscissa_(abscissa) {}

    // rational transform, coefficients in ascending powers of s
    LaplaceFunction(std::vector<double> numerator, std::vector<double> denominator);

    Complex operator()(Complex s) const { return eval_(s); }
    double abscissa() const { return abscissa_; }
    bool is_rational() const { return rational_; }
    const std::vector<double>& numerator() const { return num_; }
    const std::vector<double>& denominator() const { return den_; }

  private:
    Evaluator eval_;
    double abscissa_ = 0.0;
    bool rational_ = false;
    std::vector<double> num_, den_;
};

enum class InversionMethod { Talbot, GaverStehfest };

// Bromwich inversion at t > 0.  Talbot: fixed contour with M nodes scaled by
// t (default M = 48); Gaver-Stehfest: N-term real-axis sampling (default 16),
// used as a cross-check.
double invert(const LaplaceFunction& f, double t, InversionMethod method = InversionMethod::Talbot,
              int nodes = 0);

// Partial-fraction expansion of a strictly proper rational transform with
// real coefficients.  Denominator roots come from companion-matrix
// eigenvalues; near-degenerate pairs are collapsed to a double root.
class RationalInverse {
  public:
    RationalInverse(std::vector<double> numerator, std::vector<double> denominator);

    double value(double t) const;
    double derivative(double t) const;
    const std::vector<Complex>& poles() const { return poles_; }
    double abscissa() const { return abscissa_; }

  private:
    struct Term {
        Complex pole;
        Complex coef_const;  // b in (a t + b) e^{z t}
        Complex coef_linear; // a, zero for simple poles
    };
    std::vector<Term> terms_;
    std::vector<Complex> poles_;
    double abscissa_ = 0.0;
};

double invert_rational(const std::vector<double>& numerator, const std::vector<double>& denominator,
                       double t);

// Roots of a real-coefficient polynomial (ascending coefficients) via the
// balanced companion matrix.
std::vector<Complex> polynomial_roots(const std::vector<double>& coeffs);

} // namespace ctrw
