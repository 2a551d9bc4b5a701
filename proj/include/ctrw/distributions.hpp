#pragma once

#include <complex>
#include <memory>
#include <optional>
#include <vector>

#include "ctrw/math_util.hpp"
#include "ctrw/rng.hpp"

namespace ctrw {

// Sojourn-time law psi: density, CDF, Laplace transform, mean, sampler.
class WaitingTimeModel {
  public:
    enum class Kind { Exponential, Erlang, Tabulated };

    static WaitingTimeModel exponential(double rate);
    static WaitingTimeModel erlang(double rate, int shape);
    // grid of (t, density) values; linearly interpolated, validated to unit mass
    static WaitingTimeModel tabulated(std::vector<double> t, std::vector<double> density);

    Kind kind() const { return kind_; }
    double rate() const { return rate_; }
    int shape() const { return shape_; }
    bool is_erlang2() const { return kind_ == Kind::Erlang && shape_ == 2; }

    double pdf(double t) const;
    double cdf(double t) const;
    // integral of the survival function, int_0^t [1 - Psi(l)] dl
    double integrated_survival(double t) const;
    Complex laplace(Complex s) const;
    double mean() const;
    double second_moment() const;
    double sample(RandomStream& rng) const;

  private:
    WaitingTimeModel() = default;

    Kind kind_ = Kind::Exponential;
    double rate_ = 1.0;
    int shape_ = 1;
    // tabulated representation
    std::vector<double> grid_, dens_, cum_;
    double tab_mean_ = 0.0, tab_m2_ = 0.0;
};

// Jump-size law h with sign decomposition and one-sided Laplace transform.
class JumpModel {
  public:
    enum class Kind {
        ExponentialPositive,
        ExponentialNegative, // support (-inf, -shift]
        Mixture,             // q h_+ + p h_-
        OneSidedStableHalf,  // h(u) = k/(2 sqrt(pi u^3)) exp(-k^2/(4u)), u > 0
        PointMass,
        Tabulated
    };

    static JumpModel exponential_positive(double rate);
    static JumpModel exponential_negative(double rate, double shift = 0.0);
    static JumpModel one_sided_stable_half(double scale);
    static JumpModel point_mass(double value);
    static JumpModel mixture(double q, JumpModel positive, JumpModel negative);
    static JumpModel tabulated(std::vector<double> u, std::vector<double> density);

    Kind kind() const { return kind_; }
    double rate() const { return rate_; }
    double shift() const { return shift_; }
    double scale() const { return scale_; }
    double value() const { return value_; } // point mass location

    // pdf at a jump discontinuity returns the one-sided average, which keeps
    // node-aligned trapezoid rules equivalent to splitting at the jump
    double pdf(double u) const;
    double cdf(double u) const;
    Complex laplace(Complex s) const; // one-sided; RegimeError if support is not positive
    std::optional<double> mean() const;

    double sample(RandomStream& rng) const;

    bool positive_support() const;
    bool negative_support() const;
    bool two_sided() const { return kind_ == Kind::Mixture && q_ > 0.0 && q_ < 1.0; }

    // mixture accessors
    double q() const { return q_; }
    double p() const { return 1.0 - q_; }
    const JumpModel& positive_part() const;
    const JumpModel& negative_part() const;

    // density of |J| for negative-support laws (the magnitude convention of
    // the adverse-regime equations)
    double magnitude_pdf(double u) const;
    double magnitude_cdf(double u) const;
    std::optional<double> magnitude_mean() const;
    Complex magnitude_laplace(Complex s) const;

  private:
    JumpModel() = default;

    Kind kind_ = Kind::ExponentialPositive;
    double rate_ = 1.0, shift_ = 0.0, scale_ = 1.0, value_ = 0.0, q_ = 1.0;
    std::shared_ptr<const JumpModel> pos_, neg_;
    std::vector<double> grid_, dens_, cum_;
    double tab_mean_ = 0.0;
};

enum class Regime { Favorable, Adverse, TwoSided };

// Drift + boundary + the two laws; regime classified from the jump support.
struct ProcessSpec {
    double drift = 0.0;   // v >= 0 (the v = 0 problem dispatches to the renewal correction)
    double boundary = 1.0; // b > 0, may be +inf for ruin problems
    WaitingTimeModel waiting = WaitingTimeModel::exponential(1.0);
    JumpModel jumps = JumpModel::exponential_positive(1.0);

    Regime regime() const;
    void validate() const; // throws ModelError
    bool boundary_infinite() const;
};

// Free-function forms of the module operations.
double sample_waiting(const WaitingTimeModel& model, RandomStream& rng);
Complex laplace_psi(const WaitingTimeModel& model, Complex s);
Complex laplace_h(const JumpModel& model, Complex s);

} // namespace ctrw
