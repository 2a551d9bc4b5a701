#pragma once

#include <limits>
#include <memory>
#include <vector>

#include "ctrw/distributions.hpp"

namespace ctrw {

inline constexpr double kSteadyState = std::numeric_limits<double>::infinity();

// Renewal function m(t) on a uniform grid.
struct RenewalSolution {
    enum class Source { VolterraNumeric, ClosedFormErlang2, ClosedFormPoisson };

    std::vector<double> grid;
    std::vector<double> values;
    double step = 0.0;
    Source source = Source::VolterraNumeric;

    double horizon() const { return grid.empty() ? 0.0 : grid.back(); }
    double operator()(double t) const; // linear interpolation; CoverageError beyond grid
    double density(double t) const;    // m'(t) by centered differences
};

// Trapezoidal product-integration solve of m = Psi + m * psi (Volterra,
// second kind); global error O(step^2).
RenewalSolution solve_renewal_numeric(const WaitingTimeModel& waiting, double horizon, double step);

// Closed forms: Poisson m(t) = lambda t; Erlang-2 m(t) = (2 l t + e^{-2 l t} - 1)/4.
RenewalSolution renewal_closed_form(const WaitingTimeModel& waiting, double horizon, double step);
double renewal_erlang2(double lambda, double t);

// Excess-life law Phi(t|r) for observation lag r (r = kSteadyState for the
// stationary law).  Closed-form backend for exponential and Erlang-2 waiting,
// Stieltjes integration against dm otherwise.
class ExcessLifeLaw {
  public:
    static ExcessLifeLaw closed_form(const WaitingTimeModel& waiting, double r);
    ExcessLifeLaw(WaitingTimeModel waiting, RenewalSolution renewal, double r);

    double r() const { return r_; }
    bool has_closed_form() const { return closed_; }

    double cdf(double t) const;                 // Phi(t|r)
    double pdf(double t) const;                 // phi(t|r)
    double integrated_survival(double t) const; // int_0^t [1 - Phi] dl
    Complex laplace(Complex s) const;           // hat phi(s|r)
    double mean() const;                        // mu_r
    double second_moment() const;

  private:
    WaitingTimeModel waiting_;
    std::shared_ptr<const RenewalSolution> renewal_;
    double r_ = 0.0;
    bool closed_ = false;
    // Erlang-2 closed form carries c = (1 + e^{-2 l r}) / 2
    double c_ = 1.0;
};

ExcessLifeLaw excess_life(const WaitingTimeModel& waiting, const RenewalSolution& renewal, double r);

// hat phi(s|r); r = kSteadyState returns (1 - hat psi)/(s mu) exactly.
Complex excess_life_laplace(const WaitingTimeModel& waiting, double r, Complex s);
Complex excess_life_laplace(const WaitingTimeModel& waiting, const RenewalSolution& renewal,
                            double r, Complex s);

// v = 0 correction: T_b(x,r) = T~_b(x) - mu + mu_r (independent of x).
double zero_drift_correction(const WaitingTimeModel& waiting, double r, double t_after_jump);
double zero_drift_correction(const ProcessSpec& spec, double r, double t_after_jump);

} // namespace ctrw
