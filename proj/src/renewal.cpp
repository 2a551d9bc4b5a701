#include "ctrw/renewal.hpp"

#include <algorithm>
#include <cmath>

#include "ctrw/errors.hpp"

namespace ctrw {

namespace {

std::vector<double> uniform_grid(double horizon, double step, std::size_t& n_out) {
    const auto n = static_cast<std::size_t>(std::ceil(horizon / step - 1e-12));
    std::vector<double> g(n + 1);
    for (std::size_t i = 0; i <= n; ++i) g[i] = i * step;
    n_out = n;
    return g;
}

} // namespace

double RenewalSolution::operator()(double t) const {
    if (t < 0.0 || t > horizon() + 1e-12 * step)
        throw CoverageError("renewal grid does not cover t = " + std::to_string(t));
    if (t >= horizon()) return values.back();
    const double pos = t / step;
    const auto i = std::min(static_cast<std::size_t>(pos), values.size() - 2);
    const double w = pos - static_cast<double>(i);
    return values[i] * (1.0 - w) + values[i + 1] * w;
}

double RenewalSolution::density(double t) const {
    if (t < 0.0 || t > horizon() + 1e-12 * step)
        throw CoverageError("renewal grid does not cover t = " + std::to_string(t));
    const auto i = std::min(static_cast<std::size_t>(t / step), values.size() - 1);
    if (i == 0) return (values[1] - values[0]) / step;
    if (i + 1 >= values.size()) return (values.back() - values[values.size() - 2]) / step;
    return (values[i + 1] - values[i - 1]) / (2.0 * step);
}

RenewalSolution solve_renewal_numeric(const WaitingTimeModel& waiting, double horizon, double step) {
    if (!(step > 0.0) || horizon < step)
        throw DomainError("renewal solve: need step > 0 and horizon >= step");
    std::size_t n = 0;
    RenewalSolution sol;
    sol.grid = uniform_grid(horizon, step, n);
    sol.step = step;
    sol.source = RenewalSolution::Source::VolterraNumeric;
    sol.values.assign(n + 1, 0.0);

    std::vector<double> psi(n + 1), Psi(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
        psi[i] = waiting.pdf(sol.grid[i]);
        Psi[i] = waiting.cdf(sol.grid[i]);
    }
    if (!(Psi[n] > 0.0))
        throw ModelError("renewal solve: waiting law carries no mass on [0, horizon]");

    // m_i = Psi_i + step * [ psi_i m_0 / 2 + sum_{j=1}^{i-1} psi_{i-j} m_j + psi_0 m_i / 2 ]
    const double diag = 1.0 - 0.5 * step * psi[0];
    for (std::size_t i = 1; i <= n; ++i) {
        double conv = 0.5 * psi[i] * sol.values[0];
        for (std::size_t j = 1; j < i; ++j) conv += psi[i - j] * sol.values[j];
        sol.values[i] = (Psi[i] + step * conv) / diag;
    }
    return sol;
}

double renewal_erlang2(double lambda, double t) {
    if (!(lambda > 0.0) || t < 0.0) throw DomainError("renewal_erlang2: need lambda > 0, t >= 0");
    const double x = 2.0 * lambda * t;
    return (x + std::expm1(-x)) / 4.0;
}

RenewalSolution renewal_closed_form(const WaitingTimeModel& waiting, double horizon, double step) {
    std::size_t n = 0;
    RenewalSolution sol;
    sol.grid = uniform_grid(horizon, step, n);
    sol.step = step;
    sol.values.resize(n + 1);
    if (waiting.kind() == WaitingTimeModel::Kind::Exponential) {
        sol.source = RenewalSolution::Source::ClosedFormPoisson;
        for (std::size_t i = 0; i <= n; ++i) sol.values[i] = waiting.rate() * sol.grid[i];
    } else if (waiting.is_erlang2()) {
        sol.source = RenewalSolution::Source::ClosedFormErlang2;
        for (std::size_t i = 0; i <= n; ++i)
            sol.values[i] = renewal_erlang2(waiting.rate(), sol.grid[i]);
    } else {
        throw UnsupportedError("no closed-form renewal function for this waiting law");
    }
    return sol;
}

// ------------------------------------------------------------ excess life

ExcessLifeLaw ExcessLifeLaw::closed_form(const WaitingTimeModel& waiting, double r) {
    if (!(r >= 0.0)) throw DomainError("excess life: r must be >= 0");
    ExcessLifeLaw law;
    law.waiting_ = waiting;
    law.r_ = r;
    if (waiting.kind() == WaitingTimeModel::Kind::Exponential) {
        law.closed_ = true;
        law.c_ = 1.0; // memoryless: Phi(t|r) = Psi(t) for every r
    } else if (waiting.is_erlang2()) {
        law.closed_ = true;
        law.c_ = std::isinf(r) ? 0.5 : 0.5 * (1.0 + std::exp(-2.0 * waiting.rate() * r));
    } else {
        throw UnsupportedError("no closed-form excess-life law for this waiting model");
    }
    return law;
}

ExcessLifeLaw::ExcessLifeLaw(WaitingTimeModel waiting, RenewalSolution renewal, double r)
    : waiting_(std::move(waiting)), r_(r) {
    if (!(r >= 0.0)) throw DomainError("excess life: r must be >= 0");
    if (waiting_.kind() == WaitingTimeModel::Kind::Exponential || waiting_.is_erlang2()) {
        *this = closed_form(waiting_, r);
        return;
    }
    if (std::isinf(r)) throw UnsupportedError("steady-state law needs the closed-form backend");
    if (renewal.horizon() < r) throw CoverageError("renewal grid does not reach r");
    renewal_ = std::make_shared<RenewalSolution>(std::move(renewal));
}

ExcessLifeLaw excess_life(const WaitingTimeModel& waiting, const RenewalSolution& renewal,
                          double r) {
    if (waiting.kind() == WaitingTimeModel::Kind::Exponential || waiting.is_erlang2())
        return ExcessLifeLaw::closed_form(waiting, r);
    return ExcessLifeLaw(waiting, renewal, r);
}

double ExcessLifeLaw::cdf(double t) const {
    if (t <= 0.0) return 0.0;
    if (closed_) {
        if (waiting_.kind() == WaitingTimeModel::Kind::Exponential) return waiting_.cdf(t);
        const double l = waiting_.rate();
        return 1.0 - std::exp(-l * t) * (1.0 + c_ * l * t);
    }
    // Phi(t|r) = int_r^{r+t} [1 - Psi(r + t - t')] dm(t'), trapezoid-consistent
    const RenewalSolution& m = *renewal_;
    if (r_ + t > m.horizon() + 1e-9)
        throw CoverageError("excess-life evaluation beyond the renewal grid");
    const double step = m.step;
    double acc = 0.0;
    double a = r_;
    const double end = r_ + t;
    while (a < end - 1e-14) {
        const double next_node = (std::floor(a / step + 1e-9) + 1.0) * step;
        const double b = std::min(next_node, end);
        const double wa = 1.0 - waiting_.cdf(r_ + t - a);
        const double wb = 1.0 - waiting_.cdf(r_ + t - b);
        acc += 0.5 * (wa + wb) * (m(b) - m(a));
        a = b;
    }
    return std::min(acc, 1.0);
}

double ExcessLifeLaw::pdf(double t) const {
    if (t < 0.0) return 0.0;
    if (closed_) {
        if (waiting_.kind() == WaitingTimeModel::Kind::Exponential) return waiting_.pdf(t);
        const double l = waiting_.rate();
        return l * std::exp(-l * t) * (1.0 - c_ + c_ * l * t);
    }
    // phi(t|r) = u(r+t) - int_r^{r+t} psi(r + t - t') dm(t')
    const RenewalSolution& m = *renewal_;
    if (r_ + t > m.horizon() + 1e-9)
        throw CoverageError("excess-life evaluation beyond the renewal grid");
    const double step = m.step;
    double acc = 0.0;
    double a = r_;
    const double end = r_ + t;
    while (a < end - 1e-14) {
        const double next_node = (std::floor(a / step + 1e-9) + 1.0) * step;
        const double b = std::min(next_node, end);
        acc += 0.5 * (waiting_.pdf(r_ + t - a) + waiting_.pdf(r_ + t - b)) * (m(b) - m(a));
        a = b;
    }
    return std::max(0.0, m.density(r_ + t) - acc);
}

double ExcessLifeLaw::integrated_survival(double t) const {
    if (t <= 0.0) return 0.0;
    if (closed_) {
        if (waiting_.kind() == WaitingTimeModel::Kind::Exponential)
            return waiting_.integrated_survival(t);
        const double l = waiting_.rate();
        return ((1.0 + c_) - std::exp(-l * t) * (1.0 + c_ + c_ * l * t)) / l;
    }
    // composite Simpson on the survival function
    const int n = std::max(64, static_cast<int>(t / renewal_->step));
    const int n2 = n + (n % 2);
    const double h = t / n2;
    double acc = 1.0 - cdf(0.0) + (1.0 - cdf(t));
    for (int i = 1; i < n2; ++i) acc += (i % 2 ? 4.0 : 2.0) * (1.0 - cdf(i * h));
    return acc * h / 3.0;
}

Complex ExcessLifeLaw::laplace(Complex s) const {
    if (closed_) {
        if (waiting_.kind() == WaitingTimeModel::Kind::Exponential) return waiting_.laplace(s);
        const double l = waiting_.rate();
        // hat psi + (1 - e^{-2 l r}) s l / (2 (l + s)^2), with c folding in r
        const double one_minus_e = 2.0 * (1.0 - c_);
        return waiting_.laplace(s) + one_minus_e * s * l / (2.0 * (l + s) * (l + s));
    }
    return excess_life_laplace(waiting_, *renewal_, r_, s);
}

double ExcessLifeLaw::mean() const {
    if (closed_) {
        if (waiting_.kind() == WaitingTimeModel::Kind::Exponential) return waiting_.mean();
        return (1.0 + c_) / waiting_.rate();
    }
    // quadrature of the survival function, truncated where 1 - Phi < 1e-10,
    // with an exponential majorant bounding the tail
    const double step = std::max(renewal_->step, 1e-4 * waiting_.mean());
    const double t_max = renewal_->horizon() - r_;
    double acc = 0.0, t = 0.0, surv_prev = 1.0;
    while (t + step <= t_max) {
        const double surv = 1.0 - cdf(t + step);
        acc += 0.5 * (surv_prev + surv) * step;
        t += step;
        surv_prev = surv;
        if (surv < 1e-10) break;
    }
    if (surv_prev > 1e-10) {
        // tail bound from the last decade of decay
        const double back = std::min(t * 0.5, 10.0 * waiting_.mean());
        const double s0 = 1.0 - cdf(t - back);
        if (s0 > surv_prev && back > 0.0) {
            const double beta = std::log(s0 / surv_prev) / back;
            acc += surv_prev / beta;
        }
    }
    return acc;
}

double ExcessLifeLaw::second_moment() const {
    if (closed_) {
        if (waiting_.kind() == WaitingTimeModel::Kind::Exponential)
            return waiting_.second_moment();
        const double l = waiting_.rate();
        return (2.0 + 4.0 * c_) / (l * l);
    }
    // E[E_r^2] = 2 int t (1 - Phi) dt
    const double step = std::max(renewal_->step, 1e-4 * waiting_.mean());
    const double t_max = renewal_->horizon() - r_;
    double acc = 0.0, t = 0.0, f_prev = 0.0;
    while (t + step <= t_max) {
        const double f = (t + step) * (1.0 - cdf(t + step));
        acc += 0.5 * (f_prev + f) * step;
        t += step;
        f_prev = f;
        if (f < 1e-12) break;
    }
    return 2.0 * acc;
}

Complex excess_life_laplace(const WaitingTimeModel& waiting, const RenewalSolution& renewal,
                            double r, Complex s) {
    if (std::isinf(r)) {
        // steady state: (1 - hat psi)/(s mu)
        return (1.0 - waiting.laplace(s)) / (s * waiting.mean());
    }
    if (r == 0.0) return waiting.laplace(s);
    if (waiting.kind() == WaitingTimeModel::Kind::Exponential || waiting.is_erlang2())
        return ExcessLifeLaw::closed_form(waiting, r).laplace(s);
    if (s.real() <= 0.0) throw DomainError("excess-life transform needs Re(s) > 0");
    if (renewal.horizon() <= r) throw CoverageError("renewal grid does not reach r");
    // e^{s r} (1 - hat psi(s)) int_r^inf e^{-s l} dm(l)
    const double step = renewal.step;
    Complex acc = 0.0;
    double a = r;
    const double T = renewal.horizon();
    while (a < T - 1e-14) {
        const double next_node = (std::floor(a / step + 1e-9) + 1.0) * step;
        const double b = std::min(next_node, T);
        acc += 0.5 * (std::exp(-s * a) + std::exp(-s * b)) * (renewal(b) - renewal(a));
        a = b;
    }
    // tail: renewal density approaches 1/mu
    acc += std::exp(-s * T) / (waiting.mean() * s);
    return std::exp(s * r) * (1.0 - waiting.laplace(s)) * acc;
}

Complex excess_life_laplace(const WaitingTimeModel& waiting, double r, Complex s) {
    if (std::isinf(r) || r == 0.0 || waiting.kind() == WaitingTimeModel::Kind::Exponential ||
        waiting.is_erlang2()) {
        RenewalSolution unused;
        return excess_life_laplace(waiting, unused, r, s);
    }
    const double mu = waiting.mean();
    const RenewalSolution m = solve_renewal_numeric(waiting, r + 60.0 * mu, mu / 2000.0);
    return excess_life_laplace(waiting, m, r, s);
}

double zero_drift_correction(const WaitingTimeModel& waiting, double r, double t_after_jump) {
    if (!(r >= 0.0)) throw DomainError("zero_drift_correction: r must be >= 0");
    if (r == 0.0) return t_after_jump;
    const double mu = waiting.mean();
    if (!(mu > 0.0) || !std::isfinite(mu))
        throw ModelError("zero_drift_correction: waiting mean must be finite");
    double mu_r = 0.0;
    if (waiting.kind() == WaitingTimeModel::Kind::Exponential || waiting.is_erlang2()) {
        mu_r = ExcessLifeLaw::closed_form(waiting, r).mean();
    } else {
        if (std::isinf(r))
            throw UnsupportedError("steady-state correction needs a closed-form excess law");
        const RenewalSolution m = solve_renewal_numeric(waiting, r + 60.0 * mu, mu / 2000.0);
        mu_r = ExcessLifeLaw(waiting, m, r).mean();
    }
    return t_after_jump - mu + mu_r;
}

double zero_drift_correction(const ProcessSpec& spec, double r, double t_after_jump) {
    if (spec.drift != 0.0)
        throw RegimeError("zero-drift correction applies only to v = 0 specs");
    return zero_drift_correction(spec.waiting, r, t_after_jump);
}

} // namespace ctrw
