#include "ctrw/distributions.hpp"

#include <algorithm>
#include <cmath>

#include "ctrw/errors.hpp"

namespace ctrw {

namespace {

double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

// segment integral of a linear interpolant against exp(-s u), exact
Complex segment_laplace(double a, double h, double fa, double fb, Complex s) {
    const double slope = (fb - fa) / h;
    const Complex x = s * h;
    return std::exp(-s * a) * (fa * h * expm1_ratio1(x) + slope * h * h * expm1_ratio2(x));
}

void check_tabulated(const std::vector<double>& g, const std::vector<double>& d) {
    if (g.size() < 2 || g.size() != d.size())
        throw ModelError("tabulated model: need matching grids with >= 2 nodes");
    for (std::size_t i = 0; i + 1 < g.size(); ++i)
        if (!(g[i + 1] > g[i])) throw ModelError("tabulated model: grid must be increasing");
    for (double v : d)
        if (v < 0.0 || !std::isfinite(v)) throw ModelError("tabulated model: negative density");
}

// trapezoid mass of the interpolant (exact for piecewise linear density)
double tabulated_mass(const std::vector<double>& g, const std::vector<double>& d) {
    double m = 0.0;
    for (std::size_t i = 0; i + 1 < g.size(); ++i)
        m += 0.5 * (d[i] + d[i + 1]) * (g[i + 1] - g[i]);
    return m;
}

// Simpson per segment is exact for t^k * linear, k <= 2
double tabulated_moment(const std::vector<double>& g, const std::vector<double>& d, int k) {
    auto f = [&](std::size_t i, double t) {
        const double w = (t - g[i]) / (g[i + 1] - g[i]);
        const double dens = d[i] * (1.0 - w) + d[i + 1] * w;
        return std::pow(t, k) * dens;
    };
    double m = 0.0;
    for (std::size_t i = 0; i + 1 < g.size(); ++i) {
        const double h = g[i + 1] - g[i];
        const double mid = 0.5 * (g[i] + g[i + 1]);
        m += h / 6.0 * (f(i, g[i]) + 4.0 * f(i, mid) + f(i, g[i + 1]));
    }
    return m;
}

} // namespace

// ---------------------------------------------------------------- waiting

WaitingTimeModel WaitingTimeModel::exponential(double rate) {
    if (!(rate > 0.0)) throw ModelError("exponential waiting: rate must be positive");
    WaitingTimeModel m;
    m.kind_ = Kind::Exponential;
    m.rate_ = rate;
    m.shape_ = 1;
    return m;
}

WaitingTimeModel WaitingTimeModel::erlang(double rate, int shape) {
    if (!(rate > 0.0) || shape < 1) throw ModelError("erlang waiting: need rate > 0, shape >= 1");
    WaitingTimeModel m;
    m.kind_ = Kind::Erlang;
    m.rate_ = rate;
    m.shape_ = shape;
    return m;
}

WaitingTimeModel WaitingTimeModel::tabulated(std::vector<double> t, std::vector<double> density) {
    check_tabulated(t, density);
    if (t.front() < 0.0) throw ModelError("tabulated waiting: support must be nonnegative");
    const double mass = tabulated_mass(t, density);
    if (std::abs(mass - 1.0) > 1e-8)
        throw ModelError("tabulated waiting: density mass deviates from 1 beyond 1e-8");
    WaitingTimeModel m;
    m.kind_ = Kind::Tabulated;
    m.grid_ = std::move(t);
    m.dens_ = std::move(density);
    m.cum_.assign(m.grid_.size(), 0.0);
    for (std::size_t i = 0; i + 1 < m.grid_.size(); ++i)
        m.cum_[i + 1] = m.cum_[i] + 0.5 * (m.dens_[i] + m.dens_[i + 1]) * (m.grid_[i + 1] - m.grid_[i]);
    m.tab_mean_ = tabulated_moment(m.grid_, m.dens_, 1);
    m.tab_m2_ = tabulated_moment(m.grid_, m.dens_, 2);
    return m;
}

double WaitingTimeModel::pdf(double t) const {
    if (t < 0.0) return 0.0;
    switch (kind_) {
    case Kind::Exponential:
        return rate_ * std::exp(-rate_ * t);
    case Kind::Erlang:
        if (t == 0.0) return shape_ == 1 ? rate_ : 0.0;
        return std::pow(rate_, shape_) * std::pow(t, shape_ - 1) * std::exp(-rate_ * t) /
               factorial(shape_ - 1);
    case Kind::Tabulated: {
        if (t <= grid_.front() || t >= grid_.back()) {
            if (t == grid_.front()) return dens_.front();
            if (t == grid_.back()) return dens_.back();
            return 0.0;
        }
        const auto it = std::upper_bound(grid_.begin(), grid_.end(), t);
        const std::size_t i = static_cast<std::size_t>(it - grid_.begin()) - 1;
        const double w = (t - grid_[i]) / (grid_[i + 1] - grid_[i]);
        return dens_[i] * (1.0 - w) + dens_[i + 1] * w;
    }
    }
    return 0.0;
}

double WaitingTimeModel::cdf(double t) const {
    if (t <= 0.0) return 0.0;
    switch (kind_) {
    case Kind::Exponential:
        return -std::expm1(-rate_ * t);
    case Kind::Erlang: {
        const double x = rate_ * t;
        double term = 1.0, sum = 1.0;
        for (int k = 1; k < shape_; ++k) {
            term *= x / k;
            sum += term;
        }
        return 1.0 - std::exp(-x) * sum;
    }
    case Kind::Tabulated: {
        if (t >= grid_.back()) return 1.0;
        if (t <= grid_.front()) return 0.0;
        const auto it = std::upper_bound(grid_.begin(), grid_.end(), t);
        const std::size_t i = static_cast<std::size_t>(it - grid_.begin()) - 1;
        const double h = grid_[i + 1] - grid_[i];
        const double w = (t - grid_[i]) / h;
        const double di = dens_[i], dj = dens_[i + 1];
        // exact integral of the linear interpolant up to t
        return cum_[i] + h * (di * w + 0.5 * (dj - di) * w * w);
    }
    }
    return 0.0;
}

double WaitingTimeModel::integrated_survival(double t) const {
    if (t <= 0.0) return 0.0;
    switch (kind_) {
    case Kind::Exponential:
        return -std::expm1(-rate_ * t) / rate_;
    case Kind::Erlang: {
        const double x = rate_ * t;
        double term = 1.0, sum = 0.0; // sum (n-k) x^k / k!
        for (int k = 0; k < shape_; ++k) {
            if (k > 0) term *= x / k;
            sum += (shape_ - k) * term;
        }
        return (shape_ - std::exp(-x) * sum) / rate_;
    }
    case Kind::Tabulated: {
        // survival is 1 before the grid; Simpson per segment is exact for the
        // quadratic survival of a linear density
        double acc = std::min(t, grid_.front());
        for (std::size_t i = 0; i + 1 < grid_.size(); ++i) {
            const double a = grid_[i];
            if (a >= t) break;
            const double b = std::min(grid_[i + 1], t);
            const double mid = 0.5 * (a + b);
            acc += (b - a) / 6.0 * ((1.0 - cdf(a)) + 4.0 * (1.0 - cdf(mid)) + (1.0 - cdf(b)));
        }
        return acc;
    }
    }
    return 0.0;
}

Complex WaitingTimeModel::laplace(Complex s) const {
    switch (kind_) {
    case Kind::Exponential:
        return rate_ / (rate_ + s);
    case Kind::Erlang:
        return std::pow(rate_ / (rate_ + s), shape_);
    case Kind::Tabulated: {
        Complex acc = 0.0;
        for (std::size_t i = 0; i + 1 < grid_.size(); ++i)
            acc += segment_laplace(grid_[i], grid_[i + 1] - grid_[i], dens_[i], dens_[i + 1], s);
        return acc;
    }
    }
    return 0.0;
}

double WaitingTimeModel::mean() const {
    switch (kind_) {
    case Kind::Exponential:
        return 1.0 / rate_;
    case Kind::Erlang:
        return shape_ / rate_;
    case Kind::Tabulated:
        return tab_mean_;
    }
    return 0.0;
}

double WaitingTimeModel::second_moment() const {
    switch (kind_) {
    case Kind::Exponential:
        return 2.0 / (rate_ * rate_);
    case Kind::Erlang:
        return static_cast<double>(shape_) * (shape_ + 1) / (rate_ * rate_);
    case Kind::Tabulated:
        return tab_m2_;
    }
    return 0.0;
}

double WaitingTimeModel::sample(RandomStream& rng) const {
    switch (kind_) {
    case Kind::Exponential:
        return rng.exponential(rate_);
    case Kind::Erlang: {
        double t = 0.0;
        for (int i = 0; i < shape_; ++i) t += rng.exponential(rate_);
        return t;
    }
    case Kind::Tabulated:
        throw UnsupportedError("tabulated waiting model has no sampler");
    }
    return 0.0;
}

double sample_waiting(const WaitingTimeModel& model, RandomStream& rng) { return model.sample(rng); }

Complex laplace_psi(const WaitingTimeModel& model, Complex s) { return model.laplace(s); }

// ------------------------------------------------------------------ jumps

JumpModel JumpModel::exponential_positive(double rate) {
    if (!(rate > 0.0)) throw ModelError("exponential jump: rate must be positive");
    JumpModel m;
    m.kind_ = Kind::ExponentialPositive;
    m.rate_ = rate;
    return m;
}

JumpModel JumpModel::exponential_negative(double rate, double shift) {
    if (!(rate > 0.0) || shift < 0.0)
        throw ModelError("exponential-negative jump: need rate > 0, shift >= 0");
    JumpModel m;
    m.kind_ = Kind::ExponentialNegative;
    m.rate_ = rate;
    m.shift_ = shift;
    return m;
}

JumpModel JumpModel::one_sided_stable_half(double scale) {
    if (!(scale > 0.0)) throw ModelError("stable jump: scale must be positive");
    JumpModel m;
    m.kind_ = Kind::OneSidedStableHalf;
    m.scale_ = scale;
    return m;
}

JumpModel JumpModel::point_mass(double value) {
    if (value == 0.0 || !std::isfinite(value)) throw ModelError("point-mass jump must be nonzero");
    JumpModel m;
    m.kind_ = Kind::PointMass;
    m.value_ = value;
    return m;
}

JumpModel JumpModel::mixture(double q, JumpModel positive, JumpModel negative) {
    if (!(q >= 0.0 && q <= 1.0)) throw ModelError("mixture: q must be a probability");
    if (!positive.positive_support()) throw ModelError("mixture: h+ must have positive support");
    if (!negative.negative_support()) throw ModelError("mixture: h- must have negative support");
    JumpModel m;
    m.kind_ = Kind::Mixture;
    m.q_ = q;
    m.pos_ = std::make_shared<JumpModel>(std::move(positive));
    m.neg_ = std::make_shared<JumpModel>(std::move(negative));
    return m;
}

JumpModel JumpModel::tabulated(std::vector<double> u, std::vector<double> density) {
    check_tabulated(u, density);
    const double mass = tabulated_mass(u, density);
    if (std::abs(mass - 1.0) > 1e-8)
        throw ModelError("tabulated jump: density mass deviates from 1 beyond 1e-8");
    JumpModel m;
    m.kind_ = Kind::Tabulated;
    m.grid_ = std::move(u);
    m.dens_ = std::move(density);
    m.cum_.assign(m.grid_.size(), 0.0);
    for (std::size_t i = 0; i + 1 < m.grid_.size(); ++i)
        m.cum_[i + 1] = m.cum_[i] + 0.5 * (m.dens_[i] + m.dens_[i + 1]) * (m.grid_[i + 1] - m.grid_[i]);
    m.tab_mean_ = tabulated_moment(m.grid_, m.dens_, 1);
    return m;
}

double JumpModel::pdf(double u) const {
    switch (kind_) {
    case Kind::ExponentialPositive:
        if (u < 0.0) return 0.0;
        if (u == 0.0) return 0.5 * rate_; // one-sided average at the support edge
        return rate_ * std::exp(-rate_ * u);
    case Kind::ExponentialNegative: {
        const double edge = -shift_;
        if (u > edge) return 0.0;
        if (u == edge) return 0.5 * rate_;
        return rate_ * std::exp(rate_ * (u + shift_));
    }
    case Kind::Mixture:
        return q_ * pos_->pdf(u) + (1.0 - q_) * neg_->pdf(u);
    case Kind::OneSidedStableHalf: {
        if (u <= 0.0) return 0.0;
        return scale_ / (2.0 * std::sqrt(M_PI * u * u * u)) *
               std::exp(-scale_ * scale_ / (4.0 * u));
    }
    case Kind::PointMass:
        return 0.0; // atom; density view is zero off the atom
    case Kind::Tabulated: {
        if (u < grid_.front() || u > grid_.back()) return 0.0;
        const auto it = std::upper_bound(grid_.begin(), grid_.end(), u);
        std::size_t i = (it == grid_.begin()) ? 0 : static_cast<std::size_t>(it - grid_.begin()) - 1;
        if (i + 1 >= grid_.size()) i = grid_.size() - 2;
        const double w = (u - grid_[i]) / (grid_[i + 1] - grid_[i]);
        return dens_[i] * (1.0 - w) + dens_[i + 1] * w;
    }
    }
    return 0.0;
}

double JumpModel::cdf(double u) const {
    switch (kind_) {
    case Kind::ExponentialPositive:
        return u <= 0.0 ? 0.0 : -std::expm1(-rate_ * u);
    case Kind::ExponentialNegative:
        return u >= -shift_ ? 1.0 : std::exp(rate_ * (u + shift_));
    case Kind::Mixture:
        return q_ * pos_->cdf(u) + (1.0 - q_) * neg_->cdf(u);
    case Kind::OneSidedStableHalf:
        return u <= 0.0 ? 0.0 : std::erfc(scale_ / (2.0 * std::sqrt(u)));
    case Kind::PointMass:
        return u >= value_ ? 1.0 : 0.0;
    case Kind::Tabulated: {
        if (u <= grid_.front()) return 0.0;
        if (u >= grid_.back()) return 1.0;
        const auto it = std::upper_bound(grid_.begin(), grid_.end(), u);
        const std::size_t i = static_cast<std::size_t>(it - grid_.begin()) - 1;
        const double h = grid_[i + 1] - grid_[i];
        const double w = (u - grid_[i]) / h;
        return cum_[i] + h * (dens_[i] * w + 0.5 * (dens_[i + 1] - dens_[i]) * w * w);
    }
    }
    return 0.0;
}

Complex JumpModel::laplace(Complex s) const {
    if (!positive_support())
        throw RegimeError("one-sided Laplace transform needs positive support; "
                          "use the sign decomposition (q, h+, p, h-)");
    switch (kind_) {
    case Kind::ExponentialPositive:
        return rate_ / (rate_ + s);
    case Kind::OneSidedStableHalf:
        return std::exp(-scale_ * std::sqrt(s)); // principal branch
    case Kind::PointMass:
        return std::exp(-s * value_);
    case Kind::Mixture:
        return pos_->laplace(s); // q == 1 here
    case Kind::Tabulated: {
        Complex acc = 0.0;
        for (std::size_t i = 0; i + 1 < grid_.size(); ++i)
            acc += segment_laplace(grid_[i], grid_[i + 1] - grid_[i], dens_[i], dens_[i + 1], s);
        return acc;
    }
    default:
        break;
    }
    return 0.0;
}

std::optional<double> JumpModel::mean() const {
    switch (kind_) {
    case Kind::ExponentialPositive:
        return 1.0 / rate_;
    case Kind::ExponentialNegative:
        return -shift_ - 1.0 / rate_;
    case Kind::Mixture: {
        auto mp = pos_->mean(), mn = neg_->mean();
        if (!mp || !mn) return std::nullopt;
        return q_ * *mp + (1.0 - q_) * *mn;
    }
    case Kind::OneSidedStableHalf:
        return std::nullopt; // heavy tail, undefined
    case Kind::PointMass:
        return value_;
    case Kind::Tabulated:
        return tab_mean_;
    }
    return std::nullopt;
}

double JumpModel::sample(RandomStream& rng) const {
    switch (kind_) {
    case Kind::ExponentialPositive:
        return rng.exponential(rate_);
    case Kind::ExponentialNegative:
        return -shift_ - rng.exponential(rate_);
    case Kind::Mixture:
        return rng.uniform01() < q_ ? pos_->sample(rng) : neg_->sample(rng);
    case Kind::OneSidedStableHalf: {
        double z = 0.0;
        do {
            z = rng.normal();
        } while (z == 0.0);
        return scale_ * scale_ / (2.0 * z * z);
    }
    case Kind::PointMass:
        return value_;
    case Kind::Tabulated:
        throw UnsupportedError("tabulated jump model has no sampler");
    }
    return 0.0;
}

bool JumpModel::positive_support() const {
    switch (kind_) {
    case Kind::ExponentialPositive:
    case Kind::OneSidedStableHalf:
        return true;
    case Kind::ExponentialNegative:
        return false;
    case Kind::PointMass:
        return value_ > 0.0;
    case Kind::Mixture:
        return q_ == 1.0;
    case Kind::Tabulated:
        return grid_.front() >= 0.0;
    }
    return false;
}

bool JumpModel::negative_support() const {
    switch (kind_) {
    case Kind::ExponentialPositive:
    case Kind::OneSidedStableHalf:
        return false;
    case Kind::ExponentialNegative:
        return true;
    case Kind::PointMass:
        return value_ < 0.0;
    case Kind::Mixture:
        return q_ == 0.0;
    case Kind::Tabulated:
        return grid_.back() <= 0.0;
    }
    return false;
}

const JumpModel& JumpModel::positive_part() const {
    if (kind_ != Kind::Mixture) throw UnsupportedError("positive_part: not a mixture");
    return *pos_;
}

const JumpModel& JumpModel::negative_part() const {
    if (kind_ != Kind::Mixture) throw UnsupportedError("negative_part: not a mixture");
    return *neg_;
}

double JumpModel::magnitude_pdf(double u) const {
    if (!negative_support()) throw RegimeError("magnitude view needs a negative-support law");
    if (u < 0.0) return 0.0;
    switch (kind_) {
    case Kind::ExponentialNegative:
        if (u < shift_) return 0.0;
        if (u == shift_) return shift_ == 0.0 ? rate_ : 0.5 * rate_;
        return rate_ * std::exp(-rate_ * (u - shift_));
    case Kind::PointMass:
        return 0.0;
    case Kind::Mixture:
        return neg_->magnitude_pdf(u);
    default:
        break;
    }
    // mirrored tabulated law
    return pdf(-u);
}

double JumpModel::magnitude_cdf(double u) const {
    if (!negative_support()) throw RegimeError("magnitude view needs a negative-support law");
    if (u < 0.0) return 0.0;
    switch (kind_) {
    case Kind::ExponentialNegative:
        return u < shift_ ? 0.0 : -std::expm1(-rate_ * (u - shift_));
    case Kind::PointMass:
        return u >= -value_ ? 1.0 : 0.0;
    case Kind::Mixture:
        return neg_->magnitude_cdf(u);
    default:
        return 1.0 - cdf(-u); // continuous mirrored laws
    }
}

std::optional<double> JumpModel::magnitude_mean() const {
    auto m = mean();
    if (!m) return std::nullopt;
    return -*m;
}

Complex JumpModel::magnitude_laplace(Complex s) const {
    if (!negative_support()) throw RegimeError("magnitude view needs a negative-support law");
    switch (kind_) {
    case Kind::ExponentialNegative:
        return std::exp(-s * shift_) * rate_ / (rate_ + s);
    case Kind::PointMass:
        return std::exp(s * value_); // |value|
    case Kind::Mixture:
        return neg_->magnitude_laplace(s);
    default:
        break;
    }
    throw UnsupportedError("magnitude transform not available for this kind");
}

Complex laplace_h(const JumpModel& model, Complex s) { return model.laplace(s); }

// ----------------------------------------------------------------- spec

Regime ProcessSpec::regime() const {
    if (jumps.positive_support()) return Regime::Favorable;
    if (jumps.negative_support()) return Regime::Adverse;
    return Regime::TwoSided;
}

bool ProcessSpec::boundary_infinite() const { return std::isinf(boundary); }

void ProcessSpec::validate() const {
    if (!(drift >= 0.0)) throw ModelError("spec: drift must be nonnegative (v > 0 by convention)");
    if (!(boundary > 0.0)) throw ModelError("spec: boundary must be positive");
}

} // namespace ctrw
