#include "dirac/ode.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>

namespace dirac {

namespace {

// Dormand-Prince 5(4) tableau
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;
// dense-output coefficients
constexpr double d1 = -12715105075.0 / 11282082432.0;
constexpr double d3 = 87487479700.0 / 32700410799.0;
constexpr double d4 = -10690763975.0 / 1880347072.0;
constexpr double d5 = 701980252875.0 / 199316789632.0;
constexpr double d6 = -1453857185.0 / 822651844.0;
constexpr double d7 = 69997945.0 / 29380423.0;

struct Step {
    double x0, h;
    Spinor r1, r2, r3, r4, r5; // dense coefficients
};

Spinor dense_eval(const Step& s, double theta) {
    double om = 1.0 - theta;
    return s.r1 + theta * (s.r2 + om * (s.r3 + theta * (s.r4 + om * s.r5)));
}

Spinor dense_deriv(const Step& s, double theta) {
    // d/dtheta of r1 + th r2 + th(1-th) r3 + th^2(1-th) r4 + th^2(1-th)^2 r5
    double dth = 1.0;
    Spinor d = s.r2 * dth;
    d += s.r3 * (1.0 - 2.0 * theta);
    d += s.r4 * (theta * (2.0 - 3.0 * theta));
    d += s.r5 * (2.0 * theta * (1.0 - theta) * (1.0 - 2.0 * theta));
    return d / Complex(s.h, 0.0);
}

} // namespace

struct SolutionTrajectory::Backend {
    virtual ~Backend() = default;
    virtual Spinor eval(double x) const = 0;
    virtual Spinor deriv(double x) const = 0;
};

namespace {

struct StepBackend final : SolutionTrajectory::Backend {
    std::vector<Step> steps; // in integration order
    bool forward = true;

    const Step& locate(double x) const {
        // binary search on step start positions (monotone in integration order)
        size_t lo = 0, hi = steps.size() - 1;
        while (lo < hi) {
            size_t mid = (lo + hi + 1) / 2;
            bool before = forward ? (steps[mid].x0 <= x) : (steps[mid].x0 >= x);
            if (before)
                lo = mid;
            else
                hi = mid - 1;
        }
        return steps[lo];
    }
    Spinor eval(double x) const override {
        const Step& s = locate(x);
        return dense_eval(s, (x - s.x0) / s.h);
    }
    Spinor deriv(double x) const override {
        const Step& s = locate(x);
        return dense_deriv(s, (x - s.x0) / s.h);
    }
};

struct ClosureBackend final : SolutionTrajectory::Backend {
    std::function<Spinor(double)> val, der;
    double x_lo = 0, x_hi = 0, h = 1e-6;

    Spinor eval(double x) const override { return val(x); }
    Spinor deriv(double x) const override {
        if (der) return der(x);
        double hh = std::min({h, 0.5 * (x - x_lo), 0.5 * (x_hi - x)});
        if (hh <= 0) hh = h;
        Spinor f2p = val(x + 2 * hh), f1p = val(x + hh), f1m = val(x - hh), f2m = val(x - 2 * hh);
        return (f2m - f2p + 8.0 * (f1p - f1m)) / Complex(12.0 * hh, 0.0);
    }
};

} // namespace

SolutionTrajectory::SolutionTrajectory(Complex z, double base_x, Spinor base_value, double x_lo,
                                       double x_hi, double alpha, int dense_samples,
                                       std::shared_ptr<const Backend> backend)
    : z_(z), base_x_(base_x), base_value_(base_value), x_min_(x_lo), x_max_(x_hi), alpha_(alpha),
      dense_samples_(dense_samples), backend_(std::move(backend)) {}

Spinor SolutionTrajectory::eval_scaled(double x) const {
    if (x < x_min_ - 1e-12 * (1 + std::abs(x_min_)) || x > x_max_ + 1e-12 * (1 + std::abs(x_max_)))
        throw DomainError("trajectory evaluation outside span: x=" + std::to_string(x));
    return backend_->eval(std::clamp(x, x_min_, x_max_));
}

Spinor SolutionTrajectory::deriv_scaled(double x) const {
    if (x < x_min_ - 1e-12 * (1 + std::abs(x_min_)) || x > x_max_ + 1e-12 * (1 + std::abs(x_max_)))
        throw DomainError("trajectory derivative outside span: x=" + std::to_string(x));
    return backend_->deriv(std::clamp(x, x_min_, x_max_));
}

std::vector<SolutionTrajectory::Sample> SolutionTrajectory::samples() const {
    std::vector<Sample> out;
    int n = std::max(2, dense_samples_);
    out.reserve(n);
    for (int i = 0; i < n; ++i) {
        double x = x_min_ + (x_max_ - x_min_) * i / (n - 1);
        out.push_back({x, eval_scaled(x), scale_exponent(x)});
    }
    return out;
}

SolutionTrajectory SolutionTrajectory::combine(Complex ca, const SolutionTrajectory& a, Complex cb,
                                               const SolutionTrajectory& b) {
    if (a.z_ != b.z_) throw DomainError("combine: trajectories at different z");
    double lo = std::max(a.x_min_, b.x_min_), hi = std::min(a.x_max_, b.x_max_);
    if (!(lo < hi)) throw DomainError("combine: disjoint spans");
    bool same_scale = a.alpha_ == b.alpha_ && a.base_x_ == b.base_x_;
    auto bk = std::make_shared<ClosureBackend>();
    if (same_scale) {
        bk->val = [ca, a, cb, b](double x) {
            return ca * a.eval_scaled(x) + cb * b.eval_scaled(x);
        };
        bk->der = [ca, a, cb, b](double x) {
            return ca * a.deriv_scaled(x) + cb * b.deriv_scaled(x);
        };
        Spinor bv = ca * a.base_value_ + cb * b.base_value_;
        return SolutionTrajectory(a.z_, a.base_x_, bv, lo, hi, a.alpha_, a.dense_samples_, bk);
    }
    bk->val = [ca, a, cb, b](double x) { return ca * a.eval(x) + cb * b.eval(x); };
    bk->der = [ca, a, cb, b](double x) { return ca * a.deriv(x) + cb * b.deriv(x); };
    Spinor bv = ca * a.eval(a.base_x_) + cb * b.eval(a.base_x_);
    return SolutionTrajectory(a.z_, a.base_x_, bv, lo, hi, 0.0, a.dense_samples_, bk);
}

SolutionTrajectory SolutionTrajectory::from_closure(Complex z, double x_lo, double x_hi,
                                                    double base_x,
                                                    std::function<Spinor(double)> value,
                                                    std::function<Spinor(double)> deriv,
                                                    double fd_step) {
    auto bk = std::make_shared<ClosureBackend>();
    bk->val = std::move(value);
    bk->der = std::move(deriv);
    bk->x_lo = x_lo;
    bk->x_hi = x_hi;
    bk->h = fd_step;
    Spinor bv = bk->val(base_x);
    return SolutionTrajectory(z, base_x, bv, x_lo, x_hi, 0.0, 129, bk);
}

namespace {

struct Rhs {
    const DiracPotential* pot;
    Complex z;
    double alpha;

    Spinor operator()(double x, const Spinor& v) const {
        SymMat2 q = evaluate_Q(*pot, x);
        return {-q.a12 * v.f1 + (z - q.a22) * v.f2 - alpha * v.f1,
                -(z - q.a11) * v.f1 + q.a12 * v.f2 - alpha * v.f2};
    }
};

} // namespace

SolutionTrajectory integrate(const DiracPotential& pot, Complex z, double x0, const Spinor& u0,
                             double x1, const ODETolerance& tol) {
    if (x0 == x1) throw DomainError("integrate: empty span");
    if (!pot.interval.contains(x0) || !pot.interval.contains(x1))
        throw DomainError("integrate: span endpoints must lie strictly inside the interval");

    const double span = std::abs(x1 - x0);
    const double dir = (x1 > x0) ? 1.0 : -1.0;
    const double alpha = (std::abs(z.imag()) * span > 200.0) ? std::abs(z.imag()) : 0.0;
    Rhs rhs{&pot, z, alpha};

    // residual-driven step cap: the 4th-order interpolant must keep
    // ||u' - J(z-Q)u|| below ~100*rel*||u||, which needs (h z_eff)^4 z_eff
    // of that order
    const double cap_c = 0.04 * std::clamp(std::pow(tol.rel / 1e-10, 0.25), 0.3, 10.0);

    auto bk = std::make_shared<StepBackend>();
    bk->forward = dir > 0;

    double x = x0;
    Spinor y = u0;
    Spinor k1 = rhs(x, y);

    double zeff0 = 1.0 + std::abs(z) + evaluate_Q(pot, x0).op_norm();
    double h = dir * std::min({tol.max_step, span, cap_c / std::pow(zeff0, 1.25)});

    const double h_floor = 1e-14 * std::max({std::abs(x0), std::abs(x1), 1.0});
    long steps_taken = 0;

    while ((x1 - x) * dir > h_floor) {
        if ((x + h - x1) * dir > 0) h = x1 - x;
        if (std::abs(h) < h_floor)
            throw IntegrationError("integrate: step size underflow at x=" + std::to_string(x), x);
        if (++steps_taken > 20000000)
            throw IntegrationError("integrate: step limit exceeded at x=" + std::to_string(x), x);

        Spinor k2 = rhs(x + c2 * h, y + h * Complex(a21) * k1);
        Spinor k3 = rhs(x + c3 * h, y + h * (Complex(a31) * k1 + Complex(a32) * k2));
        Spinor k4 = rhs(x + c4 * h, y + h * (Complex(a41) * k1 + Complex(a42) * k2 + Complex(a43) * k3));
        Spinor k5 = rhs(x + c5 * h, y + h * (Complex(a51) * k1 + Complex(a52) * k2 +
                                             Complex(a53) * k3 + Complex(a54) * k4));
        Spinor k6 = rhs(x + h, y + h * (Complex(a61) * k1 + Complex(a62) * k2 + Complex(a63) * k3 +
                                        Complex(a64) * k4 + Complex(a65) * k5));
        Spinor y1 = y + h * (Complex(b1) * k1 + Complex(b3) * k3 + Complex(b4) * k4 +
                             Complex(b5) * k5 + Complex(b6) * k6);
        Spinor k7 = rhs(x + h, y1);

        Spinor ev = h * (Complex(e1) * k1 + Complex(e3) * k3 + Complex(e4) * k4 +
                         Complex(e5) * k5 + Complex(e6) * k6 + Complex(e7) * k7);
        double sc1 = tol.abs + tol.rel * std::max(std::abs(y.f1), std::abs(y1.f1));
        double sc2 = tol.abs + tol.rel * std::max(std::abs(y.f2), std::abs(y1.f2));
        double err = std::sqrt(0.5 * (std::norm(ev.f1 / sc1) + std::norm(ev.f2 / sc2)));
        if (!std::isfinite(err)) err = 1e10; // blow-up inside the step: reject hard

        if (err <= 1.0) {
            Step s;
            s.x0 = x;
            s.h = h;
            s.r1 = y;
            s.r2 = y1 - y;
            s.r3 = h * k1 - s.r2;
            s.r4 = s.r2 - h * k7 - s.r3;
            s.r5 = h * (Complex(d1) * k1 + Complex(d3) * k3 + Complex(d4) * k4 +
                        Complex(d5) * k5 + Complex(d6) * k6 + Complex(d7) * k7);
            bk->steps.push_back(s);
            x += h;
            y = y1;
            k1 = k7; // FSAL
        }

        double fac = 0.9 * std::pow(std::max(err, 1e-10), -0.2);
        double zeff = 1.0 + std::abs(z);
        if (pot.interval.contains(x)) zeff += evaluate_Q(pot, x).op_norm();
        double h_cap = std::min({tol.max_step, cap_c / std::pow(zeff, 1.25)});
        h = dir * std::min(std::abs(h) * std::clamp(fac, 0.2, 5.0), h_cap);
    }

    if (bk->steps.empty()) throw IntegrationError("integrate: no steps taken", x0);
    return SolutionTrajectory(z, x0, u0, std::min(x0, x1), std::max(x0, x1), alpha,
                              tol.dense_samples, bk);
}

std::pair<SolutionTrajectory, SolutionTrajectory>
fundamental_system(const DiracPotential& pot, Complex z, double c0, double x_end,
                   const ODETolerance& tol) {
    return {integrate(pot, z, c0, Spinor{{1, 0}, {0, 0}}, x_end, tol),
            integrate(pot, z, c0, Spinor{{0, 0}, {1, 0}}, x_end, tol)};
}

double residual_scaled(const DiracPotential& pot, const SolutionTrajectory& traj, double x) {
    SymMat2 q = evaluate_Q(pot, x);
    Complex z = traj.z();
    Spinor v = traj.eval_scaled(x), dv = traj.deriv_scaled(x);
    double alpha = traj.scale_rate();
    Spinor rhs{-q.a12 * v.f1 + (z - q.a22) * v.f2 - alpha * v.f1,
               -(z - q.a11) * v.f1 + q.a12 * v.f2 - alpha * v.f2};
    return (dv - rhs).norm();
}

double residual(const DiracPotential& pot, const SolutionTrajectory& traj, double x) {
    return residual_scaled(pot, traj, x) * std::exp(traj.scale_exponent(x));
}

Complex wronskian_at(const SolutionTrajectory& a, const SolutionTrajectory& b, double x) {
    Complex w = wronskian(a.eval_scaled(x), b.eval_scaled(x));
    return w * std::exp(a.scale_exponent(x) + b.scale_exponent(x));
}

void trajectory_to_csv(const SolutionTrajectory& traj, std::ostream& os) {
    os << "x,re_u1,im_u1,re_u2,im_u2,scale_exponent\n";
    os << std::setprecision(17);
    for (const auto& s : traj.samples()) {
        os << s.x << ',' << s.u.f1.real() << ',' << s.u.f1.imag() << ',' << s.u.f2.real() << ','
           << s.u.f2.imag() << ',' << s.sigma << '\n';
    }
}

} // namespace dirac
