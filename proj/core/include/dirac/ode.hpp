#ifndef DIRAC_ODE_HPP
#define DIRAC_ODE_HPP

#include <functional>
#include <memory>
#include <ostream>
#include <vector>

#include "dirac/operator_model.hpp"

namespace dirac {

struct ODETolerance {
    double rel = 1e-10;
    double abs = 1e-12;
    double max_step = 1.0;
    int dense_samples = 129;
};

/// A solution of tau u = z u over a span, with dense evaluation.
///
/// For |Im z| * span beyond ~200 the integrator works on the rescaled
/// variable v(x) = u(x) e^{-alpha (x - x0)} with alpha = |Im z|; the
/// trajectory records alpha, and eval_scaled/deriv_scaled return v and v'
/// (the stored, overflow-free values). eval/deriv undo the scaling.
class SolutionTrajectory {
  public:
    struct Sample {
        double x;
        Spinor u; // scaled value v(x)
        double sigma;
    };

    Complex z() const { return z_; }
    double base_x() const { return base_x_; }
    Spinor base_value() const { return base_value_; }
    double x_min() const { return x_min_; }
    double x_max() const { return x_max_; }
    double scale_rate() const { return alpha_; }
    double scale_exponent(double x) const { return alpha_ * (x - base_x_); }

    Spinor eval_scaled(double x) const;
    Spinor deriv_scaled(double x) const;
    Spinor eval(double x) const { return eval_scaled(x) * std::exp(scale_exponent(x)); }
    Spinor deriv(double x) const {
        Spinor v = eval_scaled(x), dv = deriv_scaled(x);
        return (dv + v * alpha_) * std::exp(scale_exponent(x));
    }

    /// dense_samples uniformly spaced scaled samples over the span
    std::vector<Sample> samples() const;

    /// Linear combination of trajectories at the same z over the common span.
    static SolutionTrajectory combine(Complex ca, const SolutionTrajectory& a, Complex cb,
                                      const SolutionTrajectory& b);

    /// Wraps closed-form evaluators. If deriv is absent it is formed by
    /// 4th-order central differences of `value` with step h.
    static SolutionTrajectory from_closure(Complex z, double x_lo, double x_hi, double base_x,
                                           std::function<Spinor(double)> value,
                                           std::function<Spinor(double)> deriv = nullptr,
                                           double fd_step = 1e-6);

    // internal
    struct Backend;
    SolutionTrajectory(Complex z, double base_x, Spinor base_value, double x_lo, double x_hi,
                       double alpha, int dense_samples, std::shared_ptr<const Backend> backend);

  private:
    Complex z_;
    double base_x_;
    Spinor base_value_;
    double x_min_, x_max_;
    double alpha_ = 0.0;
    int dense_samples_ = 129;
    std::shared_ptr<const Backend> backend_;
};

/// Integrates u' = J(z - Q)u from (x0, u0) to x1 (either direction) with an
/// adaptive embedded Runge-Kutta pair (Dormand-Prince 5(4)) and 4th-order
/// dense output. Throws IntegrationError on step-size underflow.
SolutionTrajectory integrate(const DiracPotential& pot, Complex z, double x0, const Spinor& u0,
                             double x1, const ODETolerance& tol = {});

/// c(z,.) and s(z,.) with c(z,c0)=(1,0), s(z,c0)=(0,1), integrated from c0
/// to x_end.
std::pair<SolutionTrajectory, SolutionTrajectory>
fundamental_system(const DiracPotential& pot, Complex z, double c0, double x_end,
                   const ODETolerance& tol = {});

/// || u'(x) - J(z - Q(x)) u(x) || using the interpolant derivative, in the
/// true (unscaled) variables.
double residual(const DiracPotential& pot, const SolutionTrajectory& traj, double x);

/// Same residual but computed on the scaled variables; finite even when the
/// true solution overflows. residual = residual_scaled * e^{sigma(x)}.
double residual_scaled(const DiracPotential& pot, const SolutionTrajectory& traj, double x);

/// Wronskian of two trajectories at the same z, computed from scaled values;
/// exact when both share base point and scale rate.
Complex wronskian_at(const SolutionTrajectory& a, const SolutionTrajectory& b, double x);

/// CSV export: x, re_u1, im_u1, re_u2, im_u2, scale_exponent (17 significant
/// digits, '\n' line endings).
void trajectory_to_csv(const SolutionTrajectory& traj, std::ostream& os);

} // namespace dirac

#endif
