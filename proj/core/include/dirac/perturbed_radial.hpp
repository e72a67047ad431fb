#ifndef DIRAC_PERTURBED_RADIAL_HPP
#define DIRAC_PERTURBED_RADIAL_HPP

#include <functional>
#include <vector>

#include "dirac/ode.hpp"
#include "dirac/operator_model.hpp"
#include "dirac/radial.hpp"

namespace dirac::perturbed {

using dirac::Complex;
using dirac::Spinor;

/// Symmetric perturbation of Q_kappa on (0, b); the mass is absorbed into P
/// (the kappa-radial background here is always massless).
struct Perturbation {
    std::function<SymMat2(double)> P;
    Regularity cls = Regularity::l1loc;

    static Perturbation zero() {
        return {[](double) { return SymMat2{}; }, Regularity::smooth};
    }
    /// q_am bump of given height supported on (lo, hi) (smooth cosine shape).
    static Perturbation am_bump(double lo, double hi, double height);
    /// q_am bump maximal at lo, falling to 0 at hi (half-cosine squared);
    /// keeps the full exponential signature e^{-2 lo |Im z|} in Weyl-function
    /// differences, unlike the smooth bump that vanishes at its edges.
    static Perturbation am_edge_bump(double lo, double hi, double height);
    /// constant mass term m sigma_3 as a perturbation
    static Perturbation mass(double m);
};

/// Scalar difference kernel of the Bessel system,
/// K_l(zeta,x,y) = phi_l(x) theta_l(y) - phi_l(y) theta_l(x) for l >= -1/2,
/// and -K_{-1-l} for l in [-1,-1/2). Evaluated through the decaying Weyl
/// solution off the real zeta axis (the phi/theta product form cancels
/// catastrophically for large |Im sqrt(zeta)| (x-y)).
Complex kernel_K_l(double l, Complex zeta, double x, double y);
/// d/dx of kernel_K_l, via the closed-form derivative recurrences.
Complex kernel_K_l_dx(double l, Complex zeta, double x, double y);

/// 2x2 matrix kernel of the variation-of-constants equation:
/// [[z K_kappa, (-d/dx + kappa/x) K_{kappa-1}],
///  [(d/dx + kappa/x) K_kappa, z K_{kappa-1}]], off-diagonal entries through
/// the analytic cross-identities (no numerical differentiation).
Mat2c kernel_K(double kappa, Complex z, double x, double y);

/// Neumann-series solution of
/// Phi(z,x) = Phi_kappa(z,x) + int_0^x K(z,x,y) P(y) Phi(z,y) dy on (0,x_max].
class NeumannSolution {
  public:
    double kappa() const { return kappa_; }
    Complex z() const { return z_; }
    int truncation_index() const { return truncation_index_; }
    double tail_estimate() const { return tail_estimate_; }
    const std::vector<double>& increment_norms() const { return increments_; }
    double I_at_xmax() const { return I_xmax_; }
    double scale_rate() const { return alpha_; }
    double scale_exponent(double x) const { return alpha_ * x; }

    /// Phi(z,x) e^{-|Im z| x} (always finite)
    Spinor eval_scaled(double x) const;
    Spinor eval(double x) const { return eval_scaled(x) * std::exp(scale_exponent(x)); }
    /// derivative via the differentiated integral equation (scaled space)
    Spinor deriv_scaled(double x) const;
    Spinor deriv(double x) const;

    /// Scaled residual of the integral equation at x; the iteration stops
    /// when this is below the requested tolerance at the verification nodes.
    double volterra_residual_scaled(double x) const;

    /// Trajectory adapter (true values; derivative analytic).
    SolutionTrajectory as_trajectory() const;

    struct Impl;
    NeumannSolution(std::shared_ptr<const Impl> impl, int truncation_index, double tail_estimate,
                    double I_xmax, std::vector<double> increments);

  private:
    std::shared_ptr<const Impl> impl_;
    double kappa_;
    Complex z_;
    double alpha_;
    int truncation_index_;
    double tail_estimate_;
    double I_xmax_;
    std::vector<double> increments_;
};

NeumannSolution neumann_solve(double kappa, const Perturbation& P, Complex z, double x_max,
                              double tol = 1e-12, int n_panels = 48);

/// max over radii of |Phi(z,x) - Phi_kappa(z,x)| |z|^kappa e^{-|Im z| x}
/// along the ray, plus the per-radius values and the trend.
struct AsymptoticsReport {
    std::vector<double> radii;
    std::vector<double> scaled_diffs; // |Phi - Phi_k| |z|^k e^{-|Im z| x}
    double max_diff = 0.0;
    bool decreasing = false;
    Complex ratio_f1_last; // Phi_1/Phi_kappa_1 at the largest radius
    Complex ratio_f2_last;
};

AsymptoticsReport asymptotics_check(double kappa, const Perturbation& P, double x, Complex ray,
                                    const std::vector<double>& radii);

/// Second solution with W(Theta, Phi) = 1 by reduction of order on the
/// Neumann solution; variant picked from the larger Phi component near x_ref.
SolutionTrajectory second_solution_theta(double kappa, const Perturbation& P, Complex z,
                                         double x_ref, double x_max, double tol = 1e-12);

/// I(x) = int_0^x ||P|| dr, log-weighted for kappa = 1/2.
double perturbation_integral(double kappa, const Perturbation& P, double x);

/// Q_kappa + P as a DiracPotential on (0, x_hi) for ODE integration.
DiracPotential perturbed_potential(double kappa, const Perturbation& P, double x_hi = kInf);

} // namespace dirac::perturbed

#endif
