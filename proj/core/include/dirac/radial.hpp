#ifndef DIRAC_RADIAL_HPP
#define DIRAC_RADIAL_HPP

#include "dirac/operator_model.hpp"

namespace dirac::radial {

using dirac::Complex;
using dirac::Spinor;

/// Unperturbed radial Dirac operator on (0, inf):
/// Q_kappa(x) = [[m, kappa/x], [kappa/x, -m]].
struct RadialParams {
    double kappa = 0.0;
    double m = 0.0;

    RadialParams(double k, double mass) : kappa(k), m(mass) {
        if (k < 0.0) throw SpecError("RadialParams: kappa < 0 (reduce by -s1 tau s1 gauge)");
        if (mass < 0.0) throw SpecError("RadialParams: m < 0");
    }
};

DiracPotential radial_potential(const RadialParams& p);

// Entire fundamental system of the Bessel-type equation
// -u'' + l(l+1)/x^2 u = zeta u with W(theta_l, phi_l) = 1. phi_l ~ x^{l+1}/C_l
// at 0. All functions are entire in zeta; on the negative real axis the
// displayed formulas are evaluated as boundary values from above, which
// cancel to the (real) entire value. Requires l >= -1/2 and x > 0.
// theta_l switches to the log-corrected branch when l + 1/2 is an integer
// (detection tolerance 1e-12).
Complex phi_l(double l, Complex zeta, double x);
Complex theta_l(double l, Complex zeta, double x);
Complex phi_l_dx(double l, Complex zeta, double x);
Complex theta_l_dx(double l, Complex zeta, double x);

/// Weyl solution psi_l = theta_l + m_l phi_l, square-integrable at infinity.
/// Requires zeta off [0, inf). The derivative is evaluated through the
/// Hankel recurrence (not theta' + m phi', which cancels for large |Im z| x).
Complex psi_l(double l, Complex zeta, double x);
Complex psi_l_dx(double l, Complex zeta, double x);

/// Singular Weyl function of the half-line Bessel problem; zeta off [0, inf).
/// Integer case evaluates -(1/pi) zeta^{l+1/2} log(-zeta) (the printed
/// z^{l+1/2} is dimensionally inconsistent; see README).
Complex m_l(double l, Complex zeta);

// a*_kappa = d/dx + kappa/x applied to the kappa-indexed solutions, via the
// closed-form recurrences (branch split at kappa = 1/2).
Complex astar_phi(double kappa, Complex zeta, double x);
Complex astar_theta(double kappa, Complex zeta, double x);
Complex astar_psi(double kappa, Complex zeta, double x);

/// Regular radial solution Phi_kappa(z,x) = ((z+m) phi_kappa, a* phi_kappa)
/// at zeta = z^2 - m^2.
Spinor Phi_kappa(const RadialParams& p, Complex z, double x);
/// Singular radial solution with W(Theta_kappa, Phi_kappa) = 1; z != -m.
Spinor Theta_kappa(const RadialParams& p, Complex z, double x);
/// Decaying solution built from psi_kappa; z off the spectrum.
Spinor weyl_solution_kappa(const RadialParams& p, Complex z, double x);

/// M_kappa(z) = m_kappa(z^2 - m^2)/(z + m) for z off (-inf,-m] u [m,inf).
Complex M_kappa(const RadialParams& p, Complex z);

/// Spectral density: chi_{|l|>=m}(lambda) |lambda^2-m^2|^{kappa+1/2} /
/// ((|lambda|+m) pi).
double rho_kappa_density(const RadialParams& p, double lambda);

/// floor(kappa + 1/2): number of negative squares of M_kappa.
int nevanlinna_index(const RadialParams& p);

} // namespace dirac::radial

#endif
