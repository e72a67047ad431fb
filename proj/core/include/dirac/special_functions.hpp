#ifndef DIRAC_SPECIAL_FUNCTIONS_HPP
#define DIRAC_SPECIAL_FUNCTIONS_HPP

#include <complex>

#include "dirac/errors.hpp"

namespace dirac::sf {

using Complex = std::complex<double>;

/// Gamma function on the real line (Lanczos g=7). Poles at nonpositive
/// integers raise DomainError. >= 12 significant digits on (0, 50].
double gamma_fn(double x);

/// sin(pi*x), cos(pi*x) with exact argument reduction; accurate for large x.
double sin_pi(double x);
double cos_pi(double x);

/// Principal-branch log: Im in (-pi, pi]. w = 0 raises DomainError.
Complex clog(Complex w);

/// Principal-branch power exp(p*clog(w)). For noninteger p, w on the closed
/// negative real axis raises BranchError (branch cut).
Complex cpow(Complex w, double p);

/// Bessel functions of real order and complex argument, principal branch
/// (cut along the negative real axis). Relative accuracy ~1e-12 for
/// |w| <= 200, |nu| <= 30, degrading to ~1e-16/|nu - round(nu)| for orders
/// within ~1e-4 of an integer (reflection formula).
Complex bessel_j(double nu, Complex w);
Complex bessel_y(double nu, Complex w);
Complex hankel1(double nu, Complex w);

struct JY {
    Complex j, y;
};
JY bessel_jy(double nu, Complex w);

/// value = mantissa * exp(exponent). The exponent absorbs the e^{|Im w|}
/// growth (or decay, for H1 in the upper half-plane).
struct ScaledComplex {
    Complex mantissa{0.0, 0.0};
    double exponent = 0.0;
    Complex value() const { return mantissa * std::exp(exponent); }
};

ScaledComplex bessel_j_scaled(double nu, Complex w);
ScaledComplex bessel_y_scaled(double nu, Complex w);
ScaledComplex hankel1_scaled(double nu, Complex w);

} // namespace dirac::sf

#endif
