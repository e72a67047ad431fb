#include "dirac/radial.hpp"

#include <cmath>

#include "dirac/special_functions.hpp"

namespace dirac::radial {

namespace {

constexpr double PI = 3.14159265358979323846264338327950288;
constexpr double SQRT_PI = 1.77245385090551602729816748334114518;
constexpr double kSmallZetaCross = 1e-4; // |zeta| x^2 below this: series path

// principal power/log as boundary values from above on the negative axis;
// the entire combinations phi_l/theta_l are insensitive to the side chosen
Complex pow_b(Complex zeta, double p) { return std::exp(p * std::log(zeta)); }

bool integer_resonance(double l) {
    double nu = l + 0.5;
    return std::abs(nu - std::round(nu)) <= 1e-12;
}

void check_lx(double l, double x) {
    if (l < -0.5) throw DomainError("radial: l must be >= -1/2");
    if (!(x > 0.0)) throw DomainError("radial: x must be positive");
}

double psi_digamma_sum(int k, int shift) {
    // psi(k+1) + psi(k+shift+1) in plain double (small-series use only)
    static const double egamma = 0.57721566490153286061;
    double s = -2.0 * egamma;
    for (int j = 1; j <= k; ++j) s += 1.0 / j;
    for (int j = 1; j <= k + shift; ++j) s += 1.0 / j;
    return s;
}

// phi_l = sqrt(pi) (x/2)^{l+1} sum_k (-zeta x^2/4)^k / (k! Gamma(k+l+3/2));
// factor (l+1+2k)/x per term for the derivative
Complex phi_small(double l, Complex zeta, double x, bool deriv) {
    Complex q = -zeta * x * x * 0.25;
    double g = sf::gamma_fn(l + 1.5);
    Complex term = std::pow(0.5 * x, l + 1.0) / g;
    Complex sum = deriv ? term * ((l + 1.0) / x) : term;
    for (int k = 1; k <= 40; ++k) {
        term *= q / (static_cast<double>(k) * (k + l + 0.5));
        Complex t = deriv ? term * ((l + 1.0 + 2.0 * k) / x) : term;
        sum += t;
        if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    }
    return SQRT_PI * sum;
}

// noninteger branch: theta_l = sqrt(pi)(x/2)^{-l}/sin(nu pi) *
//                    sum_k (-zeta x^2/4)^k / (k! Gamma(k+1/2-l))
Complex theta_small_generic(double l, Complex zeta, double x, bool deriv) {
    Complex q = -zeta * x * x * 0.25;
    double nu = l + 0.5;
    Complex term = std::pow(0.5 * x, -l) / sf::gamma_fn(0.5 - l);
    Complex sum = deriv ? term * (-l / x) : term;
    for (int k = 1; k <= 40; ++k) {
        term *= q / (static_cast<double>(k) * (k - l - 0.5));
        Complex t = deriv ? term * ((-l + 2.0 * k) / x) : term;
        sum += t;
        if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    }
    return SQRT_PI * sum / sf::sin_pi(nu);
}

// integer branch (nu = n): three entire pieces; see the Y_n series
Complex theta_small_integer(int n, Complex zeta, double x, bool deriv) {
    const double hx = 0.5 * x;
    const Complex q = -zeta * x * x * 0.25;
    const double lnhx = std::log(hx);

    // finite part: sum_{k<n} (n-k-1)!/k! (zeta x^2/4)^k (x/2)^{1/2-n}
    Complex a_sum = 0.0;
    {
        Complex term = std::pow(hx, 0.5 - n);
        double fact = 1.0;
        for (int j = 1; j < n; ++j) fact *= j; // (n-1)!
        Complex coef = fact;
        for (int k = 0; k < n; ++k) {
            Complex t = coef * term;
            a_sum += deriv ? t * ((0.5 - n + 2.0 * k) / x) : t;
            if (k + 1 < n) {
                coef *= -q / ((n - k - 1.0) * (k + 1.0)); // (zeta x^2/4) transfer
                // (n-k-2)!/(k+1)! = prev * 1/((n-k-1)(k+1)); power of (zeta x^2/4)
            }
        }
    }

    // psi-weighted and log pieces: zeta^n (x/2)^{n+1/2} sum_k p_k (-q)^k ...
    Complex b_sum = 0.0;
    {
        Complex zn = 1.0;
        for (int j = 0; j < n; ++j) zn *= zeta;
        double fact_n = 1.0;
        for (int j = 1; j <= n; ++j) fact_n *= j;
        Complex p = std::pow(hx, n + 0.5) / fact_n; // k = 0 term of 1/(k!(n+k)!)
        for (int k = 0; k <= 40; ++k) {
            double psum = psi_digamma_sum(k, n);
            Complex common = zn * p;
            Complex t;
            if (!deriv) {
                t = common * (psum - 2.0 * lnhx);
            } else {
                t = common * ((psum - 2.0 * lnhx) * ((n + 0.5 + 2.0 * k) / x) - 2.0 / x);
            }
            b_sum += t;
            if (std::abs(common) < 1e-18 * (std::abs(b_sum) + 1e-280) && k > 2) break;
            p *= q / (static_cast<double>(k + 1) * (n + k + 1.0));
        }
    }
    return (a_sum + b_sum) / SQRT_PI;
}

} // namespace

DiracPotential radial_potential(const RadialParams& p) {
    double kappa = p.kappa;
    return DiracPotential(Interval(0.0, kInf), p.m, {}, {},
                          CoefficientFunction::custom([kappa](double x) { return kappa / x; },
                                                      Regularity::smooth));
}

Complex phi_l(double l, Complex zeta, double x) {
    check_lx(l, x);
    if (std::abs(zeta) * x * x < kSmallZetaCross) return phi_small(l, zeta, x, false);
    Complex sq = std::sqrt(zeta);
    Complex w = sq * x;
    return pow_b(zeta, -0.25 * (2.0 * l + 1.0)) * std::sqrt(PI * x / 2.0) *
           sf::bessel_j(l + 0.5, w);
}

Complex phi_l_dx(double l, Complex zeta, double x) {
    check_lx(l, x);
    if (std::abs(zeta) * x * x < kSmallZetaCross) return phi_small(l, zeta, x, true);
    Complex sq = std::sqrt(zeta);
    Complex w = sq * x;
    double nu = l + 0.5;
    Complex bracket = sq * sf::bessel_j(nu - 1.0, w) - (l / x) * sf::bessel_j(nu, w);
    return pow_b(zeta, -0.25 * (2.0 * l + 1.0)) * std::sqrt(PI * x / 2.0) * bracket;
}

Complex theta_l(double l, Complex zeta, double x) {
    check_lx(l, x);
    const bool resonant = integer_resonance(l);
    if (std::abs(zeta) * x * x < kSmallZetaCross)
        return resonant ? theta_small_integer(static_cast<int>(std::round(l + 0.5)), zeta, x, false)
                        : theta_small_generic(l, zeta, x, false);
    Complex sq = std::sqrt(zeta);
    Complex w = sq * x;
    double nu = l + 0.5;
    if (!resonant)
        return pow_b(zeta, 0.25 * (2.0 * l + 1.0)) * std::sqrt(PI * x / 2.0) *
               sf::bessel_j(-nu, w) / sf::sin_pi(nu);
    int n = static_cast<int>(std::round(nu));
    Complex corr = sf::bessel_y(n, w) - (std::log(zeta) / PI) * sf::bessel_j(n, w);
    return -pow_b(zeta, 0.5 * n) * std::sqrt(PI * x / 2.0) * corr;
}

Complex theta_l_dx(double l, Complex zeta, double x) {
    check_lx(l, x);
    const bool resonant = integer_resonance(l);
    if (std::abs(zeta) * x * x < kSmallZetaCross)
        return resonant ? theta_small_integer(static_cast<int>(std::round(l + 0.5)), zeta, x, true)
                        : theta_small_generic(l, zeta, x, true);
    Complex sq = std::sqrt(zeta);
    Complex w = sq * x;
    double nu = l + 0.5;
    if (!resonant) {
        Complex bracket =
            sq * sf::bessel_j(-nu - 1.0, w) + ((l + 1.0) / x) * sf::bessel_j(-nu, w);
        return pow_b(zeta, 0.25 * (2.0 * l + 1.0)) * std::sqrt(PI * x / 2.0) * bracket /
               sf::sin_pi(nu);
    }
    int n = static_cast<int>(std::round(nu));
    Complex c = std::log(zeta) / PI;
    Complex Fn = sf::bessel_y(n, w) - c * sf::bessel_j(n, w);
    Complex Fm = sf::bessel_y(n - 1.0, w) - c * sf::bessel_j(n - 1.0, w);
    Complex bracket = sq * Fm + ((0.5 - n) / x) * Fn;
    return -pow_b(zeta, 0.5 * n) * std::sqrt(PI * x / 2.0) * bracket;
}

namespace {

void check_psi_zeta(Complex zeta) {
    if (zeta.imag() == 0.0 && zeta.real() >= 0.0)
        throw BranchError("radial: zeta on [0,inf) (continuous spectrum of the Bessel problem)");
}

} // namespace

Complex psi_l(double l, Complex zeta, double x) {
    check_lx(l, x);
    check_psi_zeta(zeta);
    double nu = l + 0.5;
    Complex sqm = std::sqrt(-zeta);
    Complex i_unit(0.0, 1.0);
    Complex base = i_unit * sqm;
    return i_unit * std::sqrt(PI * x / 2.0) * std::exp(nu * std::log(base)) *
           sf::hankel1(nu, base * x);
}

Complex psi_l_dx(double l, Complex zeta, double x) {
    check_lx(l, x);
    check_psi_zeta(zeta);
    double nu = l + 0.5;
    Complex sqm = std::sqrt(-zeta);
    Complex i_unit(0.0, 1.0);
    Complex base = i_unit * sqm;
    Complex w = base * x;
    Complex bracket = base * sf::hankel1(nu - 1.0, w) - (l / x) * sf::hankel1(nu, w);
    return i_unit * std::sqrt(PI * x / 2.0) * std::exp(nu * std::log(base)) * bracket;
}

Complex m_l(double l, Complex zeta) {
    if (l < -0.5) throw DomainError("radial: l must be >= -1/2");
    check_psi_zeta(zeta);
    double nu = l + 0.5;
    if (!integer_resonance(l)) return -std::exp(nu * std::log(-zeta)) / sf::sin_pi(nu);
    int n = static_cast<int>(std::round(nu));
    Complex zn = 1.0;
    for (int j = 0; j < n; ++j) zn *= zeta;
    return -(zn / PI) * std::log(-zeta);
}

Complex astar_phi(double kappa, Complex zeta, double x) {
    if (kappa >= 0.5) return phi_l(kappa - 1.0, zeta, x);
    return sf::cos_pi(kappa) * theta_l(-kappa, zeta, x);
}

Complex astar_theta(double kappa, Complex zeta, double x) {
    if (kappa >= 0.5) return zeta * theta_l(kappa - 1.0, zeta, x);
    // the reflected branch carries a minus sign, fixed by W(Theta,Phi) = 1
    return -zeta * phi_l(-kappa, zeta, x) / sf::cos_pi(kappa);
}

Complex astar_psi(double kappa, Complex zeta, double x) {
    if (kappa >= 0.5) return zeta * psi_l(kappa - 1.0, zeta, x);
    return -std::exp((kappa + 0.5) * std::log(-zeta)) * psi_l(-kappa, zeta, x);
}

Spinor Phi_kappa(const RadialParams& p, Complex z, double x) {
    Complex zeta = z * z - p.m * p.m;
    return {(z + p.m) * phi_l(p.kappa, zeta, x), astar_phi(p.kappa, zeta, x)};
}

Spinor Theta_kappa(const RadialParams& p, Complex z, double x) {
    // a* theta_kappa carries a factor zeta = (z-m)(z+m); cancelling (z+m)
    // analytically keeps Theta entire (in particular at z = -m)
    Complex zeta = z * z - p.m * p.m;
    Complex second;
    if (p.kappa >= 0.5)
        second = (z - p.m) * theta_l(p.kappa - 1.0, zeta, x);
    else
        second = -(z - p.m) * phi_l(-p.kappa, zeta, x) / sf::cos_pi(p.kappa);
    return {theta_l(p.kappa, zeta, x), second};
}

Spinor weyl_solution_kappa(const RadialParams& p, Complex z, double x) {
    Complex zeta = z * z - p.m * p.m;
    return {(z + p.m) * psi_l(p.kappa, zeta, x), astar_psi(p.kappa, zeta, x)};
}

Complex M_kappa(const RadialParams& p, Complex z) {
    if (z.imag() == 0.0 && std::abs(z.real()) >= p.m)
        throw DomainError("M_kappa: z on the essential spectrum");
    if (z == Complex(-p.m, 0.0)) throw DomainError("M_kappa: z = -m");
    Complex zeta = z * z - p.m * p.m;
    return m_l(p.kappa, zeta) / (z + p.m);
}

double rho_kappa_density(const RadialParams& p, double lambda) {
    if (std::abs(lambda) < p.m) return 0.0;
    double t = std::abs(lambda * lambda - p.m * p.m);
    return std::pow(t, p.kappa + 0.5) / ((std::abs(lambda) + p.m) * PI);
}

int nevanlinna_index(const RadialParams& p) { return static_cast<int>(std::floor(p.kappa + 0.5)); }

} // namespace dirac::radial
