#include "dirac/special_functions.hpp"

#include <cmath>

namespace dirac::sf {

namespace {

constexpr double PI = 3.14159265358979323846264338327950288;

// ---------------------------------------------------------------------------
// Double-double arithmetic. The ascending Bessel series suffers cancellation
// of order e^{|w| - |Im w|}; accumulating terms in ~31-digit arithmetic keeps
// the series usable out to |w| ~ 35 at full double accuracy.
// ---------------------------------------------------------------------------

struct dd {
    double hi = 0.0, lo = 0.0;
};

inline dd quick_two_sum(double a, double b) {
    double s = a + b;
    return {s, b - (s - a)};
}
inline dd two_sum(double a, double b) {
    double s = a + b;
    double bb = s - a;
    return {s, (a - (s - bb)) + (b - bb)};
}
inline dd two_prod(double a, double b) {
    double p = a * b;
    return {p, std::fma(a, b, -p)};
}
inline dd dd_add(dd a, dd b) {
    dd s = two_sum(a.hi, b.hi);
    dd t = two_sum(a.lo, b.lo);
    dd r = quick_two_sum(s.hi, s.lo + t.hi);
    return quick_two_sum(r.hi, r.lo + t.lo);
}
inline dd dd_add(dd a, double b) {
    dd s = two_sum(a.hi, b);
    return quick_two_sum(s.hi, s.lo + a.lo);
}
inline dd dd_sub(dd a, dd b) { return dd_add(a, dd{-b.hi, -b.lo}); }
inline dd dd_mul(dd a, dd b) {
    dd p = two_prod(a.hi, b.hi);
    return quick_two_sum(p.hi, p.lo + a.hi * b.lo + a.lo * b.hi);
}
inline dd dd_mul(dd a, double b) {
    dd p = two_prod(a.hi, b);
    return quick_two_sum(p.hi, p.lo + a.lo * b);
}
inline dd dd_div(dd a, double b) {
    double q1 = a.hi / b;
    dd p = two_prod(q1, b);
    double q2 = (((a.hi - p.hi) - p.lo) + a.lo) / b;
    return quick_two_sum(q1, q2);
}
inline dd dd_div(dd a, dd b) {
    double q1 = a.hi / b.hi;
    dd r = dd_sub(a, dd_mul(b, q1));
    double q2 = r.hi / b.hi;
    r = dd_sub(r, dd_mul(b, q2));
    double q3 = r.hi / b.hi;
    dd q = quick_two_sum(q1, q2);
    return dd_add(q, q3);
}
inline double dd_val(dd a) { return a.hi + a.lo; }

struct cdd {
    dd re, im;
};

inline cdd cdd_make(double re, double im) { return {{re, 0.0}, {im, 0.0}}; }
inline Complex cdd_val(cdd z) { return {dd_val(z.re), dd_val(z.im)}; }
inline cdd cdd_add(cdd a, cdd b) { return {dd_add(a.re, b.re), dd_add(a.im, b.im)}; }
inline cdd cdd_mul(cdd a, cdd b) {
    dd re = dd_sub(dd_mul(a.re, b.re), dd_mul(a.im, b.im));
    dd im = dd_add(dd_mul(a.re, b.im), dd_mul(a.im, b.re));
    return {re, im};
}
inline cdd cdd_mul(cdd a, dd b) { return {dd_mul(a.re, b), dd_mul(a.im, b)}; }
inline cdd cdd_div(cdd a, double b) { return {dd_div(a.re, b), dd_div(a.im, b)}; }
inline double cdd_mag(cdd a) { return std::hypot(a.re.hi, a.im.hi); }

// -w^2/4 to full dd precision from a double complex w
inline cdd neg_quarter_sq(Complex w) {
    double wr = w.real(), wi = w.imag();
    dd re = dd_sub(two_prod(wi, wi), two_prod(wr, wr)); // -(wr^2 - wi^2)
    dd im = two_prod(-2.0 * wr, wi);
    return {dd{0.25 * re.hi, 0.25 * re.lo}, dd{0.25 * im.hi, 0.25 * im.lo}};
}

// Euler-Mascheroni constant, double-double split.
const dd kEulerGamma = {0.5772156649015329, -4.942915152430645e-18};

// ---------------------------------------------------------------------------

constexpr double kSeriesRadius = 35.0; // dd series domain
constexpr double kAsymRadius = 22.0;   // low-order asymptotics usable here

inline bool is_near_int(double x, double tol = 1e-12) {
    return std::abs(x - std::round(x)) <= tol;
}
inline bool is_exact_int(double x) { return x == std::round(x) && std::abs(x) < 1e15; }
inline bool is_near_half_int(double x, double tol = 1e-12) { return is_near_int(x - 0.5, tol); }

// sum_k (-w^2/4)^k / (k! (nu+1)_k), i.e. J_nu(w) / ((w/2)^nu / Gamma(nu+1))
cdd j_series_sum(double nu, Complex w) {
    const cdd q = neg_quarter_sq(w);
    cdd term = cdd_make(1.0, 0.0);
    cdd sum = term;
    for (int k = 1; k <= 500; ++k) {
        term = cdd_mul(term, q);
        term = cdd_div(term, static_cast<double>(k));
        // nu + k must be carried to full dd precision: its rounding error
        // otherwise enters every term and is amplified by the cancellation
        dd div = two_sum(nu, static_cast<double>(k));
        term = {dd_div(term.re, div), dd_div(term.im, div)};
        sum = cdd_add(sum, term);
        if (cdd_mag(term) < 1e-33 * (cdd_mag(sum) + 1e-300) && k > 4) break;
    }
    return sum;
}

Complex j_via_series(double nu, Complex w) {
    // prefactor only needs double accuracy: it scales the whole sum
    Complex pref = std::exp(nu * std::log(0.5 * w)) / gamma_fn(nu + 1.0);
    return pref * cdd_val(j_series_sum(nu, w));
}

// Y_n for n = 0, 1 via the logarithmic small-argument series, dd-accumulated.
Complex y01_via_series(int n, Complex w) {
    const cdd q = neg_quarter_sq(w);
    const Complex half_w = 0.5 * w;
    const Complex logw = std::log(half_w);

    // sum1: J_n-type series, sum2: psi-weighted series
    cdd p = cdd_make(1.0, 0.0); // (-w^2/4)^k / (k! (n+k)!)
    for (int j = 1; j <= n; ++j) p = cdd_div(p, static_cast<double>(j));
    dd psi = dd{-kEulerGamma.hi, -kEulerGamma.lo}; // psi(1)
    dd psi2 = psi;                                 // psi(n+1)
    for (int j = 1; j <= n; ++j) psi2 = dd_add(psi2, dd_div(dd{1.0, 0.0}, j));

    cdd sumJ = p;
    cdd sumPsi = cdd_mul(p, dd_add(psi, psi2));
    for (int k = 1; k <= 500; ++k) {
        p = cdd_mul(p, q);
        p = cdd_div(p, static_cast<double>(k));
        p = cdd_div(p, static_cast<double>(n + k));
        psi = dd_add(psi, dd_div(dd{1.0, 0.0}, k));
        psi2 = dd_add(psi2, dd_div(dd{1.0, 0.0}, n + k));
        sumJ = cdd_add(sumJ, p);
        cdd t = cdd_mul(p, dd_add(psi, psi2));
        sumPsi = cdd_add(sumPsi, t);
        if (cdd_mag(t) < 1e-33 * (cdd_mag(sumPsi) + 1e-300) && k > 4) break;
    }

    Complex wn = (n == 0) ? Complex(1.0, 0.0) : half_w;
    Complex Jn = wn * cdd_val(sumJ);
    Complex piece_log = (2.0 / PI) * logw * Jn;
    Complex piece_psi = (wn / PI) * cdd_val(sumPsi);
    Complex piece_fin = (n == 1) ? Complex(1.0, 0.0) / (PI * half_w) : Complex(0.0, 0.0);
    return piece_log - piece_fin - piece_psi;
}

// One term pair of the Hankel asymptotic expansion
// H^{s}_nu(w) = sqrt(2/(pi w)) e^{s i chi} sum_k (s i)^k a_k(nu) / w^k.
struct AsymResult {
    Complex value;
    bool ok;
};

AsymResult hankel_asym(double nu, Complex w, int sign) {
    const Complex i_unit(0.0, 1.0);
    const Complex si = (sign > 0) ? i_unit : -i_unit;
    Complex term(1.0, 0.0), sum(1.0, 0.0);
    double prev_mag = 1.0;
    bool converged = false;
    for (int k = 1; k <= 60; ++k) {
        double tk = 2.0 * k - 1.0;
        term *= si * (4.0 * nu * nu - tk * tk) / (8.0 * k * w);
        double mag = std::abs(term);
        if (mag >= prev_mag) { // divergent tail reached
            converged = prev_mag < 1e-12 * std::abs(sum);
            break;
        }
        sum += term;
        prev_mag = mag;
        if (mag < 1e-17 * std::abs(sum)) {
            converged = true;
            break;
        }
    }
    Complex chi = w - (0.5 * nu + 0.25) * PI;
    Complex pref = std::sqrt(2.0 / (PI * w)) * std::exp(si * chi);
    return {pref * sum, converged};
}

// three-term recurrence in the order: F_{mu+1} = (2 mu / w) F_mu - F_{mu-1}
inline void climb_up(Complex& f_lo, Complex& f_hi, double mu_lo, int steps, Complex w) {
    double mu = mu_lo + 1.0;
    for (int k = 0; k < steps; ++k) {
        Complex f_next = (2.0 * mu / w) * f_hi - f_lo;
        f_lo = f_hi;
        f_hi = f_next;
        mu += 1.0;
    }
}
inline void climb_down(Complex& f_hi, Complex& f_lo, double mu_hi, int steps, Complex w) {
    // given F_{mu_hi} (f_hi) and F_{mu_hi - 1} (f_lo), step to lower orders
    double mu = mu_hi - 1.0;
    for (int k = 0; k < steps; ++k) {
        Complex f_prev = (2.0 * mu / w) * f_lo - f_hi;
        f_hi = f_lo;
        f_lo = f_prev;
        mu -= 1.0;
    }
}

void check_w(double nu, Complex w, bool need_nonzero) {
    if (need_nonzero && w == Complex(0.0, 0.0))
        throw DomainError("bessel: w = 0 not allowed for Y/H");
    if (w.imag() == 0.0 && w.real() < 0.0 && !is_near_int(nu))
        throw BranchError("bessel: w on the negative real axis with noninteger order");
}

// J at half-integer order via the trigonometric seeds (|w| <= 35 path).
Complex j_half_int(int n2, Complex w) {
    // order = n2 + 1/2 with n2 possibly negative
    Complex f = std::sqrt(2.0 / (PI * w));
    Complex j_m = f * std::cos(w); // J_{-1/2}
    Complex j_p = f * std::sin(w); // J_{+1/2}
    if (n2 >= 0) {
        // climbing above |w| amplifies roundoff (J decays there); series instead
        if (n2 + 0.5 <= std::abs(w)) {
            climb_up(j_m, j_p, -0.5, n2, w);
            return j_p;
        }
        return j_via_series(n2 + 0.5, w);
    }
    climb_down(j_p, j_m, 0.5, -n2 - 1, w);
    return j_m;
}

JY jy_nonneg(double mu, Complex w);

// big-|w| evaluation for nonnegative order
JY jy_large(double mu, Complex w) {
    double aw = std::abs(w);
    auto combine = [](AsymResult h1, AsymResult h2) -> JY {
        const Complex i_unit(0.0, 1.0);
        return {0.5 * (h1.value + h2.value), (h1.value - h2.value) / (2.0 * i_unit)};
    };
    if (aw >= 30.0 + mu * mu) {
        auto h1 = hankel_asym(mu, w, +1), h2 = hankel_asym(mu, w, -1);
        if (h1.ok && h2.ok) return combine(h1, h2);
    }
    double nu0 = mu - std::floor(mu);
    int n = static_cast<int>(std::floor(mu)); // mu = nu0 + n
    auto lo1 = hankel_asym(nu0, w, +1), lo2 = hankel_asym(nu0, w, -1);
    auto hi1 = hankel_asym(nu0 + 1.0, w, +1), hi2 = hankel_asym(nu0 + 1.0, w, -1);
    if (!(lo1.ok && lo2.ok && hi1.ok && hi2.ok))
        throw ConvergenceError("bessel: asymptotic seeds failed to converge");
    JY lo = combine(lo1, lo2), hi = combine(hi1, hi2);
    if (n == 0) return lo;
    if (mu < 0.9 * aw) {
        climb_up(lo.j, hi.j, nu0, n - 1, w);
    } else {
        hi.j = j_via_series(mu, w); // order comparable to |w|: series is safe
    }
    climb_up(lo.y, hi.y, nu0, n - 1, w);
    return {hi.j, hi.y};
}

JY jy_nonneg(double mu, Complex w) {
    double aw = std::abs(w);
    if (is_near_half_int(mu)) {
        int n2 = static_cast<int>(std::round(mu - 0.5));
        if (aw <= kSeriesRadius) {
            Complex j = j_half_int(n2, w);
            Complex y = ((n2 % 2 == 0) ? 1.0 : -1.0) * (-j_half_int(-n2 - 1, w));
            // Y_{n+1/2} = (-1)^{n+1} J_{-n-1/2}
            return {j, y};
        }
        return jy_large(mu, w);
    }
    if (is_near_int(mu)) {
        int n = static_cast<int>(std::round(mu));
        if (aw <= kSeriesRadius) {
            Complex j = j_via_series(static_cast<double>(n), w);
            Complex y0 = y01_via_series(0, w);
            if (n == 0) return {j, y0};
            Complex y1 = y01_via_series(1, w);
            climb_up(y0, y1, 0.0, n - 1, w);
            return {j, y1};
        }
        return jy_large(mu, w);
    }
    if (aw <= kSeriesRadius) {
        Complex jp = j_via_series(mu, w);
        Complex jm = j_via_series(-mu, w);
        Complex y = (jp * cos_pi(mu) - jm) / sin_pi(mu);
        return {jp, y};
    }
    return jy_large(mu, w);
}

} // namespace

double sin_pi(double x) {
    double r = std::remainder(x, 2.0); // in [-1, 1], exact
    return std::sin(PI * r);
}

double cos_pi(double x) {
    double r = std::remainder(x, 2.0);
    return std::cos(PI * r);
}

double gamma_fn(double x) {
    if (x <= 0.0 && is_exact_int(x))
        throw DomainError("gamma: pole at nonpositive integer " + std::to_string(x));
    static const double c[9] = {0.99999999999980993,     676.5203681218851,
                                -1259.1392167224028,     771.32342877765313,
                                -176.61502916214059,     12.507343278686905,
                                -0.13857109526572012,    9.9843695780195716e-6,
                                1.5056327351493116e-7};
    if (x < 0.5) return PI / (sin_pi(x) * gamma_fn(1.0 - x));
    double z = x - 1.0;
    double a = c[0];
    for (int i = 1; i < 9; ++i) a += c[i] / (z + i);
    double t = z + 7.5;
    return std::sqrt(2.0 * PI) * std::pow(t, z + 0.5) * std::exp(-t) * a;
}

Complex clog(Complex w) {
    if (w == Complex(0.0, 0.0)) throw DomainError("clog: log of zero");
    return std::log(w);
}

Complex cpow(Complex w, double p) {
    if (w == Complex(0.0, 0.0)) {
        if (p > 0.0) return {0.0, 0.0};
        if (p == 0.0) return {1.0, 0.0};
        throw DomainError("cpow: 0 raised to a negative power");
    }
    if (!is_exact_int(p) && w.imag() == 0.0 && w.real() < 0.0)
        throw BranchError("cpow: noninteger power on the closed negative real axis");
    return std::exp(p * std::log(w));
}

JY bessel_jy(double nu, Complex w) {
    check_w(nu, w, true);
    if (nu >= 0.0) return jy_nonneg(nu, w);
    double mu = -nu;
    JY at = jy_nonneg(mu, w);
    double c = cos_pi(mu), s = sin_pi(mu);
    return {at.j * c - at.y * s, at.j * s + at.y * c};
}

Complex bessel_j(double nu, Complex w) {
    if (w == Complex(0.0, 0.0)) {
        if (nu == 0.0) return {1.0, 0.0};
        if (nu > 0.0) return {0.0, 0.0};
        throw DomainError("bessel_j: w = 0 with negative order");
    }
    check_w(nu, w, false);
    if (nu >= 0.0) {
        double aw = std::abs(w);
        if (is_near_half_int(nu) && aw <= kSeriesRadius)
            return j_half_int(static_cast<int>(std::round(nu - 0.5)), w);
        if (aw <= kSeriesRadius) return j_via_series(nu, w);
        return jy_large(nu, w).j;
    }
    return bessel_jy(nu, w).j;
}

Complex bessel_y(double nu, Complex w) { return bessel_jy(nu, w).y; }

Complex hankel1(double nu, Complex w) {
    check_w(nu, w, true);
    if (nu < 0.0) {
        // H1_{-mu} = e^{i mu pi} H1_mu
        double mu = -nu;
        Complex rot(cos_pi(mu), sin_pi(mu));
        return rot * hankel1(mu, w);
    }
    const Complex i_unit(0.0, 1.0);
    double aw = std::abs(w);
    if (w.imag() <= 1.5) {
        JY jy = bessel_jy(nu, w);
        return jy.j + i_unit * jy.y;
    }
    if (is_near_half_int(nu)) {
        int n2 = static_cast<int>(std::round(nu - 0.5));
        Complex f = std::sqrt(2.0 / (PI * w)) * std::exp(i_unit * w);
        Complex h_m = f;           // H1_{-1/2}
        Complex h_p = -i_unit * f; // H1_{1/2}
        if (n2 >= 0) {
            climb_up(h_m, h_p, -0.5, n2, w);
            return h_p;
        }
        climb_down(h_p, h_m, 0.5, -n2 - 1, w);
        return h_m;
    }
    if (aw >= kAsymRadius) {
        if (aw >= 30.0 + nu * nu) {
            auto direct = hankel_asym(nu, w, +1);
            if (direct.ok) return direct.value;
        }
        double nu0 = nu - std::floor(nu);
        int n = static_cast<int>(std::floor(nu));
        auto lo = hankel_asym(nu0, w, +1);
        auto hi = hankel_asym(nu0 + 1.0, w, +1);
        if (lo.ok && hi.ok) {
            if (n == 0) return lo.value;
            Complex f_lo = lo.value, f_hi = hi.value;
            climb_up(f_lo, f_hi, nu0, n - 1, w);
            return f_hi;
        }
    }
    // mid-range, upper half-plane: Steed-type evaluation. J and J' come from
    // the dd series; the logarithmic derivative of H1 from its continued
    // fraction (converges for Im w > 0); the Wronskian fixes the scale.
    Complex jnu = bessel_j(nu, w);
    Complex jm1 = bessel_j(nu - 1.0, w);
    Complex jprime = jm1 - (nu / w) * jnu;

    // H1'/H1 = i - 1/(2w) + (i/w) * CF,
    // CF = a1/(b1 + a2/(b2 + ...)), ak = ((2k-1)/2)^2 - nu^2, bk = 2(w + k i)
    Complex cf(0.0, 0.0);
    {
        const double tiny = 1e-290;
        Complex b = 2.0 * (w + i_unit);
        Complex a = 0.25 - nu * nu;
        Complex fc = a / b; // first convergent of the CF
        Complex C = a / tiny, D = 1.0 / b;
        Complex delta(0.0, 0.0);
        cf = fc;
        for (int k = 2; k <= 20000; ++k) {
            a = (k - 0.5) * (k - 0.5) - nu * nu;
            b = 2.0 * (w + static_cast<double>(k) * i_unit);
            D = b + a * D;
            if (D == Complex(0.0, 0.0)) D = tiny;
            C = b + a / C;
            if (C == Complex(0.0, 0.0)) C = tiny;
            D = 1.0 / D;
            delta = C * D;
            cf *= delta;
            if (std::abs(delta - 1.0) < 1e-16) break;
            if (k == 20000)
                throw ConvergenceError("hankel1: continued fraction did not converge");
        }
    }
    Complex ratio = i_unit - 0.5 / w + (i_unit / w) * cf;
    Complex den = jnu * ratio - jprime;
    return (2.0 * i_unit / (PI * w)) / den;
}

namespace {

ScaledComplex scale_by(Complex value, double exponent) {
    return {value * std::exp(-exponent), exponent};
}

} // namespace

ScaledComplex bessel_j_scaled(double nu, Complex w) {
    return scale_by(bessel_j(nu, w), std::abs(w.imag()));
}
ScaledComplex bessel_y_scaled(double nu, Complex w) {
    return scale_by(bessel_y(nu, w), std::abs(w.imag()));
}
ScaledComplex hankel1_scaled(double nu, Complex w) {
    double e = (w.imag() > 0.0) ? -w.imag() : std::abs(w.imag());
    return scale_by(hankel1(nu, w), e);
}

} // namespace dirac::sf
