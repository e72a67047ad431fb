#include "dirac/weyl.hpp"

#include <algorithm>
#include <cmath>

#include "dirac/quadrature.hpp"

namespace dirac {

bool GridFunction::uniform() const {
    if (x.size() < 3) return false;
    double h = x[1] - x[0];
    for (size_t i = 1; i + 1 < x.size(); ++i)
        if (std::abs(x[i + 1] - x[i] - h) > 1e-10 * (std::abs(h) + 1e-12)) return false;
    return true;
}

Complex GridFunction::pair_integral(const std::function<Spinor(double)>& g) const {
    const size_t n = x.size();
    if (n < 2 || n != v.size()) throw SpecError("GridFunction: bad grid");
    std::vector<Complex> f(n);
    for (size_t i = 0; i < n; ++i) {
        Spinor gi = g(x[i]);
        f[i] = gi.f1 * v[i].f1 + gi.f2 * v[i].f2;
    }
    if (uniform() && n % 2 == 1) {
        double h = x[1] - x[0];
        Complex acc = f[0] + f[n - 1];
        for (size_t i = 1; i + 1 < n; ++i) acc += f[i] * ((i % 2) ? 4.0 : 2.0);
        return acc * (h / 3.0);
    }
    Complex acc = 0.0;
    for (size_t i = 0; i + 1 < n; ++i) acc += 0.5 * (x[i + 1] - x[i]) * (f[i] + f[i + 1]);
    return acc;
}

double GridFunction::norm_sq() const {
    const size_t n = x.size();
    std::vector<double> f(n);
    for (size_t i = 0; i < n; ++i) f[i] = std::norm(v[i].f1) + std::norm(v[i].f2);
    if (uniform() && n % 2 == 1) {
        double h = x[1] - x[0];
        double acc = f[0] + f[n - 1];
        for (size_t i = 1; i + 1 < n; ++i) acc += f[i] * ((i % 2) ? 4.0 : 2.0);
        return acc * (h / 3.0);
    }
    double acc = 0.0;
    for (size_t i = 0; i + 1 < n; ++i) acc += 0.5 * (x[i + 1] - x[i]) * (f[i] + f[i + 1]);
    return acc;
}

} // namespace dirac

namespace dirac::weyl {

Complex aitken_limit(std::vector<Complex> s, double* err_est) {
    if (s.empty()) throw SpecError("aitken_limit: empty sequence");
    double last_change = 0.0;
    Complex best = s.back();
    while (s.size() >= 3) {
        std::vector<Complex> next;
        next.reserve(s.size() - 2);
        for (size_t k = 0; k + 2 < s.size(); ++k) {
            Complex den = s[k + 2] - 2.0 * s[k + 1] + s[k];
            Complex d = s[k + 2] - s[k + 1];
            if (std::abs(den) < 1e-300 ||
                std::abs(den) < 1e-14 * (std::abs(s[k + 2]) + std::abs(s[k]))) {
                next.push_back(s[k + 2]); // sequence already flat
            } else {
                next.push_back(s[k + 2] - d * d / den);
            }
        }
        last_change = std::abs(next.back() - best);
        best = next.back();
        s = std::move(next);
    }
    if (err_est) *err_est = last_change;
    return best;
}

TruncationScheme TruncationScheme::toward(double first, double last, int count) {
    if (count < 3) throw SpecError("TruncationScheme: need >= 3 points");
    TruncationScheme s;
    for (int i = 0; i < count; ++i)
        s.points.push_back(first + (last - first) * i / (count - 1));
    return s;
}

TruncationScheme TruncationScheme::geometric_toward(double endpoint, double first, double last,
                                                    int count) {
    if (count < 3) throw SpecError("TruncationScheme: need >= 3 points");
    double d0 = first - endpoint, d1 = last - endpoint;
    if (d0 == 0.0 || d1 == 0.0 || (d0 > 0) != (d1 > 0) || std::abs(d1) >= std::abs(d0))
        throw SpecError("TruncationScheme: ladder must approach the endpoint monotonically");
    TruncationScheme s;
    for (int i = 0; i < count; ++i)
        s.points.push_back(endpoint +
                           d0 * std::pow(d1 / d0, static_cast<double>(i) / (count - 1)));
    return s;
}

namespace {

Complex truncated_m(const SolutionTrajectory& c_sol, const SolutionTrajectory& s_sol, double bp,
                    BoundaryCondition bc, double sign) {
    Spinor cv = c_sol.eval_scaled(bp), sv = s_sol.eval_scaled(bp);
    Complex num = bc == BoundaryCondition::dirichlet ? cv.f1 : cv.f2;
    Complex den = bc == BoundaryCondition::dirichlet ? sv.f1 : sv.f2;
    return sign * num / den;
}

Complex m_limit(const DiracPotential& pot, double c, Complex z, const TruncationScheme& scheme,
                const ODETolerance& tol, double sign) {
    if (z.imag() == 0.0) throw DomainError("weyl m-function: Im z must be nonzero");
    if (scheme.points.size() < 3) throw SpecError("weyl m-function: ladder needs >= 3 points");
    double far = sign < 0 ? *std::max_element(scheme.points.begin(), scheme.points.end())
                          : *std::min_element(scheme.points.begin(), scheme.points.end());
    // sign=-1: ladder toward b (m_plus, points > c); sign=+1: toward a
    auto [c_sol, s_sol] = fundamental_system(pot, z, c, far, tol);
    std::vector<Complex> ladder;
    for (double bp : scheme.points) ladder.push_back(truncated_m(c_sol, s_sol, bp, scheme.bc, sign));
    double err = 0.0;
    Complex m = aitken_limit(ladder, &err);
    if (!std::isfinite(m.real()) || !std::isfinite(m.imag()) ||
        err > 1e-3 * (1.0 + std::abs(m)))
        throw ExtrapolationError("weyl m-function: truncation ladder did not converge");
    if (m.imag() * z.imag() < -1e-10 * std::abs(m))
        throw ExtrapolationError("weyl m-function: Herglotz sign violated (ladder too short?)");
    return m;
}

} // namespace

Complex m_plus(const DiracPotential& pot, double c, Complex z, const TruncationScheme& scheme,
               const ODETolerance& tol) {
    return m_limit(pot, c, z, scheme, tol, -1.0);
}

Complex m_minus(const DiracPotential& pot, double c, Complex z, const TruncationScheme& scheme,
                const ODETolerance& tol) {
    return m_limit(pot, c, z, scheme, tol, +1.0);
}

SolutionTrajectory weyl_solution_plus(const DiracPotential& pot, double c, Complex z,
                                      const TruncationScheme& scheme, double x_lo,
                                      const ODETolerance& tol) {
    Complex m = m_plus(pot, c, z, scheme, tol);
    double x_hi = *std::max_element(scheme.points.begin(), scheme.points.end());
    auto [cR, sR] = fundamental_system(pot, z, c, x_hi, tol);
    if (x_lo >= c) {
        auto right = SolutionTrajectory::combine(1.0, cR, m, sR);
        return right;
    }
    auto [cL, sL] = fundamental_system(pot, z, c, x_lo, tol);
    auto value = [cL, sL, cR, sR, m, c](double x) -> Spinor {
        if (x <= c) return cL.eval(x) + m * sL.eval(x);
        return cR.eval(x) + m * sR.eval(x);
    };
    auto deriv = [cL, sL, cR, sR, m, c](double x) -> Spinor {
        if (x <= c) return cL.deriv(x) + m * sL.deriv(x);
        return cR.deriv(x) + m * sR.deriv(x);
    };
    return SolutionTrajectory::from_closure(z, x_lo, x_hi, c, value, deriv);
}

SingularFrame radial_frame(const radial::RadialParams& p) {
    return {[p](Complex z, double x) { return radial::Theta_kappa(p, z, x); },
            [p](Complex z, double x) { return radial::Phi_kappa(p, z, x); },
            FrameProvenance::radial_closed_form};
}

SingularFrame frame_rescale(const SingularFrame& frame, std::function<Complex(Complex)> g,
                            std::function<Complex(Complex)> f) {
    auto phi = frame.phi;
    auto theta = frame.theta;
    return {[phi, theta, g, f](Complex z, double x) -> Spinor {
                Complex eg = std::exp(-g(z));
                return eg * theta(z, x) - f(z) * phi(z, x);
            },
            [phi, g](Complex z, double x) -> Spinor { return std::exp(g(z)) * phi(z, x); },
            frame.provenance};
}

Complex singular_M(const SingularFrame& frame, const SolutionTrajectory& u_plus,
                   std::span<const double> eval_points) {
    if (eval_points.empty()) throw SpecError("singular_M: need evaluation points");
    Complex z = u_plus.z();
    Complex m_acc = 0.0;
    Complex first;
    double spread = 0.0;
    bool have_first = false;
    for (double x : eval_points) {
        Spinor u = u_plus.eval(x);
        Spinor th = frame.theta(z, x);
        Spinor ph = frame.phi(z, x);
        Complex w_phi = wronskian(ph, u);
        Complex w_theta = wronskian(th, u);
        double scale = ph.norm() * u.norm();
        if (std::abs(w_phi) < 1e-10 * scale)
            throw PoleSignal("singular_M: W(Phi, u+) vanishes (z at an eigenvalue?)");
        Complex m = -w_theta / w_phi;
        if (!have_first) {
            first = m;
            have_first = true;
        }
        spread = std::max(spread, std::abs(m - first));
        m_acc += m;
    }
    Complex m = m_acc / static_cast<double>(eval_points.size());
    if (spread > 1e-8 * (1.0 + std::abs(m)))
        throw ExtrapolationError("singular_M: Wronskians depend on the evaluation point "
                                 "(spread " +
                                 std::to_string(spread) + ")");
    return m;
}

Spinor weyl_psi(const SingularFrame& frame, Complex M, Complex z, double x) {
    return frame.theta(z, x) + M * frame.phi(z, x);
}

Mat2c greens_function(const SingularFrame& frame, Complex M, Complex z, double x, double y) {
    Spinor psi = weyl_psi(frame, M, z, x >= y ? x : y);
    Spinor phi = frame.phi(z, x >= y ? y : x);
    if (y <= x) {
        // Psi(x) (x) Phi(y)
        return {psi.f1 * phi.f1, psi.f1 * phi.f2, psi.f2 * phi.f1, psi.f2 * phi.f2};
    }
    // Phi(x) (x) Psi(y)
    return {phi.f1 * psi.f1, phi.f1 * psi.f2, phi.f2 * psi.f1, phi.f2 * psi.f2};
}

GridFunction resolvent_apply(const SingularFrame& frame, Complex M, Complex z,
                             const GridFunction& f) {
    const size_t n = f.x.size();
    if (n < 2 || n != f.v.size()) throw SpecError("resolvent_apply: bad grid");
    std::vector<Spinor> phi(n), psi(n);
    for (size_t i = 0; i < n; ++i) {
        phi[i] = frame.phi(z, f.x[i]);
        psi[i] = weyl_psi(frame, M, z, f.x[i]);
    }
    auto pair = [](const Spinor& a, const Spinor& b) { return a.f1 * b.f1 + a.f2 * b.f2; };
    // prefix A(x) = int_a^x <Phi, f>, suffix B(x) = int_x^b <Psi, f>
    std::vector<Complex> A(n), B(n);
    A[0] = 0.0;
    for (size_t i = 1; i < n; ++i)
        A[i] = A[i - 1] + 0.5 * (f.x[i] - f.x[i - 1]) *
                              (pair(phi[i - 1], f.v[i - 1]) + pair(phi[i], f.v[i]));
    B[n - 1] = 0.0;
    for (size_t i = n - 1; i-- > 0;)
        B[i] = B[i + 1] + 0.5 * (f.x[i + 1] - f.x[i]) *
                              (pair(psi[i], f.v[i]) + pair(psi[i + 1], f.v[i + 1]));
    GridFunction out;
    out.x = f.x;
    out.v.resize(n);
    for (size_t i = 0; i < n; ++i) out.v[i] = psi[i] * A[i] + phi[i] * B[i];
    return out;
}

namespace {

// Neville polynomial extrapolation to 0 of the pairs (eps_i, y_i); err gets
// the change contributed by the last ladder point.
double neville0_real(const std::vector<double>& xs, std::vector<double> ys, double* err) {
    const size_t n = ys.size();
    double second_last = ys[0];
    for (size_t j = 1; j < n; ++j) {
        for (size_t i = 0; i + j < n; ++i)
            ys[i] = (xs[i + j] * ys[i] - xs[i] * ys[i + 1]) / (xs[i + j] - xs[i]);
        if (j == n - 2) second_last = ys[0];
    }
    if (err) *err = std::abs(ys[0] - second_last);
    return ys[0];
}

} // namespace

SpectralDensityEstimate stieltjes_invert(const std::function<Complex(Complex)>& M_eval, double l0,
                                         double l1, std::span<const double> eps_ladder,
                                         int n_samples) {
    if (!(l0 < l1)) throw SpecError("stieltjes_invert: need l0 < l1");
    if (eps_ladder.size() < 3) throw SpecError("stieltjes_invert: ladder needs >= 3 epsilons");
    std::vector<double> eps(eps_ladder.begin(), eps_ladder.end());
    std::sort(eps.begin(), eps.end(), std::greater<double>());

    SpectralDensityEstimate est;
    est.lambda.resize(n_samples);
    for (int i = 0; i < n_samples; ++i)
        est.lambda[i] = l0 + (l1 - l0) * i / (n_samples - 1);

    // masses per epsilon, then Neville to eps -> 0
    std::vector<double> masses;
    for (double e : eps) {
        auto integrand = [&](double l) { return M_eval(Complex(l, e)).imag(); };
        double v = quad::gk15_adaptive(integrand, l0, l1, 1e-9 * std::max(1.0, l1 - l0));
        masses.push_back(v / 3.14159265358979323846);
    }
    {
        double err = 0.0;
        est.window_mass = neville0_real(eps, masses, &err);
        est.mass_err = err;
    }

    est.density.resize(n_samples);
    est.density_err.resize(n_samples);
    for (int i = 0; i < n_samples; ++i) {
        std::vector<double> ys;
        for (double e : eps)
            ys.push_back(M_eval(Complex(est.lambda[i], e)).imag() / 3.14159265358979323846);
        double err = 0.0;
        est.density[i] = neville0_real(eps, ys, &err);
        est.density_err[i] = err;
    }
    return est;
}

SingularFrame limit_circle_frame(const DiracPotential& pot, const SolutionTrajectory& Phi0,
                                 const SolutionTrajectory& Theta0, const TruncationScheme& scheme,
                                 const ODETolerance& tol) {
    if (scheme.points.size() < 3)
        throw SpecError("limit_circle_frame: ladder needs >= 3 points");
    double c = Phi0.base_x();
    Complex lambda0 = Phi0.z();
    if (lambda0.imag() != 0.0) throw SpecError("limit_circle_frame: lambda0 must be real");
    // W(Theta0, Phi0) = 1
    {
        Complex w = wronskian(Theta0.eval(c), Phi0.eval(c));
        if (std::abs(w - Complex(1.0, 0.0)) > 1e-6)
            throw SpecError("limit_circle_frame: W(Theta0, Phi0) != 1");
    }
    std::vector<double> ladder = scheme.points;
    std::sort(ladder.begin(), ladder.end(), std::greater<double>()); // marching toward a

    DiracPotential pot_c = pot;
    auto coeffs = [pot_c, c, ladder, Phi0, Theta0, tol](Complex z) {
        double far = ladder.back();
        auto [c_sol, s_sol] = fundamental_system(pot_c, z, c, far, tol);
        std::vector<Complex> wc_phi, ws_phi, wc_th, ws_th;
        for (double xk : ladder) {
            Spinor cv = c_sol.eval(xk), sv = s_sol.eval(xk);
            Spinor p0 = Phi0.eval(xk), t0 = Theta0.eval(xk);
            wc_phi.push_back(wronskian(cv, p0));
            ws_phi.push_back(wronskian(sv, p0));
            wc_th.push_back(wronskian(cv, t0));
            ws_th.push_back(wronskian(sv, t0));
        }
        double e1, e2, e3, e4;
        Complex a_cp = aitken_limit(wc_phi, &e1);
        Complex a_sp = aitken_limit(ws_phi, &e2);
        Complex a_ct = aitken_limit(wc_th, &e3);
        Complex a_st = aitken_limit(ws_th, &e4);
        double scale = std::abs(a_cp) + std::abs(a_sp) + std::abs(a_ct) + std::abs(a_st) + 1.0;
        if (std::max({e1, e2, e3, e4}) > 1e-5 * scale)
            throw LimitPointDiagnosis("limit_circle_frame: Wronskian ladder does not settle; "
                                      "endpoint looks limit point");
        struct R {
            Complex a_cp, a_sp, a_ct, a_st;
        };
        return R{a_cp, a_sp, a_ct, a_st};
    };

    auto evaluate = [pot_c, c, coeffs, tol](Complex z, double x, bool theta_part) -> Spinor {
        auto r = coeffs(z);
        Spinor cv{{1, 0}, {0, 0}}, sv{{0, 0}, {1, 0}};
        if (x != c) {
            auto [c_sol, s_sol] = fundamental_system(pot_c, z, c, x, tol);
            cv = c_sol.eval(x);
            sv = s_sol.eval(x);
        }
        if (theta_part) return r.a_ct * sv - r.a_st * cv;
        return r.a_cp * sv - r.a_sp * cv;
    };

    SingularFrame f;
    f.provenance = FrameProvenance::limit_circle;
    f.theta = [evaluate](Complex z, double x) { return evaluate(z, x, true); };
    f.phi = [evaluate](Complex z, double x) { return evaluate(z, x, false); };
    return f;
}

double herglotz_residual(const SingularFrame& frame, const std::function<Complex(Complex)>& M_eval,
                         Complex z, const std::vector<double>& mesh) {
    if (z.imag() == 0.0) throw DomainError("herglotz_residual: z must be nonreal");
    if (mesh.size() < 2) throw SpecError("herglotz_residual: mesh needs >= 2 points");
    Complex M = M_eval(z);
    auto f = [&](double x) {
        Spinor psi = weyl_psi(frame, M, z, x);
        return std::norm(psi.f1) + std::norm(psi.f2);
    };
    double nrm = quad::composite_gl8(f, mesh);
    double lhs = M.imag();
    double rhs = z.imag() * nrm;
    return std::abs(lhs - rhs) / std::max(std::abs(lhs), 1e-300);
}

MomentTest nevanlinna_moment_test(const SpectralMeasure& measure, int k) {
    MomentTest out;
    if (k < 0) throw SpecError("nevanlinna_moment_test: k must be >= 0");
    if (measure.kind == SpectralMeasure::Kind::atoms) {
        // finite measure: every moment integral converges
        out.verdict = MomentTest::Verdict::pass;
        out.tail_exponent = -kInf;
        out.smallest_k = 0;
        return out;
    }
    if (!measure.density || measure.lambda_max <= 1.0)
        throw SpecError("nevanlinna_moment_test: density with lambda_max > 1 required");
    // fit density ~ |lambda|^p from log-spaced tail samples on both sides
    double lo = std::max(1.0, measure.lambda_max / 8.0), hi = measure.lambda_max;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (int i = 0; i < 12; ++i) {
        double l = lo * std::pow(hi / lo, i / 11.0);
        for (double s : {-1.0, 1.0}) {
            double d = measure.density(s * l);
            if (d <= 0.0) continue;
            double X = std::log(l), Y = std::log(d);
            sx += X;
            sy += Y;
            sxx += X * X;
            sxy += X * Y;
            ++n;
        }
    }
    if (n < 6) {
        // density vanishes in the tail: integrable against any weight
        out.verdict = MomentTest::Verdict::pass;
        out.tail_exponent = -kInf;
        out.smallest_k = 0;
        return out;
    }
    double p = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    out.tail_exponent = p;
    double crit = 2.0 * k + 1.0; // finite iff p < 2k+1
    if (std::abs(p - crit) < 0.1) {
        out.verdict = MomentTest::Verdict::indeterminate;
        out.smallest_k = -1;
        return out;
    }
    out.verdict = p < crit ? MomentTest::Verdict::pass : MomentTest::Verdict::fail;
    out.smallest_k = std::max(0, static_cast<int>(std::ceil(0.5 * (p - 1.0) + 1e-12)));
    return out;
}

} // namespace dirac::weyl
