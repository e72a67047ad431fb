#include "dirac/perturbed_radial.hpp"

#include <algorithm>
#include <cmath>

#include "dirac/dalembert.hpp"
#include "dirac/quadrature.hpp"
#include "dirac/special_functions.hpp"

namespace dirac::perturbed {

using namespace dirac::radial;

namespace {

constexpr double PI = 3.14159265358979323846;

// Scaled solution values at one point for one (kappa, z): A = phi_kappa
// e^{-s}, C = dual e^{+s} with dual = psi off the real axis (theta on it),
// plus the a*_kappa combinations and the second index l2 = kappa-1 (or -kappa
// reflected). All kernel entries assemble from these O(1) quantities.
struct Basis {
    Complex A, C, aA, aC, A2, C2;
    Complex dA, dC, daA, daC, dA2, dC2; // x-derivatives, same scaling
};

struct KernelContext {
    double kappa;
    Complex z, zeta;
    double alpha; // |Im z|; 0 selects the phi/theta (real-axis) form
    bool use_psi;
    double l2;
    double sgn2; // K_{kappa-1} = sgn2 * K_{l2}
    Complex m_ref, aC_coef;

    KernelContext(double k, Complex z_) : kappa(k), z(z_), zeta(z_ * z_) {
        alpha = std::abs(z.imag());
        use_psi = z.imag() != 0.0;
        // The matrix kernel's (2,2) block is (1/z) W-combination of a*phi,
        // a*theta; unwinding the recurrences gives +z K_{kappa-1} for
        // kappa >= 1/2 but +z K_{-kappa} for kappa < 1/2 -- i.e. the scalar
        // reflection K_{kappa-1} = -K_{-kappa} does NOT apply inside the
        // matrix (the free kappa=0 kernel [[sin,-cos],[cos,sin]] pins the
        // sign).
        if (kappa >= 0.5) {
            l2 = kappa - 1.0;
        } else {
            l2 = -kappa;
        }
        sgn2 = 1.0;
        if (use_psi) {
            if (kappa < 0.5) {
                m_ref = m_l(-kappa, zeta);
                aC_coef = -std::exp((kappa + 0.5) * std::log(-zeta));
            } else {
                aC_coef = zeta;
            }
        }
    }

    Basis basis(double t, bool with_deriv) const {
        Basis b;
        double s = alpha * t;
        double em = std::exp(-s), ep = std::exp(s);
        b.A = phi_l(kappa, zeta, t) * em;
        b.A2 = phi_l(l2, zeta, t) * em;
        if (use_psi) {
            b.C = psi_l(kappa, zeta, t) * ep;
            b.C2 = psi_l(l2, zeta, t) * ep;
            if (kappa >= 0.5) {
                b.aA = b.A2;
                b.aC = aC_coef * b.C2;
            } else {
                b.aA = sf::cos_pi(kappa) * (b.C2 * em * em - m_ref * b.A2);
                b.aC = aC_coef * b.C2;
            }
        } else {
            b.C = theta_l(kappa, zeta, t);
            b.C2 = theta_l(l2, zeta, t);
            if (kappa >= 0.5) {
                b.aA = b.A2;
                b.aC = zeta * b.C2;
            } else {
                b.aA = sf::cos_pi(kappa) * b.C2;
                b.aC = -zeta * b.A2 / sf::cos_pi(kappa);
            }
        }
        if (with_deriv) {
            Complex dphi = phi_l_dx(kappa, zeta, t) * em;
            Complex dphi2 = phi_l_dx(l2, zeta, t) * em;
            b.dA = dphi;
            b.dA2 = dphi2;
            if (use_psi) {
                Complex dpsi = psi_l_dx(kappa, zeta, t) * ep;
                Complex dpsi2 = psi_l_dx(l2, zeta, t) * ep;
                b.dC = dpsi;
                b.dC2 = dpsi2;
                if (kappa >= 0.5) {
                    b.daA = dphi2;
                    b.daC = aC_coef * dpsi2;
                } else {
                    b.daA = sf::cos_pi(kappa) * (dpsi2 * em * em - m_ref * dphi2);
                    b.daC = aC_coef * dpsi2;
                }
            } else {
                Complex dth = theta_l_dx(kappa, zeta, t);
                Complex dth2 = theta_l_dx(l2, zeta, t);
                b.dC = dth;
                b.dC2 = dth2;
                if (kappa >= 0.5) {
                    b.daA = dphi2;
                    b.daC = zeta * dth2;
                } else {
                    b.daA = sf::cos_pi(kappa) * dth2;
                    b.daC = -zeta * dphi2 / sf::cos_pi(kappa);
                }
            }
        }
        return b;
    }

    // K(z,x,y) e^{-alpha(x-y)} from precomputed bases; E = e^{-2 alpha (x-y)}
    Mat2c khat(const Basis& bx, const Basis& by, double E) const {
        return {z * (bx.A * by.C - by.A * bx.C * E), bx.A * by.aC - by.aA * bx.C * E,
                bx.aA * by.C - by.A * bx.aC * E,
                z * sgn2 * (bx.A2 * by.C2 - by.A2 * bx.C2 * E)};
    }
    // d/dx of the above (derivatives act on the x-argument factors)
    Mat2c khat_dx(const Basis& bx, const Basis& by, double E) const {
        return {z * (bx.dA * by.C - by.A * bx.dC * E), bx.dA * by.aC - by.aA * bx.dC * E,
                bx.daA * by.C - by.A * bx.daC * E,
                z * sgn2 * (bx.dA2 * by.C2 - by.A2 * bx.dC2 * E)};
    }
    // scaled Phi_kappa (m = 0): ((z) phi_kappa, a* phi_kappa) e^{-s}
    Spinor phi0(const Basis& b) const { return {z * b.A, b.aA}; }
    Spinor phi0_dx(const Basis& b) const { return {z * b.dA, b.daA}; }
};

} // namespace

Perturbation Perturbation::am_bump(double lo, double hi, double height) {
    return {[lo, hi, height](double x) -> SymMat2 {
                if (x <= lo || x >= hi) return {};
                double t = (x - lo) / (hi - lo);
                double q = height * 0.5 * (1.0 - std::cos(2.0 * PI * t));
                return {0.0, q, 0.0};
            },
            Regularity::smooth};
}

Perturbation Perturbation::am_edge_bump(double lo, double hi, double height) {
    return {[lo, hi, height](double x) -> SymMat2 {
                if (x <= lo || x >= hi) return {};
                double t = (x - lo) / (hi - lo);
                double q = std::cos(0.5 * PI * t);
                return {0.0, height * q * q, 0.0};
            },
            Regularity::l1loc};
}

Perturbation Perturbation::mass(double m) {
    return {[m](double) -> SymMat2 { return {m, 0.0, -m}; }, Regularity::smooth};
}

Complex kernel_K_l(double l, Complex zeta, double x, double y) {
    if (!(0.0 < y && y <= x)) throw DomainError("kernel_K_l: need 0 < y <= x");
    if (l < -1.0) throw DomainError("kernel_K_l: l < -1");
    double sgn = 1.0;
    if (l < -0.5) {
        l = -1.0 - l;
        sgn = -1.0;
    }
    Complex sq = std::sqrt(zeta);
    if (sq.imag() == 0.0) // zeta on [0, inf): phi/theta product form, real
        return sgn * (phi_l(l, zeta, x) * theta_l(l, zeta, y) -
                      phi_l(l, zeta, y) * theta_l(l, zeta, x));
    return sgn *
           (phi_l(l, zeta, x) * psi_l(l, zeta, y) - phi_l(l, zeta, y) * psi_l(l, zeta, x));
}

Complex kernel_K_l_dx(double l, Complex zeta, double x, double y) {
    if (!(0.0 < y && y <= x)) throw DomainError("kernel_K_l_dx: need 0 < y <= x");
    if (l < -1.0) throw DomainError("kernel_K_l_dx: l < -1");
    double sgn = 1.0;
    if (l < -0.5) {
        l = -1.0 - l;
        sgn = -1.0;
    }
    Complex sq = std::sqrt(zeta);
    if (sq.imag() == 0.0)
        return sgn * (phi_l_dx(l, zeta, x) * theta_l(l, zeta, y) -
                      phi_l(l, zeta, y) * theta_l_dx(l, zeta, x));
    return sgn *
           (phi_l_dx(l, zeta, x) * psi_l(l, zeta, y) - phi_l(l, zeta, y) * psi_l_dx(l, zeta, x));
}

Mat2c kernel_K(double kappa, Complex z, double x, double y) {
    if (!(0.0 < y && y <= x)) throw DomainError("kernel_K: need 0 < y <= x");
    if (kappa < 0.0) throw DomainError("kernel_K: kappa < 0");
    KernelContext ctx(kappa, z);
    Basis bx = ctx.basis(x, false), by = ctx.basis(y, false);
    double E = std::exp(-2.0 * ctx.alpha * (x - y));
    Mat2c kh = ctx.khat(bx, by, E);
    double back = std::exp(ctx.alpha * (x - y));
    return {kh.a11 * back, kh.a12 * back, kh.a21 * back, kh.a22 * back};
}

// ---------------------------------------------------------------------------

struct NeumannSolution::Impl {
    KernelContext ctx;
    Perturbation P;
    double x_max;
    std::vector<double> mesh;           // panel boundaries
    std::vector<double> nodes;          // 8 per panel, ascending
    std::vector<double> gauss_w;        // full-panel weights
    std::vector<SymMat2> Pv;            // P at nodes
    std::vector<Basis> bases;           // with derivatives
    std::vector<Spinor> phi;            // accumulated scaled solution at nodes
    std::vector<Spinor> phi0;           // scaled Phi_kappa at nodes

    Impl(double kappa, Complex z) : ctx(kappa, z) {}

    int panel_of(double x) const {
        auto it = std::upper_bound(mesh.begin(), mesh.end(), x);
        int p = static_cast<int>(it - mesh.begin()) - 1;
        return std::clamp(p, 0, static_cast<int>(mesh.size()) - 2);
    }

    // integral int_0^x Khat(x,.) P phi_arg dy against nodal values
    Spinor volterra_apply(double x, const Basis& bx, const std::vector<Spinor>& f,
                          bool deriv) const {
        Spinor acc;
        int p = panel_of(x);
        for (int q = 0; q < p; ++q)
            for (int j = 0; j < 8; ++j) {
                int idx = q * 8 + j;
                double E = std::exp(-2.0 * ctx.alpha * (x - nodes[idx]));
                Mat2c K = deriv ? ctx.khat_dx(bx, bases[idx], E) : ctx.khat(bx, bases[idx], E);
                acc += K.apply(Pv[idx].apply(f[idx])) * gauss_w[idx];
            }
        // partial panel p up to x
        double a = mesh[p], b = mesh[p + 1], h = b - a;
        double t = std::clamp((x - a) / h, 0.0, 1.0);
        std::array<double, 8> w;
        quad::gl8_prefix_to(t, w);
        for (int j = 0; j < 8; ++j) {
            int idx = p * 8 + j;
            if (w[j] == 0.0) continue;
            double E = std::exp(-2.0 * ctx.alpha * (x - nodes[idx]));
            Mat2c K = deriv ? ctx.khat_dx(bx, bases[idx], E) : ctx.khat(bx, bases[idx], E);
            acc += K.apply(Pv[idx].apply(f[idx])) * (w[j] * h);
        }
        return acc;
    }

    Spinor interpolate(double x, const std::vector<Spinor>& f) const {
        int p = panel_of(x);
        double a = mesh[p], h = mesh[p + 1] - a;
        double t = (x - a) / h;
        const auto& tn = quad::gl8_nodes01();
        const auto& bw = quad::gl8_barycentric_weights();
        Complex num1 = 0, num2 = 0, den = 0;
        for (int j = 0; j < 8; ++j) {
            double d = t - tn[j];
            if (std::abs(d) < 1e-14) return f[p * 8 + j];
            double c = bw[j] / d;
            num1 += c * f[p * 8 + j].f1;
            num2 += c * f[p * 8 + j].f2;
            den += c;
        }
        return {num1 / den, num2 / den};
    }
};

NeumannSolution::NeumannSolution(std::shared_ptr<const Impl> impl, int truncation_index,
                                 double tail_estimate, double I_xmax,
                                 std::vector<double> increments)
    : impl_(std::move(impl)), kappa_(impl_->ctx.kappa), z_(impl_->ctx.z), alpha_(impl_->ctx.alpha),
      truncation_index_(truncation_index), tail_estimate_(tail_estimate), I_xmax_(I_xmax),
      increments_(std::move(increments)) {}

Spinor NeumannSolution::eval_scaled(double x) const { return impl_->interpolate(x, impl_->phi); }

Spinor NeumannSolution::deriv_scaled(double x) const {
    const auto& im = *impl_;
    Basis bx = im.ctx.basis(x, true);
    Spinor dphi0 = im.ctx.phi0_dx(bx);
    // -J P(x) Phi-hat(x)
    Spinor ph = eval_scaled(x);
    Spinor pf = im.P.P(x).apply(ph);
    Spinor local{-pf.f2, pf.f1};
    Spinor tail = im.volterra_apply(x, bx, im.phi, true);
    return dphi0 + local + tail;
}

Spinor NeumannSolution::deriv(double x) const {
    // true derivative: (v' + alpha v) e^{alpha x} for v = Phi e^{-alpha x}
    Spinor v = eval_scaled(x), dv = deriv_scaled(x);
    // deriv_scaled returns Phi' e^{-alpha x} directly (not v'), so just unscale
    (void)v;
    return dv * std::exp(scale_exponent(x));
}

double NeumannSolution::volterra_residual_scaled(double x) const {
    const auto& im = *impl_;
    Basis bx = im.ctx.basis(x, false);
    Spinor lhs = eval_scaled(x);
    Spinor rhs = im.ctx.phi0(bx) + im.volterra_apply(x, bx, im.phi, false);
    return (lhs - rhs).norm();
}

SolutionTrajectory NeumannSolution::as_trajectory() const {
    NeumannSolution self = *this;
    double lo = impl_->nodes.front(), hi = impl_->x_max;
    return SolutionTrajectory::from_closure(
        z_, lo, hi, 0.5 * (lo + hi), [self](double x) { return self.eval(x); },
        [self](double x) { return self.deriv(x); });
}

double perturbation_integral(double kappa, const Perturbation& P, double x) {
    bool logw = std::abs(kappa - 0.5) < 1e-12;
    auto f = [&P, logw](double r) {
        double n = P.P(r).op_norm();
        return logw ? n * (1.0 - std::log(r)) : n;
    };
    auto mesh = quad::graded_mesh(x, 40);
    mesh[0] = x * 1e-14; // keep the log weight finite
    return quad::composite_gl8(f, mesh);
}

DiracPotential perturbed_potential(double kappa, const Perturbation& P, double x_hi) {
    auto Pf = P.P;
    auto q_sc = CoefficientFunction::custom(
        [Pf](double x) {
            SymMat2 p = Pf(x);
            return 0.5 * (p.a11 - p.a22);
        },
        P.cls);
    auto q_el = CoefficientFunction::custom(
        [Pf](double x) {
            SymMat2 p = Pf(x);
            return 0.5 * (p.a11 + p.a22);
        },
        P.cls);
    auto q_am = CoefficientFunction::custom([Pf, kappa](double x) { return kappa / x + Pf(x).a12; },
                                            P.cls);
    return DiracPotential(Interval(0.0, x_hi), 0.0, q_sc, q_el, q_am);
}

NeumannSolution neumann_solve(double kappa, const Perturbation& P, Complex z, double x_max,
                              double tol, int n_panels) {
    if (kappa < 0.0) throw SpecError("neumann_solve: kappa < 0");
    if (!(x_max > 0.0)) throw SpecError("neumann_solve: x_max <= 0");

    // integrability check: I(x_max) must be stable under refinement
    double I1 = perturbation_integral(kappa, P, x_max);
    {
        bool logw = std::abs(kappa - 0.5) < 1e-12;
        auto f = [&P, logw](double r) {
            double n = P.P(r).op_norm();
            return logw ? n * (1.0 - std::log(r)) : n;
        };
        auto mesh2 = quad::graded_mesh(x_max, 80);
        mesh2[0] = x_max * 1e-14;
        double I2 = quad::composite_gl8(f, mesh2);
        if (std::abs(I2 - I1) > 0.05 * (std::abs(I2) + 1e-10))
            throw ConvergenceError("neumann_solve: I(x) quadrature unstable; P not integrable "
                                   "in the declared class");
        I1 = I2;
    }

    auto impl = std::make_shared<NeumannSolution::Impl>(kappa, z);
    impl->P = P;
    impl->x_max = x_max;
    impl->mesh = quad::graded_mesh(x_max, n_panels);
    const auto& tn = quad::gl8_nodes01();
    for (int p = 0; p < n_panels; ++p) {
        double a = impl->mesh[p], h = impl->mesh[p + 1] - a;
        for (int j = 0; j < 8; ++j) {
            impl->nodes.push_back(a + h * tn[j]);
            impl->gauss_w.push_back(0.5 * quad::gl8_w[j] * h);
        }
    }
    const int N = static_cast<int>(impl->nodes.size());
    impl->Pv.resize(N);
    impl->bases.resize(N);
    impl->phi0.resize(N);
    for (int i = 0; i < N; ++i) {
        impl->Pv[i] = P.P(impl->nodes[i]);
        impl->bases[i] = impl->ctx.basis(impl->nodes[i], true);
        impl->phi0[i] = impl->ctx.phi0(impl->bases[i]);
    }

    // Neumann iteration on the collocation nodes
    std::vector<Spinor> total = impl->phi0, prev = impl->phi0, next(N);
    double base_scale = 0.0;
    for (int i = 0; i < N; ++i) base_scale = std::max(base_scale, impl->phi0[i].norm());
    if (base_scale == 0.0) base_scale = 1.0;

    std::vector<double> increments;
    int n_iter = 0;
    double tail = 0.0;
    for (int n = 1; n <= 100; ++n) {
        double inc_norm = 0.0;
        for (int i = 0; i < N; ++i) {
            next[i] = impl->volterra_apply(impl->nodes[i], impl->bases[i], prev, false);
            inc_norm = std::max(inc_norm, next[i].norm());
        }
        for (int i = 0; i < N; ++i) total[i] += next[i];
        increments.push_back(inc_norm);
        std::swap(prev, next);
        n_iter = n;
        tail = inc_norm;
        if (inc_norm < tol * base_scale) break;
        if (n == 100)
            throw ConvergenceError("neumann_solve: series did not converge in 100 terms");
    }
    impl->phi = std::move(total);
    return NeumannSolution(impl, n_iter, tail, I1, std::move(increments));
}

AsymptoticsReport asymptotics_check(double kappa, const Perturbation& P, double x, Complex ray,
                                    const std::vector<double>& radii) {
    if (ray.imag() == 0.0) throw DomainError("asymptotics_check: ray must be nonreal");
    // the asymptotics hold for trace-normalized Q, i.e. tr P = 0 (any
    // electrostatic part must be gauged away first)
    for (double t = 0.1; t < 1.0; t += 0.17) {
        SymMat2 pv = P.P(t * x);
        if (std::abs(pv.a11 + pv.a22) > 1e-10 * (1.0 + pv.op_norm()))
            throw DomainError("asymptotics_check: P has a nonzero trace at x=" +
                              std::to_string(t * x));
    }
    Complex dir = ray / std::abs(ray);
    AsymptoticsReport rep;
    rep.radii = radii;
    for (double r : radii) {
        Complex z = r * dir;
        auto sol = neumann_solve(kappa, P, z, x, 1e-12);
        KernelContext ctx(kappa, z);
        Basis bx = ctx.basis(x, false);
        Spinor ph0 = ctx.phi0(bx);
        Spinor diff = sol.eval_scaled(x) - ph0;
        double v = diff.norm() * std::pow(std::abs(z), kappa);
        rep.scaled_diffs.push_back(v);
        rep.max_diff = std::max(rep.max_diff, v);
        if (r == radii.back()) {
            Spinor ph = sol.eval_scaled(x);
            rep.ratio_f1_last = ph.f1 / ph0.f1;
            rep.ratio_f2_last = ph.f2 / ph0.f2;
        }
    }
    rep.decreasing =
        rep.scaled_diffs.size() >= 2 &&
        (rep.scaled_diffs.back() < 0.7 * rep.scaled_diffs.front() || rep.max_diff < 1e-12);
    return rep;
}

SolutionTrajectory second_solution_theta(double kappa, const Perturbation& P, Complex z,
                                         double x_ref, double x_max, double tol) {
    auto sol = neumann_solve(kappa, P, z, x_max, tol);
    auto traj = sol.as_trajectory();
    Spinor u = traj.eval(x_ref);
    auto variant =
        std::abs(u.f1) >= std::abs(u.f2) ? DalembertVariant::first : DalembertVariant::second;
    auto pot = perturbed_potential(kappa, P, x_max * (1.0 + 1e-9));
    return dalembert_second(pot, z, traj, x_ref, variant);
}

} // namespace dirac::perturbed
