#include "dirac/uniqueness.hpp"

#include <algorithm>
#include <cmath>

#include "dirac/discrete.hpp"
#include "dirac/radial.hpp"

namespace dirac::uniq {

namespace {

// least-squares real-coefficient polynomial fit p(z) = sum a_j z^j to the
// complex samples (z_k, d_k) with z_k = i y_k, evaluated via normal equations
std::vector<double> fit_real_poly(const std::vector<Complex>& zs, const std::vector<Complex>& ds,
                                  int degree) {
    int m = degree + 1;
    // real LSQ: unknowns a_0..a_d; rows: Re and Im of each sample equation
    std::vector<std::vector<double>> A;
    std::vector<double> b;
    for (size_t k = 0; k < zs.size(); ++k) {
        std::vector<Complex> pw(m);
        Complex p = 1.0;
        for (int j = 0; j < m; ++j) {
            pw[j] = p;
            p *= zs[k];
        }
        std::vector<double> row_re(m), row_im(m);
        for (int j = 0; j < m; ++j) {
            row_re[j] = pw[j].real();
            row_im[j] = pw[j].imag();
        }
        A.push_back(row_re);
        b.push_back(ds[k].real());
        A.push_back(row_im);
        b.push_back(ds[k].imag());
    }
    // normal equations, m <= 3: Gaussian elimination
    std::vector<std::vector<double>> N(m, std::vector<double>(m + 1, 0.0));
    for (size_t r = 0; r < A.size(); ++r)
        for (int i = 0; i < m; ++i) {
            for (int j = 0; j < m; ++j) N[i][j] += A[r][i] * A[r][j];
            N[i][m] += A[r][i] * b[r];
        }
    for (int col = 0; col < m; ++col) {
        int piv = col;
        for (int r = col + 1; r < m; ++r)
            if (std::abs(N[r][col]) > std::abs(N[piv][col])) piv = r;
        std::swap(N[col], N[piv]);
        if (std::abs(N[col][col]) < 1e-300) continue;
        for (int r = 0; r < m; ++r) {
            if (r == col) continue;
            double f = N[r][col] / N[col][col];
            for (int j = col; j <= m; ++j) N[r][j] -= f * N[col][j];
        }
    }
    std::vector<double> coef(m, 0.0);
    for (int i = 0; i < m; ++i)
        coef[i] = std::abs(N[i][i]) > 1e-300 ? N[i][m] / N[i][i] : 0.0;
    return coef;
}

Complex eval_real_poly(const std::vector<double>& coef, Complex z) {
    Complex acc = 0.0, p = 1.0;
    for (double c : coef) {
        acc += c * p;
        p *= z;
    }
    return acc;
}

Complex eval_M(const BMProblem& prob, Complex z, const std::vector<double>& xs) {
    auto u = weyl::weyl_solution_plus(prob.pot, xs.back() * 2.0, z, prob.scheme, xs.front());
    return weyl::singular_M(prob.frame, u, xs);
}

} // namespace

BMScan bm_decay_scan(const BMProblem& A, const BMProblem& B, Complex ray,
                     const std::vector<double>& radii, int subtract_poly_degree,
                     const std::vector<double>& wronskian_points) {
    if (ray.imag() == 0.0) throw DomainError("bm_decay_scan: ray must be nonreal");
    if (radii.size() < 4) throw SpecError("bm_decay_scan: need >= 4 radii");
    Complex dir = ray / std::abs(ray);

    std::vector<double> xs = wronskian_points;
    if (xs.empty()) xs = {0.3, 0.4, 0.5};

    BMScan scan;
    scan.radii = radii;
    std::vector<Complex> zs;
    double m_scale = 0.0;
    for (double r : radii) {
        Complex z = r * dir;
        zs.push_back(z);
        Complex dM = eval_M(B, z, xs) - eval_M(A, z, xs);
        scan.diffs.push_back(dM);
        m_scale = std::max(m_scale, std::abs(eval_M(A, z, xs)));
    }

    std::vector<Complex> d = scan.diffs;
    if (subtract_poly_degree >= 0) {
        auto coef = fit_real_poly(zs, d, std::min(subtract_poly_degree, 2));
        for (size_t k = 0; k < d.size(); ++k) d[k] -= eval_real_poly(coef, zs[k]);
        scan.poly_degree_subtracted = std::min(subtract_poly_degree, 2);
    }

    // below solver noise: identical problems
    double dmax = 0.0;
    for (const auto& v : d) dmax = std::max(dmax, std::abs(v));
    if (dmax < 1e-8 * (1.0 + m_scale)) {
        scan.verdict = Verdict::indeterminate;
        scan.fitted_rate = 0.0;
        return scan;
    }

    // pairwise log-slopes, then linear extrapolation in 1/y to remove
    // algebraic-prefactor bias
    std::vector<double> inv_y, slope;
    for (size_t k = 0; k + 1 < radii.size(); ++k) {
        double d0 = std::abs(d[k]), d1 = std::abs(d[k + 1]);
        if (d0 <= 0.0 || d1 <= 0.0) continue;
        double y0 = radii[k], y1 = radii[k + 1];
        slope.push_back(-(std::log(d1) - std::log(d0)) / (y1 - y0));
        inv_y.push_back(2.0 / (y0 + y1));
    }
    if (slope.size() < 2) {
        scan.verdict = Verdict::indeterminate;
        return scan;
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < slope.size(); ++i) {
        sx += inv_y[i];
        sy += slope[i];
        sxx += inv_y[i] * inv_y[i];
        sxy += inv_y[i] * slope[i];
    }
    double n = static_cast<double>(slope.size());
    double den = n * sxx - sx * sx;
    double beta = (n * sxy - sx * sy) / den;
    double rate = (sy - beta * sx) / n;
    scan.fitted_rate = rate;
    double res = 0.0;
    for (size_t i = 0; i < slope.size(); ++i) {
        double p = rate + beta * inv_y[i];
        res += (slope[i] - p) * (slope[i] - p);
    }
    scan.fit_residual = std::sqrt(res / n);
    scan.verdict = Verdict::conclusive;
    return scan;
}

SusyResidual susy_factorization_residual(const SusyProblem& sp, Complex z,
                                         const SolutionTrajectory& u,
                                         const std::vector<double>& xs) {
    if (xs.empty()) throw SpecError("susy_factorization_residual: need sample points");
    const double span = u.x_max() - u.x_min();
    const double h = 1e-4 * span;
    const Complex zeta = z * z - sp.m * sp.m;

    auto w_of = [&](double x) {
        Spinor ux = u.eval(x), dux = u.deriv(x);
        return dux.f1 + sp.q_am(x) * ux.f1; // a* u1 = u1' + q u1
    };

    SusyResidual out;
    bool check_second = std::abs(z + Complex(sp.m, 0.0)) > 1e-12;
    for (double x : xs) {
        double hh = std::min({h, 0.4 * (x - u.x_min()), 0.4 * (u.x_max() - x)});
        if (hh <= 0.0) hh = h;
        Complex wp2 = w_of(x + 2 * hh), wp1 = w_of(x + hh), wm1 = w_of(x - hh),
                wm2 = w_of(x - 2 * hh);
        Complex dw = (wm2 - wp2 + 8.0 * (wp1 - wm1)) / (12.0 * hh);
        Complex aw = -dw + sp.q_am(x) * w_of(x); // a_q w
        Spinor ux = u.eval(x);
        out.factorization = std::max(out.factorization, std::abs(aw - zeta * ux.f1));
        if (check_second) {
            Complex rhs = w_of(x) / (z + sp.m);
            out.component = std::max(out.component, std::abs(ux.f2 - rhs));
        }
    }
    return out;
}

double susy_weyl_relation_check(double kappa, double m, Complex z) {
    if (std::abs(z + Complex(m, 0.0)) < 1e-12)
        throw DomainError("susy_weyl_relation_check: z = -m");
    radial::RadialParams p(kappa, m);
    Complex zeta = z * z - m * m;
    // route 1: Wronskian definition through the decaying Hankel solution
    double x = 0.7;
    Spinor uplus = radial::weyl_solution_kappa(p, z, x);
    Spinor th = radial::Theta_kappa(p, z, x);
    Spinor ph = radial::Phi_kappa(p, z, x);
    Complex M_direct = -wronskian(th, uplus) / wronskian(ph, uplus);
    // route 2: Schrodinger-side closed form
    Complex m_q = radial::m_l(kappa, zeta);
    return std::abs(M_direct * (z + m) - m_q);
}

HLReport hochstadt_lieberman_experiment(const DiracPotential& potA, const DiracPotential& potB,
                                        double window_lo, double window_hi, int grid) {
    if (!potA.interval.a_finite() || !potA.interval.b_finite())
        throw SpecError("hochstadt_lieberman_experiment: interval must be bounded");
    double a = potA.interval.a, b = potA.interval.b;
    // both problems must agree on the left half (checked pointwise)
    for (double t = 0.05; t < 0.49; t += 0.06) {
        double x = a + (b - a) * t;
        SymMat2 qa = evaluate_Q(potA, x), qb = evaluate_Q(potB, x);
        if (std::abs(qa.a11 - qb.a11) + std::abs(qa.a12 - qb.a12) +
                std::abs(qa.a22 - qb.a22) >
            1e-10)
            throw SpecError("hochstadt_lieberman_experiment: potentials differ on the left half");
    }

    const double eps = 1e-6 * (b - a);
    auto family = [eps](const DiracPotential& pot, bool from_left) -> SolutionFamily {
        double a0 = pot.interval.a, b0 = pot.interval.b;
        return [pot, a0, b0, eps, from_left](Complex z, double x) -> Spinor {
            double start = from_left ? a0 + eps : b0 - eps;
            if (std::abs(x - start) < 1e-12) return {{0.0, 0.0}, {1.0, 0.0}};
            auto traj = integrate(pot, z, start, {{0.0, 0.0}, {1.0, 0.0}}, x);
            return traj.eval(x);
        };
    };

    double x_eval = a + 0.25 * (b - a);
    HLReport rep;
    auto scanA = discrete::eigenvalues(family(potA, true), family(potA, false), x_eval, window_lo,
                                       window_hi, grid);
    auto scanB = discrete::eigenvalues(family(potB, true), family(potB, false), x_eval, window_lo,
                                       window_hi, grid);
    rep.spectrum_a = scanA.values;
    rep.spectrum_b = scanB.values;
    if (scanA.suspected_missed || scanB.suspected_missed ||
        scanA.values.size() != scanB.values.size() || scanA.values.empty()) {
        rep.verdict = Verdict::indeterminate;
        return rep;
    }
    rep.compared = static_cast<int>(scanA.values.size());
    for (size_t i = 0; i < scanA.values.size(); ++i)
        rep.max_displacement =
            std::max(rep.max_displacement, std::abs(scanA.values[i] - scanB.values[i]));
    rep.verdict = Verdict::conclusive;
    return rep;
}

} // namespace dirac::uniq
