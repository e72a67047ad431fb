#include "dirac/discrete.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "dirac/quadrature.hpp"

namespace dirac::discrete {

DiracPotential reflected_potential(const DiracPotential& pot) {
    if (!pot.interval.a_finite() || !pot.interval.b_finite())
        throw SpecError("reflected_potential: interval must be bounded");
    double s = pot.interval.a + pot.interval.b;
    auto q_sc = pot.q_sc;
    auto q_el = pot.q_el;
    auto q_am = pot.q_am;
    double m = pot.m;
    return DiracPotential(
        pot.interval, 0.0,
        CoefficientFunction::custom([q_sc, m, s](double x) { return -(m + q_sc(s - x)); },
                                    q_sc.regularity()),
        CoefficientFunction::custom([q_el, s](double x) { return q_el(s - x); },
                                    q_el.regularity()),
        CoefficientFunction::custom([q_am, s](double x) { return q_am(s - x); },
                                    q_am.regularity()));
}

SolutionFamily reflect_family(SolutionFamily f, double a, double b) {
    double s = a + b;
    return [f, s](Complex z, double x) -> Spinor {
        Spinor v = f(z, s - x);
        return {v.f2, v.f1};
    };
}

namespace {

double real_wronskian(const SolutionFamily& phi_a, const SolutionFamily& pi_b, double x_eval,
                      double lambda) {
    Complex w = wronskian(phi_a({lambda, 0.0}, x_eval), pi_b({lambda, 0.0}, x_eval));
    return w.real();
}

std::vector<double> scan_roots(const std::function<double(double)>& W, double lo, double hi,
                               int grid, bool* double_root_suspect) {
    std::vector<double> roots;
    double prev_x = lo, prev_w = W(lo);
    double scale = std::abs(prev_w);
    std::vector<double> xs(grid), ws(grid);
    for (int i = 0; i < grid; ++i) {
        xs[i] = lo + (hi - lo) * (i + 1) / grid;
        ws[i] = W(xs[i]);
        scale = std::max(scale, std::abs(ws[i]));
    }
    for (int i = 0; i < grid; ++i) {
        double x = xs[i], w = ws[i];
        if (w == 0.0) {
            roots.push_back(x);
        } else if (prev_w != 0.0 && std::signbit(w) != std::signbit(prev_w)) {
            double aa = prev_x, bb = x, fa = prev_w;
            for (int it = 0; it < 200 && bb - aa > 1e-10; ++it) {
                double mid = 0.5 * (aa + bb);
                double fm = W(mid);
                if (fm == 0.0) {
                    aa = bb = mid;
                    break;
                }
                if (std::signbit(fm) == std::signbit(fa)) {
                    aa = mid;
                    fa = fm;
                } else {
                    bb = mid;
                }
            }
            roots.push_back(0.5 * (aa + bb));
        } else if (i > 0 && i + 1 < grid) {
            // local |W| dip with no sign change on either side: possible
            // double root (a simple root grazed by a grid point shows a dip
            // too, but carries a sign change next to it)
            bool no_flip = std::signbit(ws[i - 1]) == std::signbit(w) &&
                           std::signbit(w) == std::signbit(ws[i + 1]);
            if (no_flip && std::abs(w) < 1e-8 * scale && std::abs(w) < std::abs(ws[i - 1]) &&
                std::abs(w) < std::abs(ws[i + 1]))
                *double_root_suspect = true;
        }
        prev_x = x;
        prev_w = w;
    }
    return roots;
}

} // namespace

EigenScan eigenvalues(const SolutionFamily& phi_a, const SolutionFamily& pi_b, double x_eval,
                      double lo, double hi, int grid) {
    if (!(lo < hi)) throw SpecError("eigenvalues: empty window");
    if (grid < 8) grid = 8;
    auto W = [&](double l) { return real_wronskian(phi_a, pi_b, x_eval, l); };
    EigenScan out;
    bool dbl = false;
    std::vector<double> prev = scan_roots(W, lo, hi, grid, &dbl);
    int g = grid;
    for (int pass = 0; pass < 4; ++pass) {
        g *= 2;
        std::vector<double> next = scan_roots(W, lo, hi, g, &dbl);
        bool stable = next.size() == prev.size();
        prev = std::move(next);
        if (stable) {
            out.values = std::move(prev);
            out.grid_used = g;
            out.suspected_missed = dbl;
            return out;
        }
    }
    out.values = std::move(prev);
    out.grid_used = g;
    out.suspected_missed = true;
    return out;
}

double norming_constant(const SolutionFamily& phi, double lambda, double a, double b,
                        int panels_per_side) {
    auto f = [&](double x) {
        Spinor v = phi({lambda, 0.0}, x);
        return std::norm(v.f1) + std::norm(v.f2);
    };
    auto mesh1 = quad::graded_mesh_both(a, b, panels_per_side);
    // keep strictly inside the open interval
    mesh1.front() = a + 1e-12 * (b - a);
    mesh1.back() = b - 1e-12 * (b - a);
    double v1 = quad::composite_gl8(f, mesh1);
    auto mesh2 = quad::graded_mesh_both(a, b, 2 * panels_per_side);
    mesh2.front() = mesh1.front();
    mesh2.back() = mesh1.back();
    double v2 = quad::composite_gl8(f, mesh2);
    if (!(v2 > 0.0) || std::abs(v2 - v1) > 1e-6 * v2 + 1e-12)
        throw DomainError("norming_constant: quadrature unstable; lambda=" +
                          std::to_string(lambda) + " rejected as eigenvalue");
    return v2;
}

DiscreteSpectralMeasure build_discrete_measure(const SolutionFamily& phi,
                                               const std::vector<double>& eigenvalues, double a,
                                               double b, int panels_per_side) {
    DiscreteSpectralMeasure m;
    int idx = 0;
    for (double l : eigenvalues) {
        double g2 = norming_constant(phi, l, a, b, panels_per_side);
        m.atoms.push_back({l, g2, idx++});
    }
    return m;
}

std::vector<Complex> forward_transform(const SolutionFamily& phi,
                                       const DiscreteSpectralMeasure& measure,
                                       const GridFunction& f) {
    std::vector<Complex> out;
    out.reserve(measure.atoms.size());
    for (const auto& atom : measure.atoms) {
        double l = atom.lambda;
        out.push_back(f.pair_integral([&phi, l](double x) { return phi({l, 0.0}, x); }));
    }
    return out;
}

GridFunction inverse_transform(const SolutionFamily& phi, const DiscreteSpectralMeasure& measure,
                               const std::vector<Complex>& fhat,
                               const std::vector<double>& xgrid) {
    if (fhat.size() != measure.atoms.size())
        throw SpecError("inverse_transform: fhat size mismatch");
    GridFunction out;
    out.x = xgrid;
    out.v.assign(xgrid.size(), Spinor{});
    for (size_t n = 0; n < measure.atoms.size(); ++n) {
        Complex c = fhat[n] / measure.atoms[n].gamma_sq;
        double l = measure.atoms[n].lambda;
        for (size_t i = 0; i < xgrid.size(); ++i) out.v[i] += phi({l, 0.0}, xgrid[i]) * c;
    }
    return out;
}

namespace {

// row i of the Green's function on one smooth side of the kink y = x,
// sampled uniformly with odd count (Simpson-exact grid)
GridFunction green_row_piece(const SingularFrame& frame, Complex M, Complex z, double x, int i,
                             double lo, double hi, int n) {
    if (n % 2 == 0) ++n;
    if (n < 5) n = 5;
    GridFunction g;
    g.x.reserve(n);
    g.v.reserve(n);
    for (int j = 0; j < n; ++j) {
        double y = lo + (hi - lo) * j / (n - 1);
        Mat2c G = weyl::greens_function(frame, M, z, x, y);
        g.x.push_back(y);
        g.v.push_back(i == 0 ? Spinor{G.a11, G.a12} : Spinor{G.a21, G.a22});
    }
    return g;
}

} // namespace

double green_transform_check(const SingularFrame& frame,
                             const std::function<Complex(Complex)>& M_eval, Complex z, double x,
                             int k, const DiscreteSpectralMeasure& measure, double a, double b,
                             int n_grid) {
    if (k != 0 && k != 1) throw SpecError("green_transform_check: k must be 0 or 1");
    if (z.imag() == 0.0) throw DomainError("green_transform_check: z must be nonreal");

    double eps = 1e-9 * (b - a); // stay strictly inside the open interval
    double lo = a + eps, hi = b - eps;
    int n_left = std::max(9, static_cast<int>(n_grid * (x - lo) / (hi - lo)));
    int n_right = std::max(9, n_grid - n_left);

    double defect = 0.0;
    for (int i = 0; i < 2; ++i) {
        // the kink at y = x splits the row into two smooth Simpson pieces
        std::array<GridFunction, 2> rows;
        if (k == 0) {
            Complex M = M_eval(z);
            rows[0] = green_row_piece(frame, M, z, x, i, lo, x, n_left);
            rows[1] = green_row_piece(frame, M, z, x, i, x, hi, n_right);
        } else {
            const Complex ih(0.0, 1e-5);
            Complex Mp = M_eval(z + ih), Mm = M_eval(z - ih);
            for (int side = 0; side < 2; ++side) {
                double l0 = side == 0 ? lo : x, h1 = side == 0 ? x : hi;
                int n = side == 0 ? n_left : n_right;
                GridFunction rp = green_row_piece(frame, Mp, z + ih, x, i, l0, h1, n);
                GridFunction rm = green_row_piece(frame, Mm, z - ih, x, i, l0, h1, n);
                rows[side] = rp;
                for (size_t j = 0; j < rp.v.size(); ++j)
                    rows[side].v[j] = (rp.v[j] - rm.v[j]) / (2.0 * ih);
            }
        }
        for (const auto& atom : measure.atoms) {
            double l = atom.lambda;
            auto phi_of = [&](double y) { return frame.phi({l, 0.0}, y); };
            Complex got = rows[0].pair_integral(phi_of) + rows[1].pair_integral(phi_of);
            Spinor ph = frame.phi({l, 0.0}, x);
            Complex phi_i = i == 0 ? ph.f1 : ph.f2;
            Complex expect = k == 0 ? phi_i / (l - z) : phi_i / ((l - z) * (l - z));
            defect = std::max(defect, std::abs(got - expect));
        }
    }
    return defect;
}

WeylRepCheck discrete_weyl_representation_check(const std::function<Complex(Complex)>& M_eval,
                                                const DiscreteSpectralMeasure& measure,
                                                Complex z) {
    const auto& atoms = measure.atoms;
    if (atoms.size() < 4) throw SpecError("discrete_weyl_representation_check: too few atoms");
    Complex sum = 0.0;
    for (const auto& a : atoms) {
        double l = a.lambda;
        sum += (1.0 / (l - z) - l / (1.0 + l * l)) / a.gamma_sq;
    }
    // constant-density tail model fitted from the outer quarter on each side
    auto side_tail = [&](bool right) -> Complex {
        std::vector<std::pair<double, double>> side; // (|lambda|, weight), sorted
        for (const auto& a : atoms)
            if ((a.lambda > 0) == right && std::abs(a.lambda) > 0.5)
                side.push_back({std::abs(a.lambda), 1.0 / a.gamma_sq});
        if (side.size() < 4) return 0.0;
        std::sort(side.begin(), side.end());
        size_t q = std::max<size_t>(3, side.size() / 4);
        double wsum = 0.0;
        double l_in = side[side.size() - q].first;
        double l_out = side.back().first;
        if (l_out - l_in < 1e-12) return 0.0;
        for (size_t j = side.size() - q; j < side.size(); ++j) wsum += side[j].second;
        // q atoms cover a span of q/(q-1) mean spacings beyond (l_out - l_in)
        double dens = wsum * (q - 1.0) / (q * (l_out - l_in));
        double spacing = (l_out - l_in) / (q - 1.0);
        double Lambda = l_out + 0.5 * spacing;
        if (right) return dens * std::log(std::sqrt(1.0 + Lambda * Lambda) / (Lambda - z));
        return dens * std::log((Lambda + z) / std::sqrt(1.0 + Lambda * Lambda));
    };
    Complex tail = side_tail(true) + side_tail(false);
    WeylRepCheck out;
    out.tail_correction = std::abs(tail);
    out.defect = std::abs(M_eval(z) - M_eval({0.0, 1.0}).real() - sum - tail);
    return out;
}

double convergence_exponent_estimate(std::vector<double> eigenvalues) {
    if (eigenvalues.size() < 20)
        throw SpecError("convergence_exponent_estimate: need >= 20 eigenvalues");
    for (double& l : eigenvalues) l = std::abs(l);
    std::sort(eigenvalues.begin(), eigenvalues.end());
    // counting function: N(|lambda_n|) = n+1; fit on the upper half
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (size_t i = eigenvalues.size() / 2; i < eigenvalues.size(); ++i) {
        if (eigenvalues[i] <= 0.0) continue;
        double X = std::log(eigenvalues[i]);
        double Y = std::log(static_cast<double>(i + 1));
        sx += X;
        sy += Y;
        sxx += X * X;
        sxy += X * Y;
        ++n;
    }
    double den = n * sxx - sx * sx;
    if (n < 10 || std::abs(den) < 1e-12)
        throw DomainError("convergence_exponent_estimate: eigenvalues do not grow");
    return (n * sxy - sx * sy) / den;
}

} // namespace dirac::discrete
