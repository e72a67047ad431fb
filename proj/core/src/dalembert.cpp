#include "dirac/dalembert.hpp"

#include "dirac/quadrature.hpp"

namespace dirac {

SolutionTrajectory dalembert_second(const DiracPotential& pot, Complex z,
                                    const SolutionTrajectory& u, double x_ref,
                                    DalembertVariant variant) {
    if (x_ref < u.x_min() || x_ref > u.x_max())
        throw DomainError("dalembert_second: x_ref outside the trajectory span");

    const bool first = variant == DalembertVariant::first;

    // everything captured by value: the returned trajectory owns its state
    auto pivot = [u, first](double x) {
        Spinor ux = u.eval(x);
        Complex p = first ? ux.f1 : ux.f2;
        if (std::abs(p) < 1e-13 * (1.0 + ux.norm()))
            throw SingularReductionError("dalembert_second: pivot component vanishes at x=" +
                                         std::to_string(x));
        return p;
    };

    auto I_of = [pot, z, pivot, x_ref, first](double x) -> Complex {
        if (x == x_ref) return {0.0, 0.0};
        auto integrand = [&](double r) {
            SymMat2 q = evaluate_Q(pot, r);
            Complex num = first ? (q.a22 - z) : (q.a11 - z);
            Complex p = pivot(r);
            return num / (p * p);
        };
        return quad::gk15_adaptive(integrand, x_ref, x, 1e-12);
    };

    // The second variant is the negative of the textbook reduction: as
    // printed, v~ has W(v~, u) = -1 under W(f,g) = f1 g2 - f2 g1; negating
    // restores the W(v, u) = 1 contract shared with the first variant.
    auto value = [u, pivot, I_of, first](double x) -> Spinor {
        Complex I = I_of(x);
        Spinor ux = u.eval(x);
        Complex p = pivot(x);
        if (first) return ux * I - Spinor{{0.0, 0.0}, 1.0 / p};
        return ux * I + Spinor{1.0 / p, {0.0, 0.0}};
    };

    auto deriv = [pot, z, u, pivot, I_of, first](double x) -> Spinor {
        Complex I = I_of(x);
        Spinor ux = u.eval(x), dux = u.deriv(x);
        SymMat2 q = evaluate_Q(pot, x);
        Complex p = pivot(x);
        Complex dp = first ? dux.f1 : dux.f2;
        Complex num = first ? (q.a22 - z) : (q.a11 - z);
        if (first) return dux * I + ux * (num / (p * p)) + Spinor{{0.0, 0.0}, dp / (p * p)};
        return dux * I + ux * (num / (p * p)) - Spinor{dp / (p * p), {0.0, 0.0}};
    };

    return SolutionTrajectory::from_closure(z, u.x_min(), u.x_max(), x_ref, value, deriv);
}

} // namespace dirac
