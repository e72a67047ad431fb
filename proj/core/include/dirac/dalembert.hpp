#ifndef DIRAC_DALEMBERT_HPP
#define DIRAC_DALEMBERT_HPP

#include "dirac/ode.hpp"

namespace dirac {

enum class DalembertVariant { first, second };

/// Second solution from a known one by reduction of order:
///   v(x)      = u(x) I(x) - (0, 1/u1(x)),  I(x) = int_{x_ref}^x (Q22 - z)/u1^2
///   v~(x)     = -u(x) I~(x) - (1/u2(x), 0), I~(x) = int_{x_ref}^x (Q11 - z)/u2^2
/// Both satisfy W(v, u) = 1. The pivot component must not vanish on the
/// working subinterval (SingularReductionError otherwise).
SolutionTrajectory dalembert_second(const DiracPotential& pot, Complex z,
                                    const SolutionTrajectory& u, double x_ref,
                                    DalembertVariant variant = DalembertVariant::first);

} // namespace dirac

#endif
