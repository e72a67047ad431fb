#ifndef DIRAC_UNIQUENESS_HPP
#define DIRAC_UNIQUENESS_HPP

#include <vector>

#include "dirac/weyl.hpp"

namespace dirac::uniq {

using dirac::Complex;
using dirac::Spinor;
using weyl::SingularFrame;
using weyl::SolutionFamily;
using weyl::TruncationScheme;

enum class Verdict { conclusive, indeterminate };

/// One side of a Borg-Marchenko comparison: a potential with a singular
/// frame normalized near a. Both sides of a scan must use frames built from
/// the same near-a closed form (W_a(Phi, Phi~) = 0 by construction).
struct BMProblem {
    DiracPotential pot;
    SingularFrame frame;
    TruncationScheme scheme; // ladder toward b for u_+
};

struct BMScan {
    std::vector<double> radii;
    std::vector<Complex> diffs; // M_B - M_A along the ray
    double fitted_rate = 0.0;   // decay exponent: |diff| ~ e^{-rate y}
    double fit_residual = 0.0;
    int poly_degree_subtracted = -1;
    Verdict verdict = Verdict::indeterminate;
};

/// Fits the exponential decay rate of |M_B - M_A| along the (nonreal) ray
/// through pairwise log-slopes extrapolated in 1/y (algebraic prefactors
/// would otherwise bias a plain line fit). Optionally subtracts a fitted
/// real-coefficient polynomial of degree <= subtract_poly_degree first
/// (the entire-function freedom of the frames). Expected rate: 2c for
/// potentials agreeing on (0, c).
BMScan bm_decay_scan(const BMProblem& A, const BMProblem& B, Complex ray,
                     const std::vector<double>& radii, int subtract_poly_degree = -1,
                     const std::vector<double>& wronskian_points = {});

/// Supersymmetric Dirac problem: q_el = q_sc = 0.
struct SusyProblem {
    CoefficientFunction q_am;
    double m = 0.0;
};

struct SusyResidual {
    double factorization = 0.0; // max |a a* u1 - (z^2-m^2) u1|
    double component = 0.0;     // max |u2 - a* u1 / (z+m)|
};

/// Checks the factorization identities on a trajectory solving tau u = z u;
/// the outer a_q derivative is formed by 4th-order central differences on
/// the trajectory with step h = 1e-4 * span.
SusyResidual susy_factorization_residual(const SusyProblem& sp, Complex z,
                                         const SolutionTrajectory& u,
                                         const std::vector<double>& xs);

/// |M(z)(z+m) - m_kappa(z^2-m^2)| with M evaluated through the Wronskian
/// route (decaying Hankel solution) and m_kappa through the closed form:
/// two independent evaluation paths of the supersymmetry relation.
double susy_weyl_relation_check(double kappa, double m, Complex z);

struct HLReport {
    std::vector<double> spectrum_a;
    std::vector<double> spectrum_b;
    double max_displacement = 0.0;
    int compared = 0;
    Verdict verdict = Verdict::indeterminate;
};

/// Forward Hochstadt-Lieberman experiment on (0,1): both potentials must
/// agree on the left half; reports the eigenvalue displacement caused by the
/// right-half perturbation (zero displacement iff the perturbation vanishes,
/// by the uniqueness theorem).
HLReport hochstadt_lieberman_experiment(const DiracPotential& potA, const DiracPotential& potB,
                                        double window_lo, double window_hi, int grid = 128);

} // namespace dirac::uniq

#endif
