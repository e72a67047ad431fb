#ifndef DIRAC_DISCRETE_HPP
#define DIRAC_DISCRETE_HPP

#include <functional>
#include <vector>

#include "dirac/measures.hpp"
#include "dirac/weyl.hpp"

namespace dirac::discrete {

using dirac::Complex;
using dirac::Spinor;
using weyl::SingularFrame;
using weyl::SolutionFamily;

/// sigma1 Q(a+b-x) sigma1: the reflected potential (mass channel flips sign
/// and is folded into q_sc). Both endpoints must be finite.
DiracPotential reflected_potential(const DiracPotential& pot);

/// Pi(z,x) = sigma1 f(z, a+b-x): maps a near-a family of the reflected
/// problem to a near-b family of the original one. A Dirichlet-generating
/// family maps to a Neumann-generating one and vice versa.
SolutionFamily reflect_family(SolutionFamily f, double a, double b);

struct EigenScan {
    std::vector<double> values;
    bool suspected_missed = false; // double roots or unstable count
    int grid_used = 0;
};

/// Zeros of lambda -> W(Phi(lambda), Pi(lambda)) on [lo, hi]: sign-change
/// bracketing + bisection to 1e-10, with grid doubling until the count is
/// stable (guards against missed close pairs).
EigenScan eigenvalues(const SolutionFamily& phi_a, const SolutionFamily& pi_b, double x_eval,
                      double lo, double hi, int grid);

/// gamma_n^2 = int_a^b |Phi(lambda_n, x)|^2 dx on an endpoint-graded mesh;
/// a quadrature unstable under refinement rejects lambda_n.
double norming_constant(const SolutionFamily& phi, double lambda, double a, double b,
                        int panels_per_side = 24);

DiscreteSpectralMeasure build_discrete_measure(const SolutionFamily& phi,
                                               const std::vector<double>& eigenvalues, double a,
                                               double b, int panels_per_side = 24);

/// fhat(lambda_n) = int (Phi_1 f_1 + Phi_2 f_2) dx over the atoms.
std::vector<Complex> forward_transform(const SolutionFamily& phi,
                                       const DiscreteSpectralMeasure& measure,
                                       const GridFunction& f);

/// f(x) = sum_n Phi(lambda_n, x) fhat_n gamma_n^{-2} on the given x-grid.
GridFunction inverse_transform(const SolutionFamily& phi, const DiscreteSpectralMeasure& measure,
                               const std::vector<Complex>& fhat, const std::vector<double>& xgrid);

/// max over atoms and i of |(U d_z^k G_i(z,x,.))(lambda_n)
///                          - k! Phi_i(lambda_n,x)/(lambda_n-z)^{k+1}|;
/// k in {0,1}; the z-derivative of G by a complex-step central difference
/// (M re-evaluated at the shifted points).
double green_transform_check(const SingularFrame& frame,
                             const std::function<Complex(Complex)>& M_eval, Complex z, double x,
                             int k, const DiscreteSpectralMeasure& measure, double a, double b,
                             int n_grid = 4001);

struct WeylRepCheck {
    double defect = 0.0;
    double tail_correction = 0.0;
};

/// |M(z) - Re M(i) - sum_n (1/(l_n - z) - l_n/(1+l_n^2)) g_n^{-2} - tail|
/// with an analytic constant-density tail correction fitted from the outer
/// atoms on each side.
WeylRepCheck discrete_weyl_representation_check(const std::function<Complex(Complex)>& M_eval,
                                                const DiscreteSpectralMeasure& measure, Complex z);

/// Least-squares exponent of the eigenvalue counting function N(r) ~ r^s;
/// needs >= 20 eigenvalues with genuine growth.
double convergence_exponent_estimate(std::vector<double> eigenvalues);

} // namespace dirac::discrete

#endif
