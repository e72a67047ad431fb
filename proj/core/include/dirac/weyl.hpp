#ifndef DIRAC_WEYL_HPP
#define DIRAC_WEYL_HPP

#include <functional>
#include <span>
#include <vector>

#include "dirac/measures.hpp"
#include "dirac/ode.hpp"
#include "dirac/radial.hpp"

namespace dirac::weyl {

using dirac::Complex;
using dirac::Spinor;

/// Wronskian-limit ladder did not settle: the endpoint looks limit point.
/// A classification, not a code failure.
struct LimitPointDiagnosis : Error {
    using Error::Error;
};

enum class BoundaryCondition { dirichlet, neumann }; // f1 = 0 / f2 = 0

/// Interior truncation points marching toward an endpoint, with iterated
/// Aitken extrapolation of the resulting sequences.
struct TruncationScheme {
    std::vector<double> points;
    BoundaryCondition bc = BoundaryCondition::dirichlet;

    /// linearly spaced ladder (exponential convergence, e.g. x -> infinity)
    static TruncationScheme toward(double first, double last, int count);
    /// geometric approach x_k = endpoint + (first-endpoint) r^k down to last;
    /// power-law-converging Wronskian ladders need this for Aitken to work
    static TruncationScheme geometric_toward(double endpoint, double first, double last,
                                             int count);
};

/// Weyl m-functions of the Dirichlet restrictions at base point c,
/// regularized by the truncation ladder. Requires Im z != 0; the Herglotz
/// sign Im m * Im z > 0 is enforced as a sanity check.
Complex m_plus(const DiracPotential& pot, double c, Complex z, const TruncationScheme& scheme,
               const ODETolerance& tol = {});
Complex m_minus(const DiracPotential& pot, double c, Complex z, const TruncationScheme& scheme,
                const ODETolerance& tol = {});

/// u_+(z,.) = c(z,.) + m_+(z) s(z,.) as a trajectory on [x_lo, max point].
SolutionTrajectory weyl_solution_plus(const DiracPotential& pot, double c, Complex z,
                                      const TruncationScheme& scheme, double x_lo,
                                      const ODETolerance& tol = {});

using SolutionFamily = std::function<Spinor(Complex, double)>;

enum class FrameProvenance { radial_closed_form, perturbed_neumann, limit_circle, custom };

/// Real entire frame (Theta, Phi) with W(Theta, Phi) = 1, Phi in the domain
/// of H near a.
struct SingularFrame {
    SolutionFamily theta;
    SolutionFamily phi;
    FrameProvenance provenance = FrameProvenance::custom;
};

SingularFrame radial_frame(const radial::RadialParams& p);

/// Gauge freedom of the frame: Phi -> e^{g} Phi, Theta -> e^{-g} Theta - f Phi
/// with g, f entire (Remark-level rescaling; M maps to e^{-2g} M + e^{-g} f).
SingularFrame frame_rescale(const SingularFrame& frame, std::function<Complex(Complex)> g,
                            std::function<Complex(Complex)> f);

/// M(z) = -W(Theta(z), u_+(z)) / W(Phi(z), u_+(z)), checked for independence
/// of the Wronskian evaluation point (spread <= 1e-8). A vanishing
/// denominator raises PoleSignal (z numerically on the discrete spectrum).
Complex singular_M(const SingularFrame& frame, const SolutionTrajectory& u_plus,
                   std::span<const double> eval_points);

/// Psi = Theta + M Phi.
Spinor weyl_psi(const SingularFrame& frame, Complex M, Complex z, double x);

/// G(z,x,y) = Psi(z,x) (x) Phi(z,y) for y <= x, Phi(z,x) (x) Psi(z,y) else.
Mat2c greens_function(const SingularFrame& frame, Complex M, Complex z, double x, double y);

/// (H-z)^{-1} f by quadrature of the Green's kernel over f's grid.
GridFunction resolvent_apply(const SingularFrame& frame, Complex M, Complex z,
                             const GridFunction& f);

struct SpectralDensityEstimate {
    std::vector<double> lambda;
    std::vector<double> density; // extrapolated Im M(l+i0)/pi
    std::vector<double> density_err;
    double window_mass = 0.0;
    double mass_err = 0.0;
};

/// Stieltjes-Livsic inversion over [l0, l1]: (1/pi) int Im M(l+ie) dl per
/// epsilon, polynomial-extrapolated to e -> 0.
SpectralDensityEstimate stieltjes_invert(const std::function<Complex(Complex)>& M_eval, double l0,
                                         double l1, std::span<const double> eps_ladder,
                                         int n_samples = 33);

/// Real entire frame at a limit-circle endpoint from a real fundamental pair
/// (Phi0, Theta0) at real lambda0:
///   Phi(z,x)   = W_a(c(z),Phi0) s(z,x) - W_a(s(z),Phi0) c(z,x),  etc.
/// The W_a limits are extrapolated along scheme.points; a non-settling
/// ladder raises LimitPointDiagnosis.
SingularFrame limit_circle_frame(const DiracPotential& pot, const SolutionTrajectory& Phi0,
                                 const SolutionTrajectory& Theta0, const TruncationScheme& scheme,
                                 const ODETolerance& tol = {});

/// |Im M(z) - Im z * int_mesh |Psi(z,x)|^2 dx| / |Im M(z)| (composite GL8
/// over the mesh panels). z must be nonreal.
double herglotz_residual(const SingularFrame& frame, const std::function<Complex(Complex)>& M_eval,
                         Complex z, const std::vector<double>& mesh);

struct MomentTest {
    enum class Verdict { pass, fail, indeterminate };
    Verdict verdict = Verdict::indeterminate;
    double tail_exponent = 0.0;
    int smallest_k = -1;
};

/// Decides finiteness of int (1+l^2)^{-k-1} drho by tail-exponent fitting;
/// indeterminate when the fitted exponent sits within 0.1 of criticality.
MomentTest nevanlinna_moment_test(const SpectralMeasure& measure, int k);

/// Iterated Aitken extrapolation of a (geometric- or power-law-converging)
/// sequence; err_est gets the last correction magnitude.
Complex aitken_limit(std::vector<Complex> s, double* err_est = nullptr);

} // namespace dirac::weyl

#endif
