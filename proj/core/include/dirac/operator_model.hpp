#ifndef DIRAC_OPERATOR_MODEL_HPP
#define DIRAC_OPERATOR_MODEL_HPP

#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <memory>
#include <string>
#include <vector>

#include "dirac/errors.hpp"

namespace dirac {

using Complex = std::complex<double>;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Value of a C^2-valued function at a point.
struct Spinor {
    Complex f1{0.0, 0.0};
    Complex f2{0.0, 0.0};

    Spinor() = default;
    Spinor(Complex a, Complex b) : f1(a), f2(b) {}

    Spinor operator+(const Spinor& o) const { return {f1 + o.f1, f2 + o.f2}; }
    Spinor operator-(const Spinor& o) const { return {f1 - o.f1, f2 - o.f2}; }
    Spinor operator*(Complex c) const { return {f1 * c, f2 * c}; }
    Spinor operator/(Complex c) const { return {f1 / c, f2 / c}; }
    Spinor& operator+=(const Spinor& o) {
        f1 += o.f1;
        f2 += o.f2;
        return *this;
    }
    double norm() const { return std::sqrt(std::norm(f1) + std::norm(f2)); }
    Spinor conj() const { return {std::conj(f1), std::conj(f2)}; }
};

inline Spinor operator*(Complex c, const Spinor& s) { return s * c; }

/// W_x(f,g) = f1 g2 - f2 g1.
inline Complex wronskian(const Spinor& f, const Spinor& g) { return f.f1 * g.f2 - f.f2 * g.f1; }

/// Real symmetric 2x2 matrix (potential values).
struct SymMat2 {
    double a11 = 0.0, a12 = 0.0, a22 = 0.0;

    SymMat2 operator+(const SymMat2& o) const { return {a11 + o.a11, a12 + o.a12, a22 + o.a22}; }
    SymMat2 operator*(double c) const { return {a11 * c, a12 * c, a22 * c}; }
    Spinor apply(const Spinor& u) const { return {a11 * u.f1 + a12 * u.f2, a12 * u.f1 + a22 * u.f2}; }
    /// Spectral (euclidean operator) norm.
    double op_norm() const {
        double h = 0.5 * (a11 + a22), d = 0.5 * (a11 - a22);
        double r = std::sqrt(d * d + a12 * a12);
        return std::max(std::abs(h + r), std::abs(h - r));
    }
};

/// Complex 2x2 matrix (Green's function values, kernels).
struct Mat2c {
    Complex a11, a12, a21, a22;
    Spinor apply(const Spinor& u) const { return {a11 * u.f1 + a12 * u.f2, a21 * u.f1 + a22 * u.f2}; }
    Mat2c transpose() const { return {a11, a21, a12, a22}; }
    double norm() const {
        return std::sqrt(std::norm(a11) + std::norm(a12) + std::norm(a21) + std::norm(a22));
    }
};

namespace pauli {
inline const Mat2c sigma1{{0, 0}, {1, 0}, {1, 0}, {0, 0}};
inline const Mat2c sigma2{{0, 0}, {0, -1}, {0, 1}, {0, 0}};
inline const Mat2c sigma3{{1, 0}, {0, 0}, {0, 0}, {-1, 0}};
} // namespace pauli

/// Open interval (a,b), endpoints possibly infinite.
struct Interval {
    double a = -kInf;
    double b = kInf;

    Interval() = default;
    Interval(double a_, double b_) : a(a_), b(b_) {
        if (!(a < b)) throw SpecError("Interval: requires a < b");
    }
    bool a_finite() const { return std::isfinite(a); }
    bool b_finite() const { return std::isfinite(b); }
    bool contains(double x) const { return x > a && x < b; }
};

enum class Regularity { l1loc, l1loc_log, smooth };

/// Scalar coefficient of the potential. Carries its structural description
/// so potentials can round-trip through JSON.
class CoefficientFunction {
  public:
    enum class Kind { zero, constant, expr, table, custom };

    CoefficientFunction() : kind_(Kind::zero) {}

    static CoefficientFunction zero() { return CoefficientFunction(); }
    static CoefficientFunction constant(double v);
    static CoefficientFunction expression(const std::string& text);
    /// Tabulated samples with linear interpolation; evaluation outside
    /// [x.front(), x.back()] is a DomainError (data must bracket the
    /// working subinterval).
    static CoefficientFunction table(std::vector<double> x, std::vector<double> v);
    static CoefficientFunction custom(std::function<double(double)> f,
                                      Regularity reg = Regularity::smooth);

    double operator()(double x) const;

    Kind kind() const { return kind_; }
    Regularity regularity() const { return regularity_; }
    void set_regularity(Regularity r) { regularity_ = r; }
    bool is_zero() const { return kind_ == Kind::zero; }

    double const_value() const { return const_value_; }
    const std::string& expr_text() const { return expr_text_; }
    const std::vector<double>& table_x() const { return table_x_; }
    const std::vector<double>& table_v() const { return table_v_; }

  private:
    Kind kind_;
    Regularity regularity_ = Regularity::smooth;
    double const_value_ = 0.0;
    std::string expr_text_;
    std::shared_ptr<const void> expr_prog_; // compiled expression, opaque
    std::vector<double> table_x_, table_v_;
    std::function<double(double)> custom_;
};

/// Potential data of the Dirac expression tau = (1/i) sigma2 d/dx + Q.
struct DiracPotential {
    Interval interval;
    double m = 0.0;
    CoefficientFunction q_sc, q_el, q_am;

    DiracPotential() = default;
    DiracPotential(Interval iv, double mass, CoefficientFunction sc, CoefficientFunction el,
                   CoefficientFunction am)
        : interval(iv), m(mass), q_sc(std::move(sc)), q_el(std::move(el)), q_am(std::move(am)) {
        if (m < 0) throw SpecError("DiracPotential: mass must be nonnegative");
    }

    static DiracPotential free_potential(Interval iv, double mass = 0.0) {
        return DiracPotential(iv, mass, {}, {}, {});
    }
};

/// Q(x) = q_el 1 + q_am sigma1 + (m+q_sc) sigma3.
SymMat2 evaluate_Q(const DiracPotential& pot, double x);

/// Rotates away q_el; the returned potential has q_el = 0 and the mass
/// folded into q_sc. phi(x) = int_{x_ref}^x q_el is evaluated by adaptive
/// Gauss-Kronrod quadrature (abs tol 1e-10) on every call.
DiracPotential gauge_eliminate_electrostatic(const DiracPotential& pot, double x_ref);

/// Phase x -> exp(-i int_{x_ref}^x q_mg); conjugating tau-tilde by it removes
/// a magnetic moment term.
std::function<Complex(double)> gauge_eliminate_magnetic(const CoefficientFunction& q_mg,
                                                        double x_ref);

} // namespace dirac

#endif
