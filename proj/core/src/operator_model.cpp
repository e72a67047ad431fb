#include "dirac/operator_model.hpp"

#include <algorithm>

#include "dirac/expr.hpp"
#include "dirac/quadrature.hpp"

namespace dirac {

CoefficientFunction CoefficientFunction::constant(double v) {
    CoefficientFunction c;
    c.kind_ = Kind::constant;
    c.const_value_ = v;
    return c;
}

CoefficientFunction CoefficientFunction::expression(const std::string& text) {
    CoefficientFunction c;
    c.kind_ = Kind::expr;
    c.expr_text_ = text;
    c.expr_prog_ = std::make_shared<expr::Program>(expr::compile(text));
    return c;
}

CoefficientFunction CoefficientFunction::table(std::vector<double> x, std::vector<double> v) {
    if (x.size() != v.size() || x.size() < 2)
        throw SpecError("table coefficient: need matching x/v arrays with >= 2 entries");
    if (!std::is_sorted(x.begin(), x.end()))
        throw SpecError("table coefficient: x values must be increasing");
    CoefficientFunction c;
    c.kind_ = Kind::table;
    c.regularity_ = Regularity::l1loc;
    c.table_x_ = std::move(x);
    c.table_v_ = std::move(v);
    return c;
}

CoefficientFunction CoefficientFunction::custom(std::function<double(double)> f, Regularity reg) {
    CoefficientFunction c;
    c.kind_ = Kind::custom;
    c.regularity_ = reg;
    c.custom_ = std::move(f);
    return c;
}

double CoefficientFunction::operator()(double x) const {
    switch (kind_) {
    case Kind::zero: return 0.0;
    case Kind::constant: return const_value_;
    case Kind::expr: return static_cast<const expr::Program*>(expr_prog_.get())->eval(x);
    case Kind::table: {
        if (x < table_x_.front() || x > table_x_.back())
            throw DomainError("table coefficient: x=" + std::to_string(x) +
                              " outside tabulated range");
        auto it = std::upper_bound(table_x_.begin(), table_x_.end(), x);
        size_t i = std::min<size_t>(table_x_.size() - 1,
                                    std::max<size_t>(1, it - table_x_.begin()));
        double t = (x - table_x_[i - 1]) / (table_x_[i] - table_x_[i - 1]);
        return (1.0 - t) * table_v_[i - 1] + t * table_v_[i];
    }
    case Kind::custom: return custom_(x);
    }
    return 0.0;
}

SymMat2 evaluate_Q(const DiracPotential& pot, double x) {
    if (!pot.interval.contains(x))
        throw DomainError("evaluate_Q: x=" + std::to_string(x) + " outside the open interval");
    double el = pot.q_el(x);
    double am = pot.q_am(x);
    double sc = pot.m + pot.q_sc(x);
    return {el + sc, am, el - sc};
}

namespace {

double integrate_coeff(const CoefficientFunction& f, double x_ref, double x) {
    if (f.is_zero()) return 0.0;
    if (f.kind() == CoefficientFunction::Kind::constant) return f.const_value() * (x - x_ref);
    if (x == x_ref) return 0.0;
    return quad::gk15_adaptive([&f](double r) { return f(r); }, x_ref, x, 1e-10);
}

} // namespace

DiracPotential gauge_eliminate_electrostatic(const DiracPotential& pot, double x_ref) {
    // anchoring at a (closed) endpoint is allowed: the phase integral only
    // samples interior points
    if (!(pot.interval.a <= x_ref && x_ref <= pot.interval.b))
        throw DomainError("gauge_eliminate_electrostatic: x_ref outside interval");

    // Capture by value: the returned potential owns everything it needs.
    auto q_el = pot.q_el;
    auto q_am = pot.q_am;
    auto q_sc = pot.q_sc;
    double m = pot.m;

    auto phi = [q_el, x_ref](double x) { return integrate_coeff(q_el, x_ref, x); };

    auto new_am = CoefficientFunction::custom(
        [=](double x) {
            double p = 2.0 * phi(x);
            return q_am(x) * std::cos(p) - (m + q_sc(x)) * std::sin(p);
        },
        pot.q_am.regularity());
    auto new_sc = CoefficientFunction::custom(
        [=](double x) {
            double p = 2.0 * phi(x);
            return (m + q_sc(x)) * std::cos(p) + q_am(x) * std::sin(p);
        },
        pot.q_sc.regularity());

    return DiracPotential(pot.interval, 0.0, new_sc, CoefficientFunction::zero(), new_am);
}

std::function<Complex(double)> gauge_eliminate_magnetic(const CoefficientFunction& q_mg,
                                                        double x_ref) {
    return [q_mg, x_ref](double x) {
        double ph = integrate_coeff(q_mg, x_ref, x);
        return std::exp(Complex(0.0, -ph));
    };
}

} // namespace dirac
