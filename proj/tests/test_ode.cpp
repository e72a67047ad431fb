#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "dirac/dalembert.hpp"
#include "dirac/ode.hpp"

using namespace dirac;

namespace {

DiracPotential free_line(double m = 0.0) {
    return DiracPotential::free_potential(Interval(-kInf, kInf), m);
}

// free solution with u(0) = (0,1): u = (sin zx, cos zx)
Spinor free_s(Complex z, double x) { return {std::sin(z * x), std::cos(z * x)}; }
// free solution with u(0) = (1,0): u = (cos zx, -sin zx)
Spinor free_c(Complex z, double x) { return {std::cos(z * x), -std::sin(z * x)}; }

} // namespace

TEST_CASE("integrate: free closed forms") {
    auto pot = free_line();
    double pi2 = std::acos(-1.0) / 2;

    auto t1 = integrate(pot, {1.0, 0.0}, 0.0, {{0, 0}, {1, 0}}, pi2);
    Spinor endv = t1.eval(pi2);
    CHECK(std::abs(endv.f1 - Complex(1, 0)) < 1e-9);
    CHECK(std::abs(endv.f2) < 1e-9);

    auto t2 = integrate(pot, {1.0, 0.0}, 0.0, {{1, 0}, {0, 0}}, pi2);
    endv = t2.eval(pi2);
    CHECK(std::abs(endv.f1) < 1e-9);
    CHECK(std::abs(endv.f2 - Complex(-1, 0)) < 1e-9);
}

TEST_CASE("integrate: free-case oracle across z and spans") {
    auto pot = free_line();
    for (Complex z : {Complex(3.0, 0.0), Complex(20.0, 0.0), Complex(50.0, 0.0),
                      Complex(12.0, 9.0), Complex(0.5, -2.0)}) {
        for (double x1 : {0.7, 2.5, 5.0, -3.0}) {
            auto tr = integrate(pot, z, 0.0, {{0, 0}, {1, 0}}, x1);
            for (double fr : {0.25, 0.7, 1.0}) {
                double x = x1 * fr;
                Spinor want = free_s(z, x);
                Spinor got = tr.eval(x);
                double scale = want.norm();
                CAPTURE(z.real());
                CAPTURE(z.imag());
                CAPTURE(x);
                CHECK((got - want).norm() / scale < 1e-8);
            }
        }
    }
}

TEST_CASE("integrate: Wronskian constancy on a smooth potential") {
    DiracPotential pot(Interval(-kInf, kInf), 0.4, CoefficientFunction::expression("0.3*cos(x)"),
                       CoefficientFunction::constant(0.1),
                       CoefficientFunction::expression("sin(2*x)"));
    for (Complex z : {Complex(1.5, 0.0), Complex(2.0, 1.0)}) {
        auto [c_sol, s_sol] = fundamental_system(pot, z, 0.5, 8.0);
        Complex w0 = wronskian_at(c_sol, s_sol, 0.5);
        CHECK(std::abs(w0 - Complex(1, 0)) < 1e-10);
        for (double x = 0.6; x < 8.0; x += 0.83) {
            Complex w = wronskian_at(c_sol, s_sol, x);
            CHECK(std::abs(w - w0) <= 1e-8 * (1.0 + std::abs(w0)));
        }
    }
}

TEST_CASE("integrate: linearity in the initial value") {
    DiracPotential pot(Interval(-kInf, kInf), 0.0, {}, {},
                       CoefficientFunction::expression("cos(x)"));
    Complex z(2.0, 0.5);
    Complex al(0.7, -0.3), be(1.2, 0.4);
    Spinor u0{{1, 0}, {0, 0}}, v0{{0, 0}, {1, 0}};
    auto tu = integrate(pot, z, 0.0, u0, 4.0);
    auto tv = integrate(pot, z, 0.0, v0, 4.0);
    auto tw = integrate(pot, z, 0.0, al * u0 + be * v0, 4.0);
    for (double x : {1.0, 2.5, 4.0}) {
        Spinor want = al * tu.eval(x) + be * tv.eval(x);
        Spinor got = tw.eval(x);
        CHECK((got - want).norm() / want.norm() < 1e-8);
    }
}

TEST_CASE("integrate: conjugation symmetry for real potentials") {
    DiracPotential pot(Interval(-kInf, kInf), 0.3, CoefficientFunction::expression("0.2*sin(x)"),
                       {}, CoefficientFunction::constant(0.4));
    Complex z(1.2, 0.8);
    auto tz = integrate(pot, z, 0.0, {{0, 0}, {1, 0}}, 3.0);
    auto tzc = integrate(pot, std::conj(z), 0.0, {{0, 0}, {1, 0}}, 3.0);
    for (double x : {0.5, 1.7, 3.0}) {
        Spinor a = tz.eval(x);
        Spinor b = tzc.eval(x).conj();
        CHECK((a - b).norm() < 1e-9 * (1.0 + a.norm()));
    }
}

TEST_CASE("residual: interpolant satisfies the ODE between nodes") {
    DiracPotential pot(Interval(-kInf, kInf), 0.0, {}, {},
                       CoefficientFunction::expression("sin(x)"));
    ODETolerance tol;
    for (Complex z : {Complex(1.0, 0.0), Complex(15.0, 0.0), Complex(4.0, 3.0)}) {
        auto tr = integrate(pot, z, 0.0, {{0, 0}, {1, 0}}, 5.0, tol);
        std::mt19937 rng(42);
        std::uniform_real_distribution<double> u(0.0, 5.0);
        for (int i = 0; i < 40; ++i) {
            double x = u(rng);
            double r = residual_scaled(pot, tr, x);
            double bound = 100.0 * (tol.rel * tr.eval_scaled(x).norm() + tol.abs);
            CAPTURE(z.real());
            CAPTURE(x);
            CHECK(r <= bound);
        }
    }
}

TEST_CASE("residual: exact closed form small, corrupted large (negative test)") {
    auto pot = free_line();
    Complex z(2.0, 0.0);
    auto good = SolutionTrajectory::from_closure(
        z, 0.0, 3.0, 0.0, [z](double x) { return free_s(z, x); },
        [z](double x) -> Spinor { return {2.0 * std::cos(2.0 * x), -2.0 * std::sin(2.0 * x)}; });
    CHECK(residual(pot, good, 1.3) < 1e-8);

    auto bad = SolutionTrajectory::from_closure(
        z, 0.0, 3.0, 0.0,
        [z](double x) -> Spinor {
            return {std::sin(2.0 * x) + 0.01 * std::sin(9.0 * x), std::cos(2.0 * x)};
        },
        [z](double x) -> Spinor {
            return {2.0 * std::cos(2.0 * x) + 0.09 * std::cos(9.0 * x), -2.0 * std::sin(2.0 * x)};
        });
    CHECK(residual(pot, bad, 1.3) > 1e-3);
}

TEST_CASE("integrate: rescaling engages for large Im z and stays finite") {
    auto pot = free_line();
    Complex z(0.0, 50.0);
    auto tr = integrate(pot, z, 0.0, {{0, 0}, {1, 0}}, 8.0);
    CHECK(tr.scale_rate() == doctest::Approx(50.0));
    // mantissa of sin(50 i x) e^{-50x} = i(1 - e^{-100x})/2
    for (double x : {2.0, 5.0, 8.0}) {
        Spinor v = tr.eval_scaled(x);
        CHECK(std::abs(v.f1 - Complex(0.0, 0.5)) < 1e-7);
        CHECK(std::abs(v.f2 - Complex(0.5, 0.0)) < 1e-7);
        CHECK(std::isfinite(v.norm()));
    }
    // scaled residual stays bounded
    CHECK(residual_scaled(pot, tr, 4.0) < 1e-6);
}

TEST_CASE("integrate: errors") {
    auto pot = free_line();
    CHECK_THROWS_AS(integrate(pot, {1, 0}, 0.0, {{0, 0}, {1, 0}}, 0.0), DomainError);
    DiracPotential bounded(Interval(0.0, 1.0), 0.0, {}, {}, {});
    CHECK_THROWS_AS(integrate(bounded, {1, 0}, 0.5, {{0, 0}, {1, 0}}, 2.0), DomainError);
    // non-integrable singularity inside the span -> step underflow
    DiracPotential sing(Interval(-kInf, kInf), 0.0, {}, {},
                        CoefficientFunction::custom(
                            [](double x) { return 1.0 / ((x - 1.0) * (x - 1.0)); },
                            Regularity::l1loc));
    CHECK_THROWS_AS(integrate(sing, {1, 0}, 0.0, {{0, 0}, {1, 0}}, 2.0), IntegrationError);
}

TEST_CASE("dalembert_second: free case reproduces the cotangent reduction") {
    auto pot = free_line();
    Complex z(1.3, 0.0);
    double x_ref = 0.9; // sin(z x) != 0 nearby
    auto u = SolutionTrajectory::from_closure(
        z, 0.5, 2.0, x_ref, [z](double x) { return free_s(z, x); },
        [z](double x) -> Spinor { return {z * std::cos(z * x), -z * std::sin(z * x)}; });
    auto v = dalembert_second(pot, z, u, x_ref, DalembertVariant::first);

    // v = (cos zx, -sin zx) + const * u ; W(v, u) = 1
    Complex cot_ref = std::cos(z * x_ref) / std::sin(z * x_ref);
    for (double x : {0.6, 1.1, 1.9}) {
        Spinor got = v.eval(x);
        Spinor want = free_c(z, x) - cot_ref * free_s(z, x);
        CHECK((got - want).norm() < 1e-9);
        Complex w = wronskian(got, u.eval(x));
        CHECK(std::abs(w - Complex(1, 0)) < 1e-9);
        CHECK(residual(pot, v, x) < 1e-7);
    }
}

TEST_CASE("dalembert_second: second variant and singular pivot") {
    auto pot = free_line();
    Complex z(1.0, 0.0);
    auto u = SolutionTrajectory::from_closure(
        z, -0.5, 0.5, 0.0, [z](double x) { return free_c(z, x); },
        [z](double x) -> Spinor { return {-std::sin(x), -std::cos(x)}; });
    // u2 = -sin zx vanishes at 0: second variant must fail there
    CHECK_THROWS_AS(dalembert_second(pot, z, u, 0.0, DalembertVariant::second).eval(0.3),
                    SingularReductionError);
    // first variant (pivot cos zx) works
    auto v = dalembert_second(pot, z, u, 0.0, DalembertVariant::first);
    for (double x : {-0.4, 0.2, 0.45}) {
        Complex w = wronskian(v.eval(x), u.eval(x));
        CHECK(std::abs(w - Complex(1, 0)) < 1e-9);
    }

    // variant second on u = (sin, cos) away from zeros of cos
    auto us = SolutionTrajectory::from_closure(
        z, 0.2, 1.2, 0.7, [z](double x) { return free_s(z, x); },
        [z](double x) -> Spinor { return {std::cos(x), -std::sin(x)}; });
    auto vs = dalembert_second(pot, z, us, 0.7, DalembertVariant::second);
    for (double x : {0.3, 0.8, 1.1})
        CHECK(std::abs(wronskian(vs.eval(x), us.eval(x)) - Complex(1, 0)) < 1e-9);
}

TEST_CASE("trajectory CSV export") {
    auto pot = free_line();
    auto tr = integrate(pot, {1.0, 0.0}, 0.0, {{0, 0}, {1, 0}}, 1.0,
                        ODETolerance{1e-10, 1e-12, 1.0, 5});
    std::ostringstream os;
    trajectory_to_csv(tr, os);
    std::string text = os.str();
    CHECK(text.substr(0, text.find('\n')) == "x,re_u1,im_u1,re_u2,im_u2,scale_exponent");
    int lines = 0;
    for (char ch : text)
        if (ch == '\n') ++lines;
    CHECK(lines == 6); // header + 5 samples
}
