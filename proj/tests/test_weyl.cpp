#include <doctest.h>

#include <array>
#include <cmath>

#include "dirac/weyl.hpp"

using namespace dirac;
using namespace dirac::weyl;
using radial::RadialParams;

namespace {
constexpr double PI = 3.14159265358979323846;

DiracPotential free_halfline() { return DiracPotential::free_potential(Interval(0.0, kInf)); }

TruncationScheme default_plus(double c) { return TruncationScheme::toward(c + 2.0, c + 7.0, 6); }

std::vector<double> uniform_mesh(double a, double b, int n) {
    std::vector<double> m(n + 1);
    for (int i = 0; i <= n; ++i) m[i] = a + (b - a) * i / n;
    return m;
}
} // namespace

TEST_CASE("m_plus: free half-line equals i") {
    auto pot = free_halfline();
    for (Complex z : {Complex(0, 1), Complex(0, 2), Complex(1, 1)}) {
        Complex m = m_plus(pot, 1.0, z, default_plus(1.0));
        CAPTURE(z.real());
        CAPTURE(z.imag());
        CHECK(std::abs(m - Complex(0, 1)) < 1e-6);
    }
    // conjugation: m_+(z*) = m_+(z)*
    DiracPotential bumpy(Interval(0.0, kInf), 0.3, {}, {},
                         CoefficientFunction::expression("exp(-x)*sin(x)"));
    Complex z(0.7, 1.2);
    Complex a = m_plus(bumpy, 1.0, z, default_plus(1.0));
    Complex b = std::conj(m_plus(bumpy, 1.0, std::conj(z), default_plus(1.0)));
    CHECK(std::abs(a - b) < 1e-9 * (1.0 + std::abs(a)));
}

TEST_CASE("m_minus: free line value i and Herglotz signs") {
    auto pot = DiracPotential::free_potential(Interval(-kInf, kInf));
    auto scheme = TruncationScheme::toward(-1.0, -6.0, 6);
    Complex m = m_minus(pot, 1.0, {0.0, 10.0}, scheme);
    CHECK(std::abs(m - Complex(0, 1)) < 1e-5);

    DiracPotential pot2(Interval(-kInf, kInf), 0.2, CoefficientFunction::constant(0.1), {},
                        CoefficientFunction::expression("cos(x)*exp(-x*x)"));
    for (Complex z : {Complex(0.5, 1.0), Complex(-1.0, 2.0), Complex(0.3, -1.5)}) {
        Complex mp = m_plus(pot2, 0.0, z, TruncationScheme::toward(2.0, 7.0, 6));
        Complex mm = m_minus(pot2, 0.0, z, TruncationScheme::toward(-2.0, -7.0, 6));
        CHECK(mp.imag() * z.imag() > 0.0);
        CHECK(mm.imag() * z.imag() > 0.0);
    }
    CHECK_THROWS_AS(m_plus(pot, 1.0, {2.0, 0.0}, default_plus(1.0)), DomainError);
}

TEST_CASE("singular_M: radial kappa=0 frame reproduces M_0") {
    RadialParams p(0.0, 0.0);
    auto frame = radial_frame(p);
    auto pot = radial::radial_potential(p);
    std::array<double, 3> xs{0.4, 0.7, 1.0};
    for (Complex z : {Complex(0, 1), Complex(1, 2), Complex(-0.5, 1.5)}) {
        auto u = weyl_solution_plus(pot, 1.0, z, default_plus(1.0), 0.3);
        Complex M = singular_M(frame, u, xs);
        Complex want = radial::M_kappa(p, z);
        CAPTURE(z.real());
        CAPTURE(z.imag());
        CHECK(std::abs(M - want) < 1e-8 * (1.0 + std::abs(want)));
        // conjugation symmetry
        auto uc = weyl_solution_plus(pot, 1.0, std::conj(z), default_plus(1.0), 0.3);
        Complex Mc = singular_M(frame, uc, xs);
        CHECK(std::abs(std::conj(Mc) - M) < 1e-8 * (1.0 + std::abs(M)));
    }
    // kappa = 0.3: generic noninteger branch against the closed form
    RadialParams p3(0.3, 0.0);
    auto frame3 = radial_frame(p3);
    auto pot3 = radial::radial_potential(p3);
    auto u3 = weyl_solution_plus(pot3, 1.0, {0.0, 1.0}, default_plus(1.0), 0.3);
    Complex M3 = singular_M(frame3, u3, xs);
    CHECK(std::abs(M3 - radial::M_kappa(p3, {0.0, 1.0})) < 1e-7);
}

TEST_CASE("singular_M: pole signal near an eigenvalue of the truncated problem") {
    // free (0, pi) with Dirichlet at both ends has eigenvalues at integers;
    // u+ built from the Dirichlet solution at pi makes W(Phi, u+) ~ sin(pi z)
    RadialParams p(0.0, 0.0);
    auto frame = radial_frame(p);
    auto pot = DiracPotential::free_potential(Interval(0.0, kInf));
    Complex z(1.0, 1e-13); // nearly at the eigenvalue lambda = 1
    auto u = SolutionTrajectory::from_closure(
        z, 0.2, 3.0, 1.0,
        [z](double x) -> Spinor { return {std::sin(z * (x - PI)), std::cos(z * (x - PI))}; },
        [z](double x) -> Spinor {
            return {z * std::cos(z * (x - PI)), -z * std::sin(z * (x - PI))};
        });
    std::array<double, 3> xs{0.4, 0.8, 1.2};
    CHECK_THROWS_AS(singular_M(frame, u, xs), PoleSignal);
}

TEST_CASE("weyl_psi: trivial and decay cases") {
    RadialParams p(0.0, 0.0);
    auto frame = radial_frame(p);
    Complex z(0.0, 1.0);
    // M = 0 -> Psi = Theta
    Spinor th = frame.theta(z, 0.7);
    Spinor psi0 = weyl_psi(frame, {0.0, 0.0}, z, 0.7);
    CHECK((psi0 - th).norm() == 0.0);
    // M = M_0(i) = i -> decaying e^{-x} profile
    Complex M = radial::M_kappa(p, z);
    double prev = 1e300;
    for (double x = 1.0; x <= 5.0; x += 1.0) {
        double n = weyl_psi(frame, M, z, x).norm();
        CHECK(n < prev);
        prev = n;
    }
    // high-energy asymptotics Psi_j ~ i/(2 Phi_j) at z = 50i
    Complex z50(0.0, 50.0);
    Complex M50 = radial::M_kappa(p, z50);
    // Theta + M Phi cancels to e^{-2|Im z| x} of the frame size, so stay
    // where that is resolvable in doubles
    for (double x : {0.15, 0.25}) {
        Spinor psi = weyl_psi(frame, M50, z50, x);
        Spinor phi = frame.phi(z50, x);
        CHECK(std::abs(psi.f1 * phi.f1 - Complex(0.0, 0.5)) < 0.05);
        CHECK(std::abs(psi.f2 * phi.f2 - Complex(0.0, 0.5)) < 0.05);
    }
}

TEST_CASE("greens_function: symmetry, jump, resolvent identity") {
    RadialParams p(0.0, 0.0);
    auto frame = radial_frame(p);
    Complex z(0.0, 1.0);
    Complex M = radial::M_kappa(p, z);

    SUBCASE("G(z,x,y) = G(z,y,x)^T") {
        Mat2c a = greens_function(frame, M, z, 1.3, 0.4);
        Mat2c b = greens_function(frame, M, z, 0.4, 1.3).transpose();
        CHECK(std::abs(a.a11 - b.a11) < 1e-10);
        CHECK(std::abs(a.a12 - b.a12) < 1e-10);
        CHECK(std::abs(a.a21 - b.a21) < 1e-10);
        CHECK(std::abs(a.a22 - b.a22) < 1e-10);
    }

    SUBCASE("jump across the diagonal matches the Wronskian normalization") {
        double x = 0.9;
        Spinor psi = weyl_psi(frame, M, z, x);
        Spinor phi = frame.phi(z, x);
        // lower-triangle minus upper-triangle limit = [[0,1],[-1,0]]
        Mat2c lower{psi.f1 * phi.f1, psi.f1 * phi.f2, psi.f2 * phi.f1, psi.f2 * phi.f2};
        Mat2c upper{phi.f1 * psi.f1, phi.f1 * psi.f2, phi.f2 * psi.f1, phi.f2 * psi.f2};
        CHECK(std::abs((lower.a12 - upper.a12) - Complex(1.0, 0.0)) < 1e-7);
        CHECK(std::abs((lower.a21 - upper.a21) + Complex(1.0, 0.0)) < 1e-7);
        CHECK(std::abs(lower.a11 - upper.a11) < 1e-7);
    }

    SUBCASE("(tau - z) applied to the resolvent recovers f") {
        // smooth compactly supported f on a uniform grid
        GridFunction f;
        int n = 4001;
        for (int i = 0; i < n; ++i) {
            double x = 0.2 + (4.0 - 0.2) * i / (n - 1);
            double b = std::exp(-8.0 * (x - 2.0) * (x - 2.0));
            f.x.push_back(x);
            f.v.push_back({Complex(b, 0.0), Complex(0.5 * b, 0.0)});
        }
        GridFunction g = resolvent_apply(frame, M, z, f);
        // residual (tau - z) g - f at interior checkpoints, derivative by
        // 4th-order differences of the grid values
        auto deriv = [&](int i) -> Spinor {
            double h = g.x[1] - g.x[0];
            return (g.v[i - 2] - g.v[i + 2] + 8.0 * (g.v[i + 1] - g.v[i - 1])) /
                   Complex(12.0 * h, 0.0);
        };
        for (int i : {800, 2000, 3200}) {
            Spinor dg = deriv(i);
            // tau g = [[0,-1],[1,0]] g' + Q g, Q = 0 here
            Spinor tau_g{-dg.f2, dg.f1};
            Spinor res = tau_g - z * g.v[i] - f.v[i];
            CAPTURE(i);
            CHECK(res.norm() < 1e-5);
        }
    }
}

TEST_CASE("stieltjes_invert: atomic, continuum, and gap windows") {
    std::array<double, 4> ladder{1e-1, 3e-2, 1e-2, 3e-3};

    SUBCASE("single atom of mass 1") {
        double l0 = 2.0;
        auto M = [l0](Complex z) { return 1.0 / (l0 - z); };
        auto est = stieltjes_invert(M, 1.0, 3.0, ladder);
        CHECK(std::abs(est.window_mass - 1.0) < 1e-3);
    }
    SUBCASE("kappa=0 density 1/pi") {
        RadialParams p(0.0, 0.0);
        auto M = [p](Complex z) { return radial::M_kappa(p, z); };
        auto est = stieltjes_invert(M, 1.0, 2.0, ladder);
        CHECK(std::abs(est.window_mass - 1.0 / PI) < 0.02 / PI);
        for (size_t i = 0; i < est.lambda.size(); ++i) {
            CHECK(std::abs(est.density[i] - 1.0 / PI) < 0.02 / PI);
            CHECK(est.density[i] >= -est.density_err[i]);
        }
    }
    SUBCASE("real M on a spectral gap gives zero mass") {
        auto M = [](Complex z) { return std::sqrt(1.0 - z * z); }; // gap (-1,1) toy
        auto est = stieltjes_invert(M, -0.5, 0.5, ladder);
        CHECK(std::abs(est.window_mass) < 1e-6);
    }
}

TEST_CASE("limit_circle_frame: regular endpoint reduction") {
    // free (0, b): endpoint 0 regular; Phi0 = s_0(lambda0, .), Theta0 = c_0
    auto pot = free_halfline();
    Complex l0(0.5, 0.0);
    ODETolerance tol;
    auto phi0 = SolutionTrajectory::from_closure(
        l0, 1e-6, 3.0, 1.0, [l0](double x) -> Spinor { return {std::sin(l0 * x), std::cos(l0 * x)}; },
        [l0](double x) -> Spinor {
            return {l0 * std::cos(l0 * x), -l0 * std::sin(l0 * x)};
        });
    auto theta0 = SolutionTrajectory::from_closure(
        l0, 1e-6, 3.0, 1.0,
        [l0](double x) -> Spinor { return {std::cos(l0 * x), -std::sin(l0 * x)}; },
        [l0](double x) -> Spinor {
            return {-l0 * std::sin(l0 * x), -l0 * std::cos(l0 * x)};
        });
    auto scheme = TruncationScheme::geometric_toward(0.0, 0.2, 1e-5, 9);
    auto frame = limit_circle_frame(pot, phi0, theta0, scheme);

    // Phi(z,.) = s-type solution with f1(0) = 0 up to 1e-8; check against
    // the closed form (sin zx, cos zx) and W(Theta, Phi) = 1
    for (Complex z : {Complex(1.3, 0.0), Complex(0.8, 0.6)}) {
        for (double x : {0.4, 1.1, 2.0}) {
            Spinor ph = frame.phi(z, x);
            Spinor want{std::sin(z * x), std::cos(z * x)};
            CAPTURE(z.real());
            CAPTURE(x);
            CHECK((ph - want).norm() < 1e-7 * (1.0 + want.norm()));
            Complex w = wronskian(frame.theta(z, x), ph);
            CHECK(std::abs(w - Complex(1.0, 0.0)) < 1e-7);
        }
    }

    // wronskilemma cross-identities: W_a limits extrapolated along a ladder
    {
        Complex z(0.9, 0.4), zh(1.7, -0.2);
        std::vector<Complex> wpp, wtt, wtp;
        for (double xa : {0.02, 0.008, 0.0032, 0.00128, 0.000512, 0.0002048}) {
            Spinor phz = frame.phi(z, xa), phh = frame.phi(zh, xa);
            Spinor thz = frame.theta(z, xa), thh = frame.theta(zh, xa);
            wpp.push_back(wronskian(phh, phz));
            wtt.push_back(wronskian(thh, thz));
            wtp.push_back(wronskian(thz, phh));
        }
        CHECK(std::abs(aitken_limit(wpp)) < 1e-7);
        CHECK(std::abs(aitken_limit(wtt)) < 1e-7);
        CHECK(std::abs(aitken_limit(wtp) - Complex(1.0, 0.0)) < 1e-6);
    }

    // m_- via W_a(Phi0, c(z))/W_a(Phi0, s(z)) equals the truncation m_-
    {
        Complex z(0.7, 0.9);
        auto lad = TruncationScheme::geometric_toward(0.0, 0.2, 1e-5, 9);
        auto [c_sol, s_sol] = fundamental_system(pot, z, 1.0, 1e-5, tol);
        std::vector<Complex> ratios;
        for (double xk : lad.points) {
            Complex num = wronskian(phi0.eval(xk), c_sol.eval(xk));
            Complex den = wronskian(phi0.eval(xk), s_sol.eval(xk));
            ratios.push_back(num / den);
        }
        Complex m_weyl = aitken_limit(ratios);
        Complex m_trunc = m_minus(pot, 1.0, z, lad);
        CHECK(std::abs(m_weyl - m_trunc) < 1e-6 * (1.0 + std::abs(m_trunc)));
    }
}

TEST_CASE("herglotz_residual: regular problem and rescaling invariance") {
    // free problem on (0,1), Dirichlet at both ends; frame from the radial
    // kappa=0 closed form (Phi = (sin, cos) vanishes first component at 0)
    RadialParams p(0.0, 0.0);
    auto frame = radial_frame(p);
    auto pot = DiracPotential::free_potential(Interval(0.0, kInf));

    // M for the (0,1)-Dirichlet problem: u+ satisfies f1(1) = 0
    auto M_eval = [&](Complex z) {
        auto u = SolutionTrajectory::from_closure(
            z, 0.05, 1.0, 0.5,
            [z](double x) -> Spinor {
                return {std::sin(z * (x - 1.0)), std::cos(z * (x - 1.0))};
            },
            [z](double x) -> Spinor {
                return {z * std::cos(z * (x - 1.0)), -z * std::sin(z * (x - 1.0))};
            });
        std::array<double, 3> xs{0.3, 0.5, 0.8};
        return singular_M(frame, u, xs);
    };

    auto mesh = uniform_mesh(1e-9, 1.0, 64);
    for (Complex z : {Complex(0, 1), Complex(1, 2)}) {
        double r = herglotz_residual(frame, M_eval, z, mesh);
        CAPTURE(z.real());
        CHECK(r < 1e-5);
    }
    CHECK_THROWS_AS(herglotz_residual(frame, M_eval, {1.0, 0.0}, mesh), DomainError);

    // rescaling by constant g: M transforms, identity preserved
    double g0 = 0.37;
    auto frame2 = frame_rescale(
        frame, [g0](Complex) { return Complex(g0, 0.0); }, [](Complex) { return Complex(0.0, 0.0); });
    auto M2_eval = [&](Complex z) { return std::exp(-2.0 * g0) * M_eval(z); };
    for (Complex z : {Complex(0, 1)}) {
        double r = herglotz_residual(frame2, M2_eval, z, mesh);
        CHECK(r < 1e-5);
    }
}

TEST_CASE("frame rescaling covariance: M -> e^{-2g} M + e^{-g} f") {
    RadialParams p(0.3, 0.0);
    auto frame = radial_frame(p);
    auto pot = radial::radial_potential(p);
    Complex z(0.4, 1.1);
    std::array<double, 3> xs{0.4, 0.7, 1.0};
    auto u = weyl_solution_plus(pot, 1.0, z, default_plus(1.0), 0.3);
    Complex M = singular_M(frame, u, xs);

    SUBCASE("constant g and f") {
        auto g = [](Complex) { return Complex(0.25, 0.0); };
        auto f = [](Complex) { return Complex(-0.8, 0.0); };
        auto rframe = frame_rescale(frame, g, f);
        Complex Mr = singular_M(rframe, u, xs);
        Complex want = std::exp(-0.5) * M + std::exp(-0.25) * Complex(-0.8, 0.0);
        CHECK(std::abs(Mr - want) < 1e-9 * (1.0 + std::abs(want)));
    }
    SUBCASE("linear g(z), f(z)") {
        auto g = [](Complex w) { return 0.1 * w; };
        auto f = [](Complex w) { return 0.3 + 0.2 * w; };
        auto rframe = frame_rescale(frame, g, f);
        Complex Mr = singular_M(rframe, u, xs);
        Complex want = std::exp(-0.2 * z) * M + std::exp(-0.1 * z) * (0.3 + 0.2 * z);
        CHECK(std::abs(Mr - want) < 1e-9 * (1.0 + std::abs(want)));
    }
}

TEST_CASE("nevanlinna_moment_test") {
    RadialParams p0(0.0, 0.0);
    auto m0 = SpectralMeasure::from_density(
        [p0](double l) { return radial::rho_kappa_density(p0, l); }, 100.0);
    auto r0 = nevanlinna_moment_test(m0, 0);
    CHECK(r0.verdict == MomentTest::Verdict::pass);
    CHECK(r0.smallest_k == 0);

    RadialParams p1(1.0, 0.0);
    auto m1 = SpectralMeasure::from_density(
        [p1](double l) { return radial::rho_kappa_density(p1, l); }, 100.0);
    auto r1k0 = nevanlinna_moment_test(m1, 0);
    CHECK(r1k0.verdict == MomentTest::Verdict::fail);
    auto r1k1 = nevanlinna_moment_test(m1, 1);
    CHECK(r1k1.verdict == MomentTest::Verdict::pass);
    CHECK(r1k1.smallest_k == 1);
    CHECK(r1k1.tail_exponent == doctest::Approx(2.0).epsilon(0.02));

    // finite atom list: k = 0 always passes
    SpectralMeasure atoms = SpectralMeasure::from_atoms({{1.0, 3.14, 0}, {2.0, 3.14, 1}});
    CHECK(nevanlinna_moment_test(atoms, 0).smallest_k == 0);

    // criticality: density ~ |l| has p = 1 = 2*0+1 -> indeterminate at k=0
    auto crit = SpectralMeasure::from_density([](double l) { return std::abs(l); }, 100.0);
    CHECK(nevanlinna_moment_test(crit, 0).verdict == MomentTest::Verdict::indeterminate);
}

TEST_CASE("limit_circle_frame: singular limit-circle endpoint (kappa = 0.3)") {
    // kappa in [0, 1/2): both x^kappa and x^{-kappa} solutions are square
    // integrable at 0, so the endpoint is limit circle and the construction
    // applies with the closed-form pair as seed
    RadialParams p(0.3, 0.0);
    auto pot = radial::radial_potential(p);
    Complex l0(0.5, 0.0);
    auto phi0 = SolutionTrajectory::from_closure(
        l0, 1e-5, 3.0, 1.0, [p, l0](double x) { return radial::Phi_kappa(p, l0, x); }, nullptr,
        1e-6);
    auto theta0 = SolutionTrajectory::from_closure(
        l0, 1e-5, 3.0, 1.0, [p, l0](double x) { return radial::Theta_kappa(p, l0, x); }, nullptr,
        1e-6);
    auto scheme = TruncationScheme::geometric_toward(0.0, 0.1, 1e-4, 8);
    auto frame = limit_circle_frame(pot, phi0, theta0, scheme);

    // frame normalization and the seed property Phi(lambda0) = Phi0
    for (Complex z : {Complex(0.5, 0.0), Complex(1.2, 0.7)}) {
        for (double x : {0.3, 1.0}) {
            Complex w = wronskian(frame.theta(z, x), frame.phi(z, x));
            CAPTURE(z.real());
            CAPTURE(x);
            CHECK(std::abs(w - Complex(1.0, 0.0)) < 1e-6);
        }
    }
    for (double x : {0.4, 1.5}) {
        Spinor got = frame.phi(l0, x);
        Spinor want = radial::Phi_kappa(p, l0, x);
        CHECK((got - want).norm() < 1e-6 * (1.0 + want.norm()));
    }

    // the associated singular Weyl function is Herglotz (limit-circle theory)
    auto pscheme = TruncationScheme::toward(3.0, 8.0, 6);
    std::array<double, 3> xs{0.5, 0.8, 1.1};
    for (Complex z : {Complex(0.0, 1.0), Complex(1.0, 2.0), Complex(-0.7, 0.9)}) {
        auto u = weyl_solution_plus(pot, 1.0, z, pscheme, 0.4);
        Complex M = singular_M(frame, u, xs);
        CAPTURE(z.real());
        CHECK(M.imag() * z.imag() > 0.0);
    }
}

TEST_CASE("stieltjes_invert: separated atoms each recover their mass") {
    // positive combination of three atoms; windows separating them recover
    // the individual masses
    auto M = [](Complex z) {
        return 0.7 / (Complex(-1.0, 0.0) - z) + 1.3 / (Complex(2.0, 0.0) - z) +
               0.4 / (Complex(4.5, 0.0) - z);
    };
    std::array<double, 4> ladder{1e-1, 3e-2, 1e-2, 3e-3};
    struct Win {
        double lo, hi, mass;
    };
    for (Win w : {Win{-2.0, 0.0, 0.7}, Win{1.0, 3.0, 1.3}, Win{3.8, 5.2, 0.4}}) {
        auto est = stieltjes_invert(M, w.lo, w.hi, ladder, 9);
        CAPTURE(w.lo);
        CHECK(std::abs(est.window_mass - w.mass) < 1e-3);
    }
}
