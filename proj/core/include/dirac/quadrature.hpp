#ifndef DIRAC_QUADRATURE_HPP
#define DIRAC_QUADRATURE_HPP

#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <vector>

#include "dirac/errors.hpp"

namespace dirac::quad {

namespace detail {
inline double abs_of(double v) { return std::abs(v); }
inline double abs_of(const std::complex<double>& v) { return std::abs(v); }
} // namespace detail

// QUADPACK 15-point Gauss-Kronrod rule on [-1,1].
inline constexpr std::array<double, 8> gk15_x = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.0};
inline constexpr std::array<double, 8> gk15_wk = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
inline constexpr std::array<double, 4> gk15_wg = {0.129484966168870, 0.279705391489277,
                                                  0.381830050505119, 0.417959183673469};

template <typename T, typename F> struct GKResult {
    T value;
    double error;
};

template <typename F> auto gk15_panel(F&& f, double a, double b) {
    using T = decltype(f(a));
    const double h = 0.5 * (b - a), c = 0.5 * (a + b);
    T fc = f(c);
    T kron = fc * gk15_wk[7];
    T gauss = fc * gk15_wg[3];
    for (int j = 0; j < 7; ++j) {
        T lo = f(c - h * gk15_x[j]);
        T hi = f(c + h * gk15_x[j]);
        kron = kron + (lo + hi) * gk15_wk[j];
        if (j % 2 == 1) gauss = gauss + (lo + hi) * gk15_wg[j / 2];
    }
    kron = kron * h;
    gauss = gauss * h;
    return GKResult<T, F>{kron, detail::abs_of(kron - gauss)};
}

/// Adaptive bisection Gauss-Kronrod; handles either orientation of (a,b).
/// Works for double- or complex-valued f. Segments that cannot be split
/// further (depth/width limits, typically an error-estimate floor from
/// piecewise-interpolated integrands) are frozen; the result is returned as
/// long as the remaining estimate stays within 50x the requested tolerance.
template <typename F>
auto gk15_adaptive(F&& f, double a, double b, double abs_tol = 1e-10, int max_depth = 48) {
    using T = decltype(f(a));
    if (a == b) return T{};
    double sign = 1.0;
    if (a > b) {
        std::swap(a, b);
        sign = -1.0;
    }
    struct Seg {
        double a, b, err;
        T val;
        int depth;
        bool frozen;
    };
    auto first = gk15_panel(f, a, b);
    std::vector<Seg> stack{{a, b, first.error, first.value, 0, false}};
    T total = first.value;
    double total_err = first.error;
    while (total_err > abs_tol) {
        size_t worst = stack.size();
        for (size_t i = 0; i < stack.size(); ++i)
            if (!stack[i].frozen && (worst == stack.size() || stack[i].err > stack[worst].err))
                worst = i;
        if (worst == stack.size() ||
            stack[worst].depth >= max_depth ||
            stack[worst].b - stack[worst].a < 1e-14 * (std::abs(a) + std::abs(b) + 1.0)) {
            if (worst != stack.size()) {
                stack[worst].frozen = true;
                continue;
            }
            if (total_err <= 50.0 * abs_tol) break;
            throw QuadratureError("gk15_adaptive: tolerance not reached (err=" +
                                  std::to_string(total_err) + ")");
        }
        Seg seg = stack[worst];
        double mid = 0.5 * (seg.a + seg.b);
        auto lo = gk15_panel(f, seg.a, mid);
        auto hi = gk15_panel(f, mid, seg.b);
        total = total - seg.val + lo.value + hi.value;
        total_err = total_err - seg.err + lo.error + hi.error;
        stack[worst] = {seg.a, mid, lo.error, lo.value, seg.depth + 1, false};
        stack.push_back({mid, seg.b, hi.error, hi.value, seg.depth + 1, false});
    }
    return total * sign;
}

// 8-point Gauss-Legendre rule on [-1,1].
inline constexpr std::array<double, 8> gl8_x = {
    -0.9602898564975363, -0.7966664774136267, -0.5255324099163290, -0.1834346424956498,
    0.1834346424956498,  0.5255324099163290,  0.7966664774136267,  0.9602898564975363};
inline constexpr std::array<double, 8> gl8_w = {
    0.1012285362903763, 0.2223810344533745, 0.3137066458778873, 0.3626837833783620,
    0.3626837833783620, 0.3137066458778873, 0.2223810344533745, 0.1012285362903763};

/// Composite 8-point Gauss-Legendre over a mesh of panel boundaries.
template <typename F> auto composite_gl8(F&& f, const std::vector<double>& mesh) {
    using T = decltype(f(mesh.front()));
    T total = f(mesh.front()) * 0.0;
    for (size_t p = 0; p + 1 < mesh.size(); ++p) {
        double h = 0.5 * (mesh[p + 1] - mesh[p]), c = 0.5 * (mesh[p] + mesh[p + 1]);
        T panel = total * 0.0;
        for (int j = 0; j < 8; ++j) panel = panel + f(c + h * gl8_x[j]) * gl8_w[j];
        total = total + panel * h;
    }
    return total;
}

/// Mesh on [0, x_max] with panel boundaries x_j = x_max (j/n)^2, clustered
/// at the left endpoint.
std::vector<double> graded_mesh(double x_max, int n_panels);

/// Mesh on [a, b] graded toward both endpoints.
std::vector<double> graded_mesh_both(double a, double b, int n_panels_per_side);

/// Prefix-integration weights within a reference GL8 panel on [0,1]:
/// W[i][j] = int_0^{t_i} L_j(t) dt for the 8 Gauss nodes t_k = (1+gl8_x[k])/2,
/// where L_j is the Lagrange basis. Used by the Volterra solver.
const std::array<std::array<double, 8>, 8>& gl8_prefix_weights();

/// Same, to an arbitrary upper limit t in [0,1]: w[j] = int_0^t L_j.
void gl8_prefix_to(double t, std::array<double, 8>& w);

/// Barycentric weights of the reference GL8 nodes on [0,1].
const std::array<double, 8>& gl8_barycentric_weights();
/// Reference GL8 nodes mapped to [0,1].
const std::array<double, 8>& gl8_nodes01();

} // namespace dirac::quad

#endif
