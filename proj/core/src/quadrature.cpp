#include "dirac/quadrature.hpp"

namespace dirac::quad {

std::vector<double> graded_mesh(double x_max, int n_panels) {
    std::vector<double> mesh(n_panels + 1);
    for (int j = 0; j <= n_panels; ++j) {
        double t = static_cast<double>(j) / n_panels;
        mesh[j] = x_max * t * t;
    }
    return mesh;
}

std::vector<double> graded_mesh_both(double a, double b, int n_side) {
    double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    std::vector<double> mesh;
    mesh.reserve(2 * n_side + 1);
    for (int j = n_side; j >= 1; --j) {
        double t = static_cast<double>(j) / n_side;
        mesh.push_back(mid - half * t * t);
    }
    mesh.push_back(mid);
    for (int j = 1; j <= n_side; ++j) {
        double t = static_cast<double>(j) / n_side;
        mesh.push_back(mid + half * t * t);
    }
    mesh.front() = a;
    mesh.back() = b;
    return mesh;
}

namespace {

struct LagrangeBasis {
    // coef[j][d]: t^d coefficient of L_j on the [0,1] reference nodes
    std::array<std::array<double, 8>, 8> coef{};
    std::array<double, 8> nodes{};
    std::array<double, 8> bary{};
};

LagrangeBasis build_basis() {
    LagrangeBasis B;
    for (int k = 0; k < 8; ++k) B.nodes[k] = 0.5 * (1.0 + gl8_x[k]);
    for (int j = 0; j < 8; ++j) {
        std::array<double, 8> c{};
        c[0] = 1.0;
        int deg = 0;
        double denom = 1.0;
        for (int k = 0; k < 8; ++k) {
            if (k == j) continue;
            denom *= (B.nodes[j] - B.nodes[k]);
            for (int d = deg + 1; d >= 1; --d) c[d] = c[d - 1] - B.nodes[k] * c[d];
            c[0] = -B.nodes[k] * c[0];
            ++deg;
        }
        for (int d = 0; d < 8; ++d) B.coef[j][d] = c[d] / denom;
        B.bary[j] = 1.0 / denom;
    }
    return B;
}

const LagrangeBasis& basis() {
    static const LagrangeBasis B = build_basis();
    return B;
}

} // namespace

void gl8_prefix_to(double t, std::array<double, 8>& w) {
    const auto& B = basis();
    for (int j = 0; j < 8; ++j) {
        double acc = 0.0, p = t;
        for (int d = 0; d < 8; ++d) {
            acc += B.coef[j][d] * p / (d + 1);
            p *= t;
        }
        w[j] = acc;
    }
}

const std::array<std::array<double, 8>, 8>& gl8_prefix_weights() {
    static const auto W = [] {
        std::array<std::array<double, 8>, 8> out{};
        for (int i = 0; i < 8; ++i) gl8_prefix_to(basis().nodes[i], out[i]);
        return out;
    }();
    return W;
}

const std::array<double, 8>& gl8_barycentric_weights() { return basis().bary; }
const std::array<double, 8>& gl8_nodes01() { return basis().nodes; }

} // namespace dirac::quad
