#ifndef DIRAC_MEASURES_HPP
#define DIRAC_MEASURES_HPP

#include <functional>
#include <vector>

#include "dirac/operator_model.hpp"

namespace dirac {

/// Eigenvalue with its norming constant gamma^2 = int |Phi(lambda,.)|^2;
/// the spectral measure carries the atom weight gamma^{-2}.
struct EigenPair {
    double lambda = 0.0;
    double gamma_sq = 1.0;
    int index = 0;
};

struct DiscreteSpectralMeasure {
    std::vector<EigenPair> atoms; // ordered by lambda

    double weight(size_t i) const { return 1.0 / atoms[i].gamma_sq; }
};

/// Either a finite atom list or a sampled density with power-law tails
/// (enough structure for the moment test).
struct SpectralMeasure {
    enum class Kind { atoms, density };
    Kind kind = Kind::atoms;
    std::vector<EigenPair> atoms;
    std::function<double(double)> density;
    double lambda_max = 0.0; // |lambda| range trusted for tail fitting

    static SpectralMeasure from_atoms(std::vector<EigenPair> a) {
        SpectralMeasure m;
        m.kind = Kind::atoms;
        m.atoms = std::move(a);
        return m;
    }
    static SpectralMeasure from_density(std::function<double(double)> d, double lmax) {
        SpectralMeasure m;
        m.kind = Kind::density;
        m.density = std::move(d);
        m.lambda_max = lmax;
        return m;
    }
};

/// Values of a C^2 function on an x-grid (quadrature by trapezoid, or
/// Simpson when the grid is uniform with odd length).
struct GridFunction {
    std::vector<double> x;
    std::vector<Spinor> v;

    bool uniform() const;
    /// integral of the pairing <g(x), v(x)> = g1 v1 + g2 v2 (bilinear)
    Complex pair_integral(const std::function<Spinor(double)>& g) const;
    double norm_sq() const; // int (|v1|^2 + |v2|^2)
};

} // namespace dirac

#endif
