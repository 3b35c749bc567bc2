#pragma once

// Test-only independent oracles. These deliberately avoid the library's code
// paths: eigenvalues come from plain power iteration or the quadratic formula
// written out directly, gaps from brute-force enumeration, and so on.

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "semidyn/generators.hpp"
#include "semidyn/matrix.hpp"

namespace oracle {

// Flagship pair a = [[2,1],[1,1]], b = [[3,2],[1,1]].
inline semidyn::GeneratorSet flagship() {
    using namespace semidyn;
    std::vector<Matrix> gens;
    gens.push_back(Matrix::from_int_rows({{2, 1}, {1, 1}}));
    gens.push_back(Matrix::from_int_rows({{3, 2}, {1, 1}}));
    return GeneratorSet(2, std::move(gens), {"a", "b"});
}

inline semidyn::GeneratorSet rotation90() {
    using namespace semidyn;
    std::vector<Matrix> gens;
    gens.push_back(Matrix::from_int_rows({{0, -1}, {1, 0}}));
    return GeneratorSet(2, std::move(gens), {"r"});
}

// Hand-derived constants for the flagship pair (quadratic formula on the
// characteristic polynomials t^2-3t+1 and t^2-4t+1).
inline constexpr double kLambdaA = 2.6180339887498949;       // (3+sqrt(5))/2
inline constexpr double kLambdaB = 3.7320508075688772;       // 2+sqrt(3)
inline constexpr double kLogLambdaA = 0.96242365011920694;
inline constexpr double kLogLambdaB = 1.3169578969248166;
inline constexpr double kSlopeA = 0.61803398874989485;       // (sqrt(5)-1)/2
inline constexpr double kSlopeB = 0.36602540378443865;       // (sqrt(3)-1)/2

// sqrt((15+sqrt(221))/2): largest singular value of b = the escape constant.
inline double escape_constant() { return std::sqrt((15.0 + std::sqrt(221.0)) / 2.0); }

// Power-iteration estimate of the dominant |eigenvalue| and direction,
// independent of the library's closed forms and of Eigen.
struct PowerResult {
    double modulus = 0.0;
    std::vector<double> direction;
    bool converged = false;
};

inline PowerResult power_iteration(const semidyn::DMatrix& g, int iters = 2000) {
    PowerResult r;
    std::vector<double> v(static_cast<size_t>(g.dim), 0.0);
    v[0] = 0.7;
    if (g.dim > 1) v[1] = 0.3;
    double lambda = 0.0;
    for (int k = 0; k < iters; ++k) {
        std::vector<double> w = g.apply(v);
        double n = 0.0;
        for (double c : w) n += c * c;
        n = std::sqrt(n);
        if (n == 0.0) return r;
        for (double& c : w) c /= n;
        lambda = n;
        // Alternating signs (negative eigenvalue) stabilize under g^2.
        v = std::move(w);
    }
    // |lambda| from the Rayleigh-style norm growth of g^2 to dodge the sign.
    std::vector<double> w = g.apply(v);
    double n = 0.0;
    for (double c : w) n += c * c;
    r.modulus = std::sqrt(n);
    r.direction = v;
    r.converged = true;
    (void)lambda;
    return r;
}

// Largest circular gap of the sorted residues, brute force.
inline double circle_gap(std::vector<double> residues, double period) {
    for (double& r : residues) {
        r = std::fmod(r, period);
        if (r < 0) r += period;
    }
    std::sort(residues.begin(), residues.end());
    double gap = period - residues.back() + residues.front();
    for (size_t i = 1; i < residues.size(); ++i) gap = std::max(gap, residues[i] - residues[i - 1]);
    return gap;
}

// Random integer matrix with entries in [-9, 9], resampled until invertible.
inline semidyn::Matrix random_int_matrix(std::mt19937_64& rng, int d) {
    using namespace semidyn;
    for (;;) {
        std::vector<Rational> e;
        e.reserve(static_cast<size_t>(d) * d);
        for (int i = 0; i < d * d; ++i)
            e.emplace_back(static_cast<long long>(rng() % 19) - 9);
        try {
            return Matrix(d, std::move(e));
        } catch (const Error&) {
            continue; // singular, roll again
        }
    }
}

} // namespace oracle
