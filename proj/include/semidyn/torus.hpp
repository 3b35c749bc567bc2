#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "semidyn/hypotheses.hpp"
#include "semidyn/words.hpp"

namespace semidyn {

// Exact point of T^d with fixed denominator q: residues in [0, q).
struct RationalTorusPoint {
    long long q = 1;
    std::vector<long long> numerators;

    bool is_zero() const;
    std::vector<double> as_doubles() const;
    double torus_norm() const; // l2 distance to 0, min over integer translates
};

struct CoverageGrid {
    int resolution = 0;
    std::vector<bool> hit; // resolution^d cells
    std::uint64_t points_seen = 0;

    double fraction() const;
    std::uint64_t cells_hit() const;
};

struct OrbitReport {
    bool finite = false;
    std::optional<std::uint64_t> orbit_size;
    std::optional<double> coverage_fraction;
    std::uint64_t word_budget = 0;
    int resolution = 0;
};

// Exact BFS closure of x in (Z/qZ)^d; always finite, closure re-verified
// under every generator.
struct RationalOrbit {
    std::vector<RationalTorusPoint> points; // BFS order
    OrbitReport report;
};
RationalOrbit orbit_rational(const GeneratorSet& S, const RationalTorusPoint& x);

// Float orbit cloud with grid deduplication and a coverage diagnostic.
// Precision guard: max_len is capped so that rho_min^max_len * 2^-53 < 1e-6
// with rho_min the smallest generator operator norm (PrecisionExceeded
// otherwise); the worst-case error estimate is echoed in the report.
struct FloatOrbit {
    std::vector<double> points; // flattened, d per point, BFS order
    CoverageGrid grid;
    OrbitReport report;
    double error_estimate = 0.0;
    int dim = 0;

    size_t count() const { return points.size() / static_cast<size_t>(dim); }
};
FloatOrbit orbit_float(const GeneratorSet& S, const std::vector<double>& x0, int max_len,
                       std::uint64_t budget = kDefaultWordBudget, int grid_resolution = 50,
                       int n_threads = 1);
namespace serial {
FloatOrbit orbit_float(const GeneratorSet& S, const std::vector<double>& x0, int max_len,
                       std::uint64_t budget = kDefaultWordBudget, int grid_resolution = 50);
}

int float_orbit_max_len_cap(const GeneratorSet& S);

// Witness word moving x outside the epsilon-ball around 0 on the torus
// (distance measured to the nearest integer translate). Default epsilon is
// 1/(2C) with C the escape constant.
struct EpsilonEscape {
    bool escaped = false;
    std::optional<Word> word; // empty indices = the empty word suffices
    double torus_distance = 0.0;
    double epsilon = 0.0;
};
EpsilonEscape epsilon_escape_check(const GeneratorSet& S, const RationalTorusPoint& x,
                                   std::optional<double> epsilon = std::nullopt);
EpsilonEscape epsilon_escape_check(const GeneratorSet& S, const std::vector<double>& x,
                                   std::optional<double> epsilon = std::nullopt);

// Reconstruction of a dominant vector u0 from orbit points approaching 0
// (rescale by lambda^{p_i} along the dominant projection), then the exponents
// k in [-K, K] whose gamma^k u0 is matched by some orbit point within tol.
struct RgsWitness {
    std::vector<double> u0;
    std::vector<int> matched_k;
};
RgsWitness rgs_witness(const GeneratorSet& S, const Word& gamma_word,
                       const std::vector<double>& x0, int K, double tol, int orbit_max_len = 20,
                       std::uint64_t budget = kDefaultWordBudget);

} // namespace semidyn
