#pragma once

#include <optional>
#include <string>
#include <vector>

#include "semidyn/eigen.hpp"
#include "semidyn/words.hpp"

namespace semidyn {

struct LimitPoint {
    ProjectivePoint point;
    std::vector<int> word; // producing word (indices)
    double log_modulus = 0.0;
};

// Finite stand-in for the limit set: dominant directions of proximal words up
// to max_len, delta-deduplicated at dedup_eps (BFS order, so shorter words win
// ties, then lexicographic).
struct LimitSetApprox {
    std::vector<LimitPoint> points;
    int max_len = 0;
    double dedup_eps = 0.0;

    double distance_to(const ProjectivePoint& x) const; // min delta over points
};

struct ProximalEntry {
    std::vector<int> word;
    ProjectivePoint direction;
    double log_modulus = 0.0;
};

// Dominant directions of all proximal words of length <= max_len, in BFS
// order. The OpenMP variant writes per-word slots and is bitwise identical to
// the serial reference.
std::vector<std::optional<ProximalEntry>> proximal_entries(const GeneratorSet& S, int max_len,
                                                           double tol, int n_threads);
namespace serial {
std::vector<std::optional<ProximalEntry>> proximal_entries(const GeneratorSet& S, int max_len,
                                                           double tol);
}

LimitSetApprox limit_set_approx(const GeneratorSet& S, int max_len, double tol = 1e-9,
                                double dedup_eps = 1e-6, int n_threads = 1);

// Least-squares box-counting dimension over the angle coordinate (d = 2).
struct BoxDimension {
    double dimension = 0.0;
    double fit_residual = 0.0; // RMS residual of the log-log fit
    std::vector<int> counts;
};
BoxDimension box_dimension(const LimitSetApprox& L, const std::vector<double>& scales);

// log |lambda_w| for every proximal word of length <= max_len.
struct Spectrum {
    struct Entry {
        std::vector<int> word;
        double log_modulus = 0.0;
    };
    std::vector<Entry> entries;
};
Spectrum spectrum(const GeneratorSet& S, int max_len, double tol = 1e-9, int n_threads = 1);

// Max circular gap of { m_i s_i + m_j s_j mod s_1 : |m| <= coeff_bound },
// on the circle R/(s_1 Z) with s_1 the smallest positive entry. A small gap
// is density evidence for the generated subgroup of R.
struct AperiodicityResult {
    double gap = 0.0;
    double s1 = 0.0;
    bool degenerate = false; // all entries numerically rational multiples of one value
};
AperiodicityResult aperiodicity_gap(const Spectrum& spec, int coeff_bound);

// Orbit points with norm in [c^t, c^{t+1}), rescaled by c^{-t}.
struct ShellSnapshot {
    double c = 0.0;
    int t = 0;
    std::vector<ProjectivePoint> directions;
    std::vector<double> radial; // in [1, c]
};
ShellSnapshot shell_snapshot(const std::vector<std::vector<double>>& points, double c, int t);

// One-sided Hausdorff distance from the snapshot to L x [1, c] in the product
// metric delta + |radial difference| / c (the radial term vanishes on the full
// interval; kept for the record).
double shell_distance(const ShellSnapshot& snap, const LimitSetApprox& L);

} // namespace semidyn
