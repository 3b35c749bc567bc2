#pragma once

#include <cstdint>
#include <vector>

#include "semidyn/limitset.hpp"
#include "semidyn/projective.hpp"
#include "semidyn/rng.hpp"
#include "semidyn/words.hpp"

namespace semidyn {

// Configuration of the mu-random walk. alpha = 2*pi / log c identifies the
// norm circle T_c with angles in [0, 2*pi).
struct WalkConfig {
    std::vector<double> weights; // strictly positive, sums to 1
    std::uint64_t seed = 0;
    long long n_steps = 0;
    long long burn_in = 0;
    double c = 2.0;

    double alpha() const;
    void validate(const GeneratorSet& S) const;
};

// A point of P_c(V) ~ P(V) x T_c: projective base plus circle coordinate.
struct PcPoint {
    ProjectivePoint base;
    double z = 0.0; // in [0, 2*pi)
};

struct EmpiricalMeasure {
    std::vector<PcPoint> samples;
    size_t count() const { return samples.size(); }

    std::vector<double> base_angles() const; // d = 2
    std::vector<double> z_values() const;
};

// i.i.d. generator indices of law mu for (seed, trial).
std::vector<int> sample_letters(const WalkConfig& cfg, const GeneratorSet& S, long long n,
                                std::uint64_t trial = 0);

// g.(v, z) = (g.v, z + alpha log||g v||) with v the unit representative. The
// log_c of the norm factor is snapped to integers within 4e-12: multiplying by
// +/- c^k is the identity of T_c and the snap makes that exact in floats.
PcPoint step_pc(const DMatrix& g, const PcPoint& v, double alpha);
PcPoint step_pc(const Matrix& g, const PcPoint& v, double alpha);

// Trajectory of the Markov operator started at `start`: v_n = g_n . v_{n-1}
// (S_n order). Returns the post-burn-in occupation measure.
EmpiricalMeasure run_chain(const WalkConfig& cfg, const GeneratorSet& S, const PcPoint& start,
                           std::uint64_t trial = 0);

// Monte Carlo means of delta(S_n.x, S_n.y) at each checkpoint; trials are
// independent streams, reduced serially (thread-count independent).
std::vector<double> contraction_profile(const WalkConfig& cfg, const GeneratorSet& S,
                                        const ProjectivePoint& x, const ProjectivePoint& y,
                                        const std::vector<long long>& checkpoints, int trials,
                                        int n_threads = 1);
namespace serial {
std::vector<double> contraction_profile(const WalkConfig& cfg, const GeneratorSet& S,
                                        const ProjectivePoint& x, const ProjectivePoint& y,
                                        const std::vector<long long>& checkpoints, int trials);
}

double contraction_stat(const WalkConfig& cfg, const GeneratorSet& S, const ProjectivePoint& x,
                        const ProjectivePoint& y, long long n, int trials, int n_threads = 1);

// Same checkpoints, with per-checkpoint standard errors (for CSV emission).
struct CheckpointStat {
    long long n = 0;
    double mean = 0.0;
    double stderr_ = 0.0;
};
std::vector<CheckpointStat> contraction_stats(const WalkConfig& cfg, const GeneratorSet& S,
                                              const ProjectivePoint& x, const ProjectivePoint& y,
                                              const std::vector<long long>& checkpoints, int trials,
                                              int n_threads = 1);

// Push m-distributed probes through X_n = g_1 g_2 ... g_n; returns the
// minimax-delta cloud point and the cloud delta-diameter.
struct DiracResult {
    ProjectivePoint center;
    double diameter = 0.0;
};
DiracResult dirac_concentration(const WalkConfig& cfg, const GeneratorSet& S, long long n,
                                int probe_count, std::uint64_t trial = 0);

// ||S_n x|| / ||S_n|| for one seeded trajectory, with the transpose-walk
// estimate of the limit functional and the residual |ratio - |z*(x)||.
struct NormRatioResult {
    double ratio = 0.0;
    ProjectivePoint z_star;
    double z_star_abs_x = 0.0;
    double residual = 0.0;
};
NormRatioResult norm_ratio_limit(const WalkConfig& cfg, const GeneratorSet& S,
                                 const std::vector<double>& x, long long n,
                                 std::uint64_t trial = 0, int probe_count = 64);

// | log||gh x|| - log||g (hx/||hx||)|| - log||hx|| | for the unit rep of x.
double cocycle_residual(const DMatrix& g, const DMatrix& h, const ProjectivePoint& x);

// Mean of (1/n) log||S_n|| over trials (operator norm via the singular value).
struct LyapunovEstimate {
    double value = 0.0;
    double stderr_ = 0.0;
};
LyapunovEstimate lyapunov_top(const WalkConfig& cfg, const GeneratorSet& S, long long n, int trials,
                              int n_threads = 1);
namespace serial {
std::vector<double> lyapunov_samples(const WalkConfig& cfg, const GeneratorSet& S, long long n,
                                     int trials);
}

// delta-distance of the base component at step n to the nearest point of L.
double walk_limitset_distance(const WalkConfig& cfg, const GeneratorSet& S, const PcPoint& start,
                              const LimitSetApprox& L, long long n, std::uint64_t trial = 0);

// m-distributed point (uniform on the sphere quotient).
ProjectivePoint random_projective_point(std::mt19937_64& rng, int dim);

} // namespace semidyn
