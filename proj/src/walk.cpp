#include "semidyn/walk.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

#include <algorithm>
#include <cmath>
#include <limits>

#include "semidyn/kak.hpp"
#include "semidyn/stats.hpp"

namespace semidyn {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

double WalkConfig::alpha() const {
    if (!(c > 1.0)) fail("InvalidConfig", "walk needs c > 1");
    return kTwoPi / std::log(c);
}

void WalkConfig::validate(const GeneratorSet& S) const {
    if (static_cast<int>(weights.size()) != S.size())
        fail("InvalidConfig", "weight count does not match generator count");
    double sum = 0.0, top = 0.0;
    for (double w : weights) {
        if (!(w >= 0.0)) fail("InvalidConfig", "weights must be nonnegative");
        sum += w;
        top = std::max(top, w);
    }
    if (!(top > 0.0)) fail("InvalidConfig", "some weight must be positive");
    if (std::fabs(sum - 1.0) > 1e-9) fail("InvalidConfig", "weights must sum to 1");
    // Zero weights shrink the support of mu; the stationary-measure statements
    // assume the support generates the whole semigroup.
    if (!(c > 1.0)) fail("InvalidConfig", "walk needs c > 1");
}

ProjectivePoint random_projective_point(std::mt19937_64& rng, int dim) {
    return project(gaussian_vector(rng, dim));
}

std::vector<double> EmpiricalMeasure::base_angles() const {
    std::vector<double> out;
    out.reserve(samples.size());
    for (const PcPoint& p : samples) out.push_back(proj_angle(p.base));
    return out;
}

std::vector<double> EmpiricalMeasure::z_values() const {
    std::vector<double> out;
    out.reserve(samples.size());
    for (const PcPoint& p : samples) out.push_back(p.z);
    return out;
}

std::vector<int> sample_letters(const WalkConfig& cfg, const GeneratorSet& S, long long n,
                                std::uint64_t trial) {
    cfg.validate(S);
    std::mt19937_64 rng = make_stream(cfg.seed, StreamKind::Letters, trial);
    std::vector<int> out(static_cast<size_t>(n));
    for (long long i = 0; i < n; ++i) out[static_cast<size_t>(i)] = categorical(rng, cfg.weights);
    return out;
}

namespace {

bool scalar_factor(const DMatrix& g, double* s) {
    const double v = g(0, 0);
    for (int i = 0; i < g.dim; ++i)
        for (int j = 0; j < g.dim; ++j)
            if (g(i, j) != (i == j ? v : 0.0)) return false;
    *s = std::fabs(v);
    return v != 0.0;
}

double wrap_two_pi(double z) {
    double t = std::fmod(z, kTwoPi);
    if (t < 0.0) t += kTwoPi;
    if (t >= kTwoPi) t = 0.0;
    return t;
}

} // namespace

PcPoint step_pc(const DMatrix& g, const PcPoint& v, double alpha) {
    PcPoint out;
    double s = 0.0;
    double lognorm;
    if (scalar_factor(g, &s)) {
        out.base = v.base; // quotient: scalars fix the base pointwise
        lognorm = std::log(s);
    } else {
        const std::vector<double> gv = g.apply(v.base.rep);
        lognorm = std::log(vec_norm(gv));
        out.base = project(gv);
    }
    // Snap log_c of the factor to nearby integers: +/- c^k acts trivially on
    // T_c and the snap keeps that exact through rounding.
    const double logc = kTwoPi / alpha;
    double frac = lognorm / logc;
    const double k = std::round(frac);
    if (std::fabs(frac - k) <= 4e-12) frac = k;
    out.z = wrap_two_pi(v.z + alpha * (frac - k) * logc);
    return out;
}

PcPoint step_pc(const Matrix& g, const PcPoint& v, double alpha) {
    return step_pc(g.as_double(), v, alpha);
}

EmpiricalMeasure run_chain(const WalkConfig& cfg, const GeneratorSet& S, const PcPoint& start,
                           std::uint64_t trial) {
    cfg.validate(S);
    if (cfg.n_steps <= cfg.burn_in) fail("InvalidConfig", "run_chain needs n_steps > burn_in");
    const double alpha = cfg.alpha();
    std::mt19937_64 rng = make_stream(cfg.seed, StreamKind::Letters, trial);
    EmpiricalMeasure m;
    m.samples.reserve(static_cast<size_t>(cfg.n_steps - cfg.burn_in));
    PcPoint v = start;
    for (long long step = 1; step <= cfg.n_steps; ++step) {
        const int letter = categorical(rng, cfg.weights);
        v = step_pc(S.gen_double(letter), v, alpha);
        if (step > cfg.burn_in) m.samples.push_back(v);
    }
    return m;
}

namespace {

// delta(S_n.x, S_n.y) recorded at each checkpoint, one trial. Fixed buffers:
// this loop runs trials x steps times and must not touch the allocator.
void contraction_one_trial(const WalkConfig& cfg, const GeneratorSet& S, const ProjectivePoint& x,
                           const ProjectivePoint& y, const std::vector<long long>& checkpoints,
                           std::uint64_t trial, double* out) {
    std::mt19937_64 rng = make_stream(cfg.seed, StreamKind::Letters, trial);
    const int d = S.dim();
    std::vector<double> u = x.rep, v = y.rep, tmp(static_cast<size_t>(d));
    long long maxn = 0;
    for (long long c : checkpoints) maxn = std::max(maxn, c);
    size_t ci = 0;
    std::vector<long long> sorted = checkpoints;
    std::sort(sorted.begin(), sorted.end());
    for (long long step = 0; step <= maxn; ++step) {
        if (step > 0) {
            const int letter = categorical(rng, cfg.weights);
            const DMatrix& g = S.gen_double(letter);
            g.apply(u.data(), tmp.data());
            std::swap(u, tmp);
            normalize_in_place(u);
            g.apply(v.data(), tmp.data());
            std::swap(v, tmp);
            normalize_in_place(v);
        }
        while (ci < sorted.size() && sorted[ci] == step) {
            out[ci] = proj_distance_raw(u.data(), v.data(), d);
            ++ci;
        }
    }
}

} // namespace

namespace serial {

std::vector<double> contraction_profile(const WalkConfig& cfg, const GeneratorSet& S,
                                        const ProjectivePoint& x, const ProjectivePoint& y,
                                        const std::vector<long long>& checkpoints, int trials) {
    cfg.validate(S);
    std::vector<double> per_trial(static_cast<size_t>(trials) * checkpoints.size());
    for (int t = 0; t < trials; ++t)
        contraction_one_trial(cfg, S, x, y, checkpoints, static_cast<std::uint64_t>(t),
                              per_trial.data() + static_cast<size_t>(t) * checkpoints.size());
    std::vector<double> means(checkpoints.size());
    for (size_t c = 0; c < checkpoints.size(); ++c) {
        CompensatedSum s;
        for (int t = 0; t < trials; ++t) s.add(per_trial[static_cast<size_t>(t) * checkpoints.size() + c]);
        means[c] = s.value() / trials;
    }
    return means;
}

std::vector<double> lyapunov_samples(const WalkConfig& cfg, const GeneratorSet& S, long long n,
                                     int trials) {
    cfg.validate(S);
    std::vector<double> out(static_cast<size_t>(trials));
    for (int t = 0; t < trials; ++t) {
        std::mt19937_64 rng = make_stream(cfg.seed, StreamKind::Letters, static_cast<std::uint64_t>(t));
        // Renormalized left product: track S_n / exp(logscale).
        DMatrix M = DMatrix::identity(S.dim());
        double logscale = 0.0;
        for (long long step = 0; step < n; ++step) {
            const int letter = categorical(rng, cfg.weights);
            M = S.gen_double(letter) * M;
            const double f = M.max_abs();
            if (f > 1e100 || f < 1e-100) {
                for (double& a : M.a) a /= f;
                logscale += std::log(f);
            }
        }
        out[static_cast<size_t>(t)] = (logscale + std::log(operator_norm(M))) / static_cast<double>(n);
    }
    return out;
}

} // namespace serial

std::vector<double> contraction_profile(const WalkConfig& cfg, const GeneratorSet& S,
                                        const ProjectivePoint& x, const ProjectivePoint& y,
                                        const std::vector<long long>& checkpoints, int trials,
                                        int n_threads) {
    if (n_threads <= 1) return serial::contraction_profile(cfg, S, x, y, checkpoints, trials);
    cfg.validate(S);
    std::vector<double> per_trial(static_cast<size_t>(trials) * checkpoints.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(n_threads)
#endif
    for (int t = 0; t < trials; ++t)
        contraction_one_trial(cfg, S, x, y, checkpoints, static_cast<std::uint64_t>(t),
                              per_trial.data() + static_cast<size_t>(t) * checkpoints.size());
    std::vector<double> means(checkpoints.size());
    for (size_t c = 0; c < checkpoints.size(); ++c) {
        CompensatedSum s;
        for (int t = 0; t < trials; ++t) s.add(per_trial[static_cast<size_t>(t) * checkpoints.size() + c]);
        means[c] = s.value() / trials;
    }
    return means;
}

double contraction_stat(const WalkConfig& cfg, const GeneratorSet& S, const ProjectivePoint& x,
                        const ProjectivePoint& y, long long n, int trials, int n_threads) {
    if (x == y) return 0.0;
    return contraction_profile(cfg, S, x, y, {n}, trials, n_threads)[0];
}

std::vector<CheckpointStat> contraction_stats(const WalkConfig& cfg, const GeneratorSet& S,
                                              const ProjectivePoint& x, const ProjectivePoint& y,
                                              const std::vector<long long>& checkpoints, int trials,
                                              int n_threads) {
    cfg.validate(S);
    std::vector<double> per_trial(static_cast<size_t>(trials) * checkpoints.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(std::max(1, n_threads)) if (n_threads > 1)
#endif
    for (int t = 0; t < trials; ++t)
        contraction_one_trial(cfg, S, x, y, checkpoints, static_cast<std::uint64_t>(t),
                              per_trial.data() + static_cast<size_t>(t) * checkpoints.size());
    std::vector<CheckpointStat> out(checkpoints.size());
    std::vector<double> col(static_cast<size_t>(trials));
    for (size_t c = 0; c < checkpoints.size(); ++c) {
        for (int t = 0; t < trials; ++t)
            col[static_cast<size_t>(t)] = per_trial[static_cast<size_t>(t) * checkpoints.size() + c];
        const MeanStderr ms = mean_stderr(col);
        out[c] = {checkpoints[c], ms.mean, ms.stderr_};
    }
    return out;
}

DiracResult dirac_concentration(const WalkConfig& cfg, const GeneratorSet& S, long long n,
                                int probe_count, std::uint64_t trial) {
    cfg.validate(S);
    if (probe_count < 2) fail("InvalidConfig", "dirac_concentration needs probe_count >= 2");
    const std::vector<int> letters = sample_letters(cfg, S, n, trial);
    std::mt19937_64 prng = make_stream(cfg.seed, StreamKind::Probes, trial);

    std::vector<ProjectivePoint> cloud;
    cloud.reserve(static_cast<size_t>(probe_count));
    for (int p = 0; p < probe_count; ++p) {
        ProjectivePoint pt = random_projective_point(prng, S.dim());
        // X_n p = g_1 (g_2 (... (g_n p))): letters applied right-to-left.
        for (long long k = n - 1; k >= 0; --k)
            pt = act(S.gen_double(letters[static_cast<size_t>(k)]), pt);
        cloud.push_back(std::move(pt));
    }

    DiracResult r;
    double best = std::numeric_limits<double>::infinity();
    for (const ProjectivePoint& cand : cloud) {
        double worst = 0.0;
        for (const ProjectivePoint& q : cloud) worst = std::max(worst, proj_distance(cand, q));
        r.diameter = std::max(r.diameter, worst);
        if (worst < best) {
            best = worst;
            r.center = cand;
        }
    }
    return r;
}

NormRatioResult norm_ratio_limit(const WalkConfig& cfg, const GeneratorSet& S,
                                 const std::vector<double>& x, long long n, std::uint64_t trial,
                                 int probe_count) {
    cfg.validate(S);
    if (std::fabs(vec_norm(x) - 1.0) > 1e-9) fail("InvalidConfig", "norm_ratio_limit needs ||x|| = 1");
    const std::vector<int> letters = sample_letters(cfg, S, n, trial);

    // Renormalized S_n = g_n ... g_1; the scale cancels in the ratio.
    DMatrix M = DMatrix::identity(S.dim());
    for (long long k = 0; k < n; ++k) {
        M = S.gen_double(letters[static_cast<size_t>(k)]) * M;
        const double f = M.max_abs();
        if (f > 1e100 || f < 1e-100)
            for (double& a : M.a) a /= f;
    }
    NormRatioResult r;
    r.ratio = vec_norm(M.apply(x)) / operator_norm(M);

    // z* from the transpose walk: S_n^t probes = g_1^t ... g_n^t applied to
    // m*-distributed starts, letters in reverse order.
    std::mt19937_64 prng = make_stream(cfg.seed, StreamKind::Probes, trial);
    std::vector<ProjectivePoint> cloud;
    std::vector<DMatrix> gt;
    for (int j = 0; j < S.size(); ++j) gt.push_back(S.gen_double(j).transpose());
    for (int p = 0; p < probe_count; ++p) {
        ProjectivePoint pt = random_projective_point(prng, S.dim());
        for (long long k = n - 1; k >= 0; --k) pt = act(gt[static_cast<size_t>(letters[static_cast<size_t>(k)])], pt);
        cloud.push_back(std::move(pt));
    }
    double best = std::numeric_limits<double>::infinity();
    for (const ProjectivePoint& cand : cloud) {
        double worst = 0.0;
        for (const ProjectivePoint& q : cloud) worst = std::max(worst, proj_distance(cand, q));
        if (worst < best) {
            best = worst;
            r.z_star = cand;
        }
    }
    double dot = 0.0;
    for (int i = 0; i < S.dim(); ++i) dot += x[static_cast<size_t>(i)] * r.z_star.rep[static_cast<size_t>(i)];
    r.z_star_abs_x = std::fabs(dot);
    r.residual = std::fabs(r.ratio - r.z_star_abs_x);
    return r;
}

double cocycle_residual(const DMatrix& g, const DMatrix& h, const ProjectivePoint& x) {
    const std::vector<double> hx = h.apply(x.rep);
    const double nh = vec_norm(hx);
    std::vector<double> hxu = hx;
    for (double& c : hxu) c /= nh;
    const double lg = std::log(vec_norm(g.apply(hxu)));
    const double lgh = std::log(vec_norm((g * h).apply(x.rep)));
    return std::fabs(lgh - lg - std::log(nh));
}

LyapunovEstimate lyapunov_top(const WalkConfig& cfg, const GeneratorSet& S, long long n, int trials,
                              int n_threads) {
    if (n < 1) fail("InvalidConfig", "lyapunov_top needs n >= 1");
    std::vector<double> samples;
    if (n_threads <= 1) {
        samples = serial::lyapunov_samples(cfg, S, n, trials);
    } else {
        cfg.validate(S);
        samples.resize(static_cast<size_t>(trials));
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(n_threads)
#endif
        for (int t = 0; t < trials; ++t) {
            std::mt19937_64 rng = make_stream(cfg.seed, StreamKind::Letters, static_cast<std::uint64_t>(t));
            DMatrix M = DMatrix::identity(S.dim());
            double logscale = 0.0;
            for (long long step = 0; step < n; ++step) {
                const int letter = categorical(rng, cfg.weights);
                M = S.gen_double(letter) * M;
                const double f = M.max_abs();
                if (f > 1e100 || f < 1e-100) {
                    for (double& a : M.a) a /= f;
                    logscale += std::log(f);
                }
            }
            samples[static_cast<size_t>(t)] = (logscale + std::log(operator_norm(M))) / static_cast<double>(n);
        }
    }
    const MeanStderr ms = mean_stderr(samples);
    return {ms.mean, ms.stderr_};
}

double walk_limitset_distance(const WalkConfig& cfg, const GeneratorSet& S, const PcPoint& start,
                              const LimitSetApprox& L, long long n, std::uint64_t trial) {
    cfg.validate(S);
    if (L.points.empty()) fail("EmptyApprox", "limit-set approximation is empty");
    const double alpha = cfg.alpha();
    std::mt19937_64 rng = make_stream(cfg.seed, StreamKind::Letters, trial);
    PcPoint v = start;
    for (long long step = 0; step < n; ++step) {
        const int letter = categorical(rng, cfg.weights);
        v = step_pc(S.gen_double(letter), v, alpha);
    }
    // L_Gamma(c) = L_Gamma x T_c is full in z, so only the base distance counts.
    return L.distance_to(v.base);
}

} // namespace semidyn
