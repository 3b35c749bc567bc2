#include "semidyn/torus.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

#include <algorithm>
#include <cmath>
#include <set>

#include "semidyn/eigen.hpp"
#include "semidyn/kak.hpp"
#include "semidyn/projective.hpp"

namespace semidyn {

bool RationalTorusPoint::is_zero() const {
    for (long long n : numerators)
        if (n % q != 0) return false;
    return true;
}

std::vector<double> RationalTorusPoint::as_doubles() const {
    std::vector<double> out;
    out.reserve(numerators.size());
    for (long long n : numerators) out.push_back(static_cast<double>(n) / static_cast<double>(q));
    return out;
}

double RationalTorusPoint::torus_norm() const {
    double s = 0.0;
    for (long long n : numerators) {
        const long long r = ((n % q) + q) % q;
        const double d = static_cast<double>(std::min(r, q - r)) / static_cast<double>(q);
        s += d * d;
    }
    return std::sqrt(s);
}

double CoverageGrid::fraction() const {
    if (hit.empty()) return 0.0;
    return static_cast<double>(cells_hit()) / static_cast<double>(hit.size());
}

std::uint64_t CoverageGrid::cells_hit() const {
    std::uint64_t n = 0;
    for (bool b : hit)
        if (b) ++n;
    return n;
}

namespace {

// Cell index with a small upward snap so that grid boundaries are classified
// consistently between exact arithmetic and float orbits (float values sit
// within ~1e-9 of the exact rationals at the depths the guard admits).
inline long long cell_of(double x, int r) {
    double t = x - std::floor(x);
    long long k = static_cast<long long>(std::floor(t * r + 1e-8));
    if (k >= r) k = r - 1;
    if (k < 0) k = 0;
    return k;
}

std::vector<long long> reduce_mod(const GeneratorSet& S, int gen, const std::vector<long long>& nums,
                                  long long q) {
    const int d = S.dim();
    std::vector<long long> out(static_cast<size_t>(d), 0);
    for (int i = 0; i < d; ++i) {
        __int128 acc = 0;
        for (int j = 0; j < d; ++j) {
            const Rational& e = S.gen(gen).at(i, j);
            const long long ei = boost::multiprecision::numerator(e).convert_to<long long>();
            acc += static_cast<__int128>(ei) * nums[static_cast<size_t>(j)];
        }
        long long r = static_cast<long long>(acc % q);
        if (r < 0) r += q;
        out[static_cast<size_t>(i)] = r;
    }
    return out;
}

} // namespace

RationalOrbit orbit_rational(const GeneratorSet& S, const RationalTorusPoint& x) {
    if (!S.integer_flag()) fail("InvalidConfig", "orbit_rational needs integer generators");
    if (x.q < 1) fail("InvalidConfig", "denominator must be positive");
    if (static_cast<int>(x.numerators.size()) != S.dim())
        fail("InvalidConfig", "torus point dimension mismatch");

    std::vector<long long> start(x.numerators);
    for (long long& n : start) n = ((n % x.q) + x.q) % x.q;

    std::set<std::vector<long long>> seen{start};
    std::vector<std::vector<long long>> frontier{start};
    std::vector<std::vector<long long>> order{start};
    std::uint64_t levels = 0;
    while (!frontier.empty()) {
        ++levels;
        std::vector<std::vector<long long>> next;
        for (const auto& p : frontier)
            for (int j = 0; j < S.size(); ++j) {
                auto img = reduce_mod(S, j, p, x.q);
                if (seen.insert(img).second) {
                    order.push_back(img);
                    next.push_back(std::move(img));
                }
            }
        frontier = std::move(next);
    }

    // Exact closure re-verification under every generator.
    for (const auto& p : seen)
        for (int j = 0; j < S.size(); ++j)
            if (!seen.count(reduce_mod(S, j, p, x.q)))
                fail("NumericalFailure", "rational orbit closure verification failed");

    RationalOrbit out;
    out.points.reserve(order.size());
    for (auto& nums : order) out.points.push_back({x.q, std::move(nums)});
    out.report.finite = true;
    out.report.orbit_size = seen.size();
    out.report.word_budget = levels;
    return out;
}

int float_orbit_max_len_cap(const GeneratorSet& S) {
    const double rho = std::max(S.min_norm(), 1.0 + 1e-12);
    // rho^L * 2^-53 < 1e-6
    const double cap = (std::log(1e-6) + 53.0 * std::log(2.0)) / std::log(rho);
    return static_cast<int>(std::floor(cap));
}

namespace {

int dedup_resolution(int d) {
    // ~2^24 dedup cells total, at most 4096 per axis.
    const double per_axis = std::pow(2.0, 24.0 / d);
    return std::min(4096, std::max(2, static_cast<int>(per_axis)));
}

struct DedupGrid {
    int res;
    int d;
    std::vector<bool> visited;

    explicit DedupGrid(int dim) : res(dedup_resolution(dim)), d(dim) {
        double cells = std::pow(static_cast<double>(res), d);
        visited.assign(static_cast<size_t>(cells), false);
    }
    size_t index(const double* x) const {
        size_t idx = 0;
        for (int i = 0; i < d; ++i) idx = idx * static_cast<size_t>(res) + static_cast<size_t>(cell_of(x[i], res));
        return idx;
    }
    bool claim(const double* x) {
        const size_t i = index(x);
        if (visited[i]) return false;
        visited[i] = true;
        return true;
    }
};

FloatOrbit orbit_float_impl(const GeneratorSet& S, const std::vector<double>& x0, int max_len,
                            std::uint64_t budget, int grid_resolution, int n_threads) {
    if (!S.integer_flag()) fail("InvalidConfig", "orbit_float needs integer generators");
    const int d = S.dim();
    if (static_cast<int>(x0.size()) != d) fail("InvalidConfig", "torus point dimension mismatch");
    const int cap = float_orbit_max_len_cap(S);
    if (max_len > cap)
        fail("PrecisionExceeded", "max_len " + std::to_string(max_len) +
                                      " exceeds the double-precision cap " + std::to_string(cap));

    FloatOrbit out;
    out.dim = d;
    out.grid.resolution = grid_resolution;
    out.grid.hit.assign(static_cast<size_t>(std::pow(grid_resolution, d)), false);
    out.error_estimate = std::pow(S.norm_bound(), max_len) * std::pow(2.0, -53.0);
    out.report.resolution = grid_resolution;
    out.report.word_budget = budget;

    DedupGrid dedup(d);
    auto mark_grid = [&](const double* x) {
        size_t idx = 0;
        for (int i = 0; i < d; ++i)
            idx = idx * static_cast<size_t>(grid_resolution) +
                  static_cast<size_t>(cell_of(x[i], grid_resolution));
        out.grid.hit[idx] = true;
        ++out.grid.points_seen;
    };

    std::vector<double> start(x0);
    for (double& c : start) c -= std::floor(c);
    std::vector<double> frontier = start;
    if (dedup.claim(start.data())) {
        out.points.insert(out.points.end(), start.begin(), start.end());
        mark_grid(start.data());
    }

    std::uint64_t retained = 1;
    bool truncated = false;
    for (int len = 1; len <= max_len && !frontier.empty() && !truncated; ++len) {
        const size_t npts = frontier.size() / static_cast<size_t>(d);
        const size_t nchild = npts * static_cast<size_t>(S.size());
        std::vector<double> children(nchild * static_cast<size_t>(d));
        // Children computed in parallel into fixed slots; the claiming pass
        // below is serial and in deterministic order, so results match the
        // serial reference bitwise.
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(std::max(1, n_threads)) if (n_threads > 1)
#endif
        for (long long ci = 0; ci < static_cast<long long>(nchild); ++ci) {
            const size_t p = static_cast<size_t>(ci) / static_cast<size_t>(S.size());
            const int j = static_cast<int>(static_cast<size_t>(ci) % static_cast<size_t>(S.size()));
            const double* x = frontier.data() + p * static_cast<size_t>(d);
            double* y = children.data() + static_cast<size_t>(ci) * static_cast<size_t>(d);
            S.gen_double(j).apply(x, y);
            for (int i = 0; i < d; ++i) y[i] -= std::floor(y[i]);
        }
        std::vector<double> next;
        for (size_t ci = 0; ci < nchild; ++ci) {
            const double* y = children.data() + ci * static_cast<size_t>(d);
            if (!dedup.claim(y)) continue;
            if (retained >= budget) { truncated = true; break; }
            ++retained;
            next.insert(next.end(), y, y + d);
            out.points.insert(out.points.end(), y, y + d);
            mark_grid(y);
        }
        frontier = std::move(next);
    }
    out.report.finite = false;
    out.report.coverage_fraction = out.grid.fraction();
    return out;
}

} // namespace

FloatOrbit orbit_float(const GeneratorSet& S, const std::vector<double>& x0, int max_len,
                       std::uint64_t budget, int grid_resolution, int n_threads) {
    return orbit_float_impl(S, x0, max_len, budget, grid_resolution, n_threads);
}

namespace serial {
FloatOrbit orbit_float(const GeneratorSet& S, const std::vector<double>& x0, int max_len,
                       std::uint64_t budget, int grid_resolution) {
    return orbit_float_impl(S, x0, max_len, budget, grid_resolution, 1);
}
} // namespace serial

namespace {

std::vector<double> nearest_zero_lift(const std::vector<double>& x) {
    std::vector<double> lift(x);
    for (double& c : lift) {
        c -= std::floor(c);
        if (c > 0.5) c -= 1.0;
    }
    return lift;
}

double torus_norm_double(const std::vector<double>& x) {
    double s = 0.0;
    for (double c : x) {
        double t = c - std::floor(c);
        t = std::min(t, 1.0 - t);
        s += t * t;
    }
    return std::sqrt(s);
}

EpsilonEscape epsilon_escape_impl(const GeneratorSet& S, const std::vector<double>& x_doubles,
                                  const RationalTorusPoint* exact, std::optional<double> epsilon) {
    EpsilonEscape out;
    out.epsilon = epsilon ? *epsilon : 1.0 / (2.0 * S.norm_bound());
    if (!(out.epsilon < 0.5)) fail("InvalidConfig", "epsilon must be < 1/2");
    out.word = Word(S.dim());

    auto verified_distance = [&](const Word& w) {
        if (exact) {
            // Independent exact re-verification for rational inputs.
            std::vector<long long> nums(exact->numerators);
            for (long long& n : nums) n = ((n % exact->q) + exact->q) % exact->q;
            for (auto it = w.indices.rbegin(); it != w.indices.rend(); ++it)
                nums = reduce_mod(S, *it, nums, exact->q);
            return RationalTorusPoint{exact->q, nums}.torus_norm();
        }
        std::vector<double> y(x_doubles);
        for (double& c : y) c -= std::floor(c);
        for (auto it = w.indices.rbegin(); it != w.indices.rend(); ++it) {
            y = S.gen_double(*it).apply(y);
            for (double& c : y) c -= std::floor(c);
        }
        return torus_norm_double(y);
    };

    const double tn = torus_norm_double(x_doubles);
    if (!(tn > 0.0)) fail("ZeroVector", "epsilon_escape_check needs x != 0 on the torus");
    if (tn > out.epsilon) { // empty word already escapes
        out.escaped = true;
        out.torus_distance = tn;
        return out;
    }

    // Constructive route: escape the epsilon-ball via the unit-ball lemma on
    // the rescaled lift, then reduce mod 1.
    const std::vector<double> lift = nearest_zero_lift(x_doubles);
    std::vector<double> scaled(lift);
    for (double& c : scaled) c /= out.epsilon;
    try {
        const EscapeResult esc = escape_from_ball(S, scaled);
        const double dist = verified_distance(esc.word);
        if (dist > out.epsilon) {
            out.escaped = true;
            out.word = esc.word;
            out.torus_distance = dist;
            return out;
        }
    } catch (const Error&) {
        // fall through to the BFS fallback
    }

    // Fallback: BFS words until one verifiably escapes.
    bool done = false;
    for_each_word(S, 10, [&](const Word& w) {
        if (done || w.length() == 0) return;
        const double dist = verified_distance(w);
        if (dist > out.epsilon) {
            out.escaped = true;
            out.word = w;
            out.torus_distance = dist;
            done = true;
        }
    });
    if (!out.escaped) fail("SearchFailed", "no epsilon-escape witness within the budget");
    return out;
}

} // namespace

EpsilonEscape epsilon_escape_check(const GeneratorSet& S, const RationalTorusPoint& x,
                                   std::optional<double> epsilon) {
    if (!S.integer_flag()) fail("InvalidConfig", "epsilon_escape_check needs integer generators");
    if (x.is_zero()) fail("ZeroVector", "epsilon_escape_check needs x != 0");
    return epsilon_escape_impl(S, x.as_doubles(), &x, epsilon);
}

EpsilonEscape epsilon_escape_check(const GeneratorSet& S, const std::vector<double>& x,
                                   std::optional<double> epsilon) {
    return epsilon_escape_impl(S, x, nullptr, epsilon);
}

RgsWitness rgs_witness(const GeneratorSet& S, const Word& gamma_word, const std::vector<double>& x0,
                       int K, double tol, int orbit_max_len, std::uint64_t budget) {
    const EigenDominantResult eig = eigen_dominant(gamma_word.product);
    if (!eig.proximal || eig.info.dominant_modulus <= 1.0)
        fail("InvalidConfig", "rgs_witness needs a proximal and expanding gamma");
    const double lambda = eig.info.dominant_modulus;
    const DMatrix gamma = gamma_word.product.as_double();
    const DMatrix gamma_inv = gamma_word.product.inverse().as_double();

    // Dominant projection Phi(x) = phi1(x) e1 with phi1 from the transpose
    // dominant functional.
    const std::vector<double>& e1 = eig.info.dominant_vector.rep;
    const std::vector<double>& normal = eig.info.hyperplane_normal.rep;
    double denom = 0.0;
    for (int i = 0; i < S.dim(); ++i) denom += e1[static_cast<size_t>(i)] * normal[static_cast<size_t>(i)];
    if (std::fabs(denom) < 1e-12) fail("NumericalFailure", "degenerate dominant decomposition");
    auto phi1 = [&](const std::vector<double>& x) {
        double dot = 0.0;
        for (int i = 0; i < S.dim(); ++i) dot += x[static_cast<size_t>(i)] * normal[static_cast<size_t>(i)];
        return dot / denom;
    };

    const auto cloud = linear_orbit(S, x0, orbit_max_len, budget);

    // Points entering the approach ball around 0, best (smallest norm) first.
    std::vector<size_t> near;
    for (size_t i = 0; i < cloud.size(); ++i) {
        const double n = vec_norm(cloud[i]);
        if (n > 0.0 && n < 0.01 && std::fabs(phi1(cloud[i])) > 1e-300) near.push_back(i);
    }
    if (near.empty()) fail("NoApproach", "no orbit point entered the 0.01-ball around 0");
    std::sort(near.begin(), near.end(),
              [&](size_t a, size_t b) { return vec_norm(cloud[a]) < vec_norm(cloud[b]); });

    // u0 = gamma^{p} x_i with 1 <= lambda^p |phi1(x_i)| <= lambda.
    const std::vector<double>& xi = cloud[near.front()];
    const double f = std::fabs(phi1(xi));
    int p = static_cast<int>(std::ceil(-std::log(f) / std::log(lambda)));
    if (p < 0) p = 0;
    std::vector<double> u0 = xi;
    for (int k = 0; k < p; ++k) u0 = gamma.apply(u0);

    RgsWitness out;
    out.u0 = u0;
    for (int k = -K; k <= K; ++k) {
        std::vector<double> target = u0;
        const DMatrix& step = (k >= 0) ? gamma : gamma_inv;
        for (int i = 0; i < std::abs(k); ++i) target = step.apply(target);
        bool matched = false;
        for (const auto& pt : cloud) {
            double s = 0.0;
            for (int i = 0; i < S.dim(); ++i) {
                const double dcomp = pt[static_cast<size_t>(i)] - target[static_cast<size_t>(i)];
                s += dcomp * dcomp;
            }
            if (std::sqrt(s) < tol) { matched = true; break; }
        }
        if (matched) out.matched_k.push_back(k);
    }
    return out;
}

} // namespace semidyn
