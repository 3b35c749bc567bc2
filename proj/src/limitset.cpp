#include "semidyn/limitset.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

#include <algorithm>
#include <cmath>
#include <set>

namespace semidyn {

double LimitSetApprox::distance_to(const ProjectivePoint& x) const {
    double best = 1.0;
    for (const LimitPoint& p : points) best = std::min(best, proj_distance(p.point, x));
    return best;
}

namespace serial {

std::vector<std::optional<ProximalEntry>> proximal_entries(const GeneratorSet& S, int max_len,
                                                           double tol) {
    std::vector<std::optional<ProximalEntry>> out;
    for_each_word(S, max_len, [&](const Word& w) {
        if (w.length() == 0) {
            out.emplace_back(std::nullopt);
            return;
        }
        const EigenDominantResult r = eigen_dominant(w.product.as_double(), tol);
        if (!r.proximal) {
            out.emplace_back(std::nullopt);
            return;
        }
        out.emplace_back(ProximalEntry{w.indices, r.info.dominant_vector,
                                       std::log(r.info.dominant_modulus)});
    });
    return out;
}

} // namespace serial

std::vector<std::optional<ProximalEntry>> proximal_entries(const GeneratorSet& S, int max_len,
                                                           double tol, int n_threads) {
    if (n_threads <= 1) return serial::proximal_entries(S, max_len, tol);
    // Level-synchronous: exact products and eigen extraction land in per-child
    // slots (parallel), then a serial pass stitches BFS order. Identical to
    // the serial reference bitwise.
    if (static_cast<double>(max_len) * std::log2(static_cast<double>(S.size())) >
        std::log2(static_cast<double>(kDefaultWordBudget)) + 1e-9)
        fail("BudgetExceeded", "|S|^max_len exceeds the word budget");

    std::vector<std::optional<ProximalEntry>> out;
    out.emplace_back(std::nullopt); // empty word
    std::vector<Word> level;
    level.emplace_back(S.dim());
    for (int len = 1; len <= max_len; ++len) {
        const size_t nchild = level.size() * static_cast<size_t>(S.size());
        std::vector<std::optional<Word>> children(nchild);
        std::vector<std::optional<ProximalEntry>> results(nchild);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 16) num_threads(n_threads)
#endif
        for (long long k = 0; k < static_cast<long long>(nchild); ++k) {
            const Word& parent = level[static_cast<size_t>(k) / static_cast<size_t>(S.size())];
            const int j = static_cast<int>(static_cast<size_t>(k) % static_cast<size_t>(S.size()));
            std::vector<int> idx = parent.indices;
            idx.push_back(j);
            Word child(std::move(idx), parent.product * S.gen(j));
            const EigenDominantResult r = eigen_dominant(child.product.as_double(), tol);
            if (r.proximal)
                results[static_cast<size_t>(k)] = ProximalEntry{
                    child.indices, r.info.dominant_vector, std::log(r.info.dominant_modulus)};
            children[static_cast<size_t>(k)] = std::move(child);
        }
        std::vector<Word> next;
        next.reserve(nchild);
        for (size_t k = 0; k < nchild; ++k) {
            out.push_back(std::move(results[k]));
            next.push_back(std::move(*children[k]));
        }
        level = std::move(next);
    }
    return out;
}

LimitSetApprox limit_set_approx(const GeneratorSet& S, int max_len, double tol, double dedup_eps,
                                int n_threads) {
    LimitSetApprox L;
    L.max_len = max_len;
    L.dedup_eps = dedup_eps;
    const auto entries = proximal_entries(S, max_len, tol, n_threads);
    // Deterministic sequential reduce in BFS order: keep a point iff it is at
    // delta >= dedup_eps from everything already kept.
    for (const auto& e : entries) {
        if (!e) continue;
        bool fresh = true;
        for (const LimitPoint& kept : L.points)
            if (proj_distance(kept.point, e->direction) < dedup_eps) { fresh = false; break; }
        if (fresh) L.points.push_back({e->direction, e->word, e->log_modulus});
    }
    if (L.points.empty()) fail("EmptyApprox", "no proximal word found up to max_len");
    return L;
}

BoxDimension box_dimension(const LimitSetApprox& L, const std::vector<double>& scales) {
    if (L.points.size() < 10) fail("InvalidConfig", "box_dimension needs >= 10 points");
    if (!L.points.empty() && L.points.front().point.dim() != 2)
        fail("InvalidConfig", "box_dimension is angle-parameterized (d = 2 only)");

    std::vector<double> angles;
    angles.reserve(L.points.size());
    for (const LimitPoint& p : L.points) angles.push_back(proj_angle(p.point));

    std::vector<double> xs, ys;
    BoxDimension out;
    for (double s : scales) {
        if (!(s > 0.0) || s < L.dedup_eps) continue;
        std::set<long long> cells;
        for (double a : angles) cells.insert(static_cast<long long>(std::floor(a / s)));
        out.counts.push_back(static_cast<int>(cells.size()));
        xs.push_back(std::log(1.0 / s));
        ys.push_back(std::log(static_cast<double>(cells.size())));
    }
    if (xs.size() < 3) fail("InsufficientScales", "need >= 3 usable scales");

    // Least squares y = dim * x + b.
    const double n = static_cast<double>(xs.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    const double denom = n * sxx - sx * sx;
    if (denom == 0.0) fail("InsufficientScales", "degenerate scale list");
    out.dimension = (n * sxy - sx * sy) / denom;
    const double intercept = (sy - out.dimension * sx) / n;
    double rss = 0.0;
    for (size_t i = 0; i < xs.size(); ++i) {
        const double r = ys[i] - (out.dimension * xs[i] + intercept);
        rss += r * r;
    }
    out.fit_residual = std::sqrt(rss / n);
    return out;
}

Spectrum spectrum(const GeneratorSet& S, int max_len, double tol, int n_threads) {
    Spectrum sp;
    for (const auto& e : proximal_entries(S, max_len, tol, n_threads))
        if (e) sp.entries.push_back({e->word, e->log_modulus});
    return sp;
}

AperiodicityResult aperiodicity_gap(const Spectrum& spec, int coeff_bound) {
    // Distinct log-moduli, deduplicated at 1e-12 relative; cap at the 16
    // smallest to bound the <=2-term enumeration.
    std::vector<double> vals;
    for (const auto& e : spec.entries)
        if (e.log_modulus > 0.0 || e.log_modulus < 0.0) vals.push_back(std::fabs(e.log_modulus));
    std::sort(vals.begin(), vals.end());
    std::vector<double> distinct;
    for (double v : vals)
        if (distinct.empty() || v - distinct.back() > 1e-12 * std::max(1.0, v))
            distinct.push_back(v);
    if (distinct.size() < 2) fail("InvalidConfig", "aperiodicity_gap needs >= 2 distinct log moduli");
    if (distinct.size() > 16) distinct.resize(16);

    AperiodicityResult out;
    out.s1 = distinct.front();

    // Degenerate when every entry is a near-rational multiple of s1 with a
    // small denominator (continued-fraction scan).
    bool all_rational = true;
    for (double v : distinct) {
        const double r = v / out.s1;
        bool rational = false;
        // best rational approximations with denominator <= 64
        double best = 1.0;
        for (int q = 1; q <= 64 && !rational; ++q) {
            const double p = std::round(r * q);
            best = std::min(best, std::fabs(r - p / q));
            if (std::fabs(r - p / q) < 1e-12) rational = true;
        }
        if (!rational) { all_rational = false; break; }
    }
    out.degenerate = all_rational;

    // Keep the pair enumeration within ~2^24 combinations.
    const size_t pairs = distinct.size() * (distinct.size() - 1) / 2;
    int b_eff = coeff_bound;
    if (pairs > 0) {
        const double cap = std::sqrt(static_cast<double>(1ull << 24) / static_cast<double>(pairs));
        b_eff = std::min(coeff_bound, static_cast<int>((cap - 1.0) / 2.0));
        b_eff = std::max(b_eff, 1);
    }

    std::vector<double> residues{0.0};
    auto push = [&](double x) {
        double t = std::fmod(x, out.s1);
        if (t < 0.0) t += out.s1;
        residues.push_back(t);
    };
    for (size_t i = 0; i < distinct.size(); ++i)
        for (int mi = -coeff_bound; mi <= coeff_bound; ++mi) push(mi * distinct[i]);
    for (size_t i = 0; i < distinct.size(); ++i)
        for (size_t j = i + 1; j < distinct.size(); ++j)
            for (int mi = -b_eff; mi <= b_eff; ++mi)
                for (int mj = -b_eff; mj <= b_eff; ++mj)
                    push(mi * distinct[i] + mj * distinct[j]);
    std::sort(residues.begin(), residues.end());
    double gap = out.s1 - residues.back() + residues.front(); // wraparound
    for (size_t k = 1; k < residues.size(); ++k)
        gap = std::max(gap, residues[k] - residues[k - 1]);
    out.gap = gap;
    return out;
}

ShellSnapshot shell_snapshot(const std::vector<std::vector<double>>& points, double c, int t) {
    if (!(c > 1.0)) fail("InvalidConfig", "shell_snapshot needs c > 1");
    ShellSnapshot snap;
    snap.c = c;
    snap.t = t;
    const double lo = std::pow(c, t), hi = std::pow(c, t + 1);
    for (const auto& p : points) {
        const double n = vec_norm(p);
        if (n >= lo && n < hi) {
            snap.directions.push_back(project(p));
            snap.radial.push_back(n / lo);
        }
    }
    if (snap.directions.empty()) fail("EmptyShell", "no points in the requested annulus");
    return snap;
}

double shell_distance(const ShellSnapshot& snap, const LimitSetApprox& L) {
    double worst = 0.0;
    for (size_t i = 0; i < snap.directions.size(); ++i) {
        // Target is L x [1, c]: the radial coordinate always lies inside the
        // interval, so only the delta term contributes.
        const double d = L.distance_to(snap.directions[i]);
        worst = std::max(worst, d);
    }
    return worst;
}

} // namespace semidyn
