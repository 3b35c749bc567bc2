// Acceptance suite: property-based checks at desk scale on the 2x2 pair
// a = [[2,1],[1,1]], b = [[3,2],[1,1]]. One line per criterion; the process
// exit code is the number of failures.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "semidyn/eigen.hpp"
#include "semidyn/hypotheses.hpp"
#include "semidyn/kak.hpp"
#include "semidyn/limitset.hpp"
#include "semidyn/stats.hpp"
#include "semidyn/torus.hpp"
#include "semidyn/walk.hpp"

using namespace semidyn;

namespace {

constexpr double kLogLambdaA = 0.96242365011920694;
constexpr double kLambdaA = 2.6180339887498949;
constexpr double kLogLambdaB = 1.3169578969248166;
constexpr double kPi = 3.14159265358979323846;

GeneratorSet flagship() {
    std::vector<Matrix> gens;
    gens.push_back(Matrix::from_int_rows({{2, 1}, {1, 1}}));
    gens.push_back(Matrix::from_int_rows({{3, 2}, {1, 1}}));
    return GeneratorSet(2, std::move(gens), {"a", "b"});
}

GeneratorSet rotation90() {
    std::vector<Matrix> gens;
    gens.push_back(Matrix::from_int_rows({{0, -1}, {1, 0}}));
    return GeneratorSet(2, std::move(gens), {"r"});
}

WalkConfig uniform_cfg(std::uint64_t seed, long long steps, long long burn, double c) {
    WalkConfig cfg;
    cfg.weights = {0.5, 0.5};
    cfg.seed = seed;
    cfg.n_steps = steps;
    cfg.burn_in = burn;
    cfg.c = c;
    return cfg;
}

int failures = 0;

void criterion(int num, const std::string& name, double budget_s,
               const std::function<bool(std::string&)>& body) {
    const auto t0 = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = false;
    try {
        ok = body(detail);
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (budget_s > 0.0 && secs > budget_s) {
        ok = false;
        detail += (detail.empty() ? "" : "; ") + std::string("over runtime budget ") +
                  std::to_string(budget_s) + " s";
    }
    std::printf("[%s] %02d %-22s %6.2f s  %s\n", ok ? "PASS" : "FAIL", num, name.c_str(), secs,
                detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

} // namespace

int main() {
    const GeneratorSet S = flagship();

    criterion(1, "hypotheses", 1.0, [&](std::string& out) {
        const auto h0 = check_H0(S);
        const auto h1 = check_H1(S);
        const auto h2 = check_H2(S);
        const bool sat = h0.status == VerdictStatus::Satisfied &&
                         h1.status == VerdictStatus::Satisfied &&
                         h2.status == VerdictStatus::Satisfied && h2.witness_word.has_value() &&
                         !h0.witness_text.empty() && !h1.witness_text.empty();
        const auto r0 = check_H0(rotation90());
        const bool rot = r0.status == VerdictStatus::Violated;
        out = "flagship H0/H1/H2 " + std::string(to_string(h0.status)) + "/" +
              to_string(h1.status) + "/" + to_string(h2.status) + ", rotation H0 " +
              to_string(r0.status);
        return sat && rot;
    });

    criterion(2, "contraction", 5.0, [&](std::string& out) {
        WalkConfig cfg = uniform_cfg(1, 0, 0, kLambdaA);
        std::mt19937_64 rng = make_stream(1, StreamKind::Starts, 7);
        const std::vector<long long> ns = {5, 10, 20, 30};
        std::vector<CompensatedSum> agg(ns.size());
        bool all_small = true;
        for (int pair = 0; pair < 10; ++pair) {
            const auto x = random_projective_point(rng, 2);
            const auto y = random_projective_point(rng, 2);
            const auto means = contraction_profile(cfg, S, x, y, ns, 1000);
            if (!(means[3] < 1e-6)) all_small = false;
            for (size_t i = 0; i < ns.size(); ++i) agg[i].add(means[i]);
        }
        bool decreasing = true;
        for (size_t i = 1; i < ns.size(); ++i)
            if (!(agg[i].value() < agg[i - 1].value())) decreasing = false;
        char buf[160];
        std::snprintf(buf, sizeof buf, "means %.3e %.3e %.3e %.3e", agg[0].value() / 10,
                      agg[1].value() / 10, agg[2].value() / 10, agg[3].value() / 10);
        out = buf;
        return all_small && decreasing;
    });

    criterion(3, "unique-stationary", 10.0, [&](std::string& out) {
        // Two starts, independent letter streams: same-stream chains couple
        // bitwise after burn-in, which would make the comparison vacuous.
        WalkConfig cfg = uniform_cfg(1, 100000, 1000, kLambdaA);
        const auto m1 = run_chain(cfg, S, {project({1.0, 0.0}), 0.0}, 0);
        const auto m2 = run_chain(cfg, S, {project({-0.3, 1.0}), 2.0}, 1);
        const double w1 = wasserstein1_circle(m1.base_angles(), m2.base_angles(), kPi);
        out = "angle W1 = " + std::to_string(w1);
        return w1 < 0.01;
    });

    criterion(4, "z-marginal-uniform", 0.0, [&](std::string& out) {
        WalkConfig cfg = uniform_cfg(1, 101000, 1000, kLambdaA);
        const auto m = run_chain(cfg, S, {project({1.0, 0.0}), 0.0});
        const double ks = ks_uniform(m.z_values(), 2 * kPi);
        out = "KS = " + std::to_string(ks);
        return ks < 0.01;
    });

    criterion(5, "support-is-limitset", 0.0, [&](std::string& out) {
        WalkConfig cfg = uniform_cfg(1, 0, 0, kLambdaA);
        const auto L = limit_set_approx(S, 8);
        const PcPoint start{project({1.0, -1.0}), 0.0};
        int ok = 0;
        const int trials = 1000;
        for (int t = 0; t < trials; ++t)
            if (walk_limitset_distance(cfg, S, start, L, 50, static_cast<std::uint64_t>(t)) < 1e-3)
                ++ok;
        out = std::to_string(ok) + "/1000 trials within 1e-3";
        return ok >= 990;
    });

    criterion(6, "aperiodicity", 1.0, [&](std::string& out) {
        Spectrum sp;
        sp.entries.push_back({{0}, kLogLambdaA});
        sp.entries.push_back({{1}, kLogLambdaB});
        const auto r = aperiodicity_gap(sp, 500);
        out = "gap = " + std::to_string(r.gap) + ", bound = " + std::to_string(1e-2 * kLogLambdaA);
        return !r.degenerate && r.gap < 1e-2 * kLogLambdaA;
    });

    criterion(7, "limitset-structure", 0.0, [&](std::string& out) {
        const auto L12 = limit_set_approx(S, 12);
        const auto L14 = limit_set_approx(S, 14);
        double worst = 0.0;
        for (const LimitPoint& p : L12.points)
            for (int j = 0; j < S.size(); ++j)
                worst = std::max(worst, L14.distance_to(act(S.gen(j), p.point)));
        const bool invariant = worst <= L12.dedup_eps + 1e-6;

        std::vector<double> scales;
        for (double s = 0.08; s > 1e-4; s *= 0.5) scales.push_back(s);
        const auto bd = box_dimension(L12, scales);
        char buf[160];
        std::snprintf(buf, sizeof buf, "invariance %.2e, dim %.3f, residual %.3f", worst,
                      bd.dimension, bd.fit_residual);
        out = buf;
        return invariant && bd.dimension > 0.0 && bd.dimension < 1.0 && bd.fit_residual < 0.1;
    });

    criterion(8, "torus-dichotomy", 60.0, [&](std::string& out) {
        for (long long q = 1; q <= 7; ++q)
            for (long long i = 0; i < q; ++i)
                for (long long j = 0; j < q; ++j) {
                    const auto orbit = orbit_rational(S, {q, {i, j}});
                    if (!orbit.report.finite) {
                        out = "rational orbit not reported finite";
                        return false;
                    }
                }
        const auto fl = orbit_float(S, {std::sqrt(2.0) - 1.0, std::sqrt(3.0) - 1.0}, 22,
                                    kDefaultWordBudget, 50, 4);
        out = "coverage = " + std::to_string(fl.grid.fraction());
        return fl.grid.fraction() >= 0.99;
    });

    criterion(9, "escape-lemmas", 0.0, [&](std::string& out) {
        std::mt19937_64 rng = make_stream(1, StreamKind::Generic, 0x9e5u);
        const double C = S.norm_bound();
        for (int t = 0; t < 100; ++t) {
            std::vector<double> x = gaussian_vector(rng, 2);
            const double target = 1e-3 + 0.997 * uniform01(rng);
            const double n = vec_norm(x);
            for (double& c : x) c *= target / n;
            const auto r = escape_from_ball(S, x);
            if (!(r.final_norm > 1.0 && r.final_norm <= C + 1e-9)) {
                out = "escape bound violated";
                return false;
            }
        }
        int done = 0;
        while (done < 100) {
            const long long q = 2 + static_cast<long long>(rng() % 97);
            const long long i = static_cast<long long>(rng() % q);
            const long long j = static_cast<long long>(rng() % q);
            if (i == 0 && j == 0) continue;
            const auto r = epsilon_escape_check(S, RationalTorusPoint{q, {i, j}});
            if (!r.escaped || !(r.torus_distance > r.epsilon)) {
                out = "epsilon escape failed at q=" + std::to_string(q);
                return false;
            }
            ++done;
        }
        out = "100 ball escapes + 100 epsilon escapes verified (eps = 1/(2C))";
        return true;
    });

    criterion(10, "congruence", 0.0, [&](std::string& out) {
        const auto r2 = congruence_words(S, 2, 6);
        const auto r5 = congruence_words(S, 5, 12);
        const std::uint64_t gl2 = 6;   // |GL(2, Z/2Z)|
        const std::uint64_t gl5 = 480; // |GL(2, Z/5Z)|
        auto all_id = [&](const CongruenceResult& r, long long m) {
            if (r.words.empty()) return false;
            bool nonempty_word = false;
            for (const Word& w : r.words) {
                if (w.length() > 0) nonempty_word = true;
                for (int i = 0; i < 2; ++i)
                    for (int j = 0; j < 2; ++j) {
                        const Int e = boost::multiprecision::numerator(w.product.at(i, j));
                        if ((e - (i == j ? 1 : 0)) % m != 0) return false;
                    }
            }
            return nonempty_word;
        };
        out = "|Gamma_2| = " + std::to_string(r2.group_order) +
              ", |Gamma_5| = " + std::to_string(r5.group_order);
        return all_id(r2, 2) && all_id(r5, 5) && gl2 % r2.group_order == 0 &&
               gl5 % r5.group_order == 0;
    });

    criterion(11, "cocycle-identity", 0.0, [&](std::string& out) {
        std::mt19937_64 rng = make_stream(1, StreamKind::Generic, 0xc0cu);
        double worst = 0.0;
        int checked = 0;
        while (checked < 10000) {
            Matrix g = Matrix::identity(2), h = Matrix::identity(2);
            bool ok = true;
            try {
                std::vector<Rational> e;
                for (int k = 0; k < 4; ++k) e.emplace_back(static_cast<long long>(rng() % 19) - 9);
                g = Matrix(2, e);
                e.clear();
                for (int k = 0; k < 4; ++k) e.emplace_back(static_cast<long long>(rng() % 19) - 9);
                h = Matrix(2, e);
            } catch (const Error&) {
                ok = false;
            }
            if (!ok) continue;
            const auto kg = kak(g), kh = kak(h);
            if (kg.singular_values.front() / kg.singular_values.back() > 1e6) continue;
            if (kh.singular_values.front() / kh.singular_values.back() > 1e6) continue;
            const auto x = project(gaussian_vector(rng, 2));
            worst = std::max(worst, cocycle_residual(g.as_double(), h.as_double(), x));
            ++checked;
        }
        out = "max residual = " + std::to_string(worst);
        return worst <= 1e-10;
    });

    criterion(12, "shell-convergence", 0.0, [&](std::string& out) {
        const auto orbit = linear_orbit(S, {1.0, 0.0}, 18);
        const auto L = limit_set_approx(S, 8);
        const auto s4 = shell_snapshot(orbit, kLambdaA, 4);
        const auto s8 = shell_snapshot(orbit, kLambdaA, 8);
        const double h4 = shell_distance(s4, L);
        const double h8 = shell_distance(s8, L);
        char buf[120];
        std::snprintf(buf, sizeof buf, "hausdorff t=4: %.3e, t=8: %.3e", h4, h8);
        out = buf;
        return h8 < h4;
    });

    if (failures == 0) std::printf("all 12 acceptance criteria passed\n");
    return failures;
}
