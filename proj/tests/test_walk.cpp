#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "semidyn/kak.hpp"
#include "semidyn/stats.hpp"
#include "semidyn/walk.hpp"

using namespace semidyn;

namespace {

WalkConfig flagship_cfg(std::uint64_t seed = 1) {
    WalkConfig cfg;
    cfg.weights = {0.5, 0.5};
    cfg.seed = seed;
    cfg.n_steps = 2000;
    cfg.burn_in = 100;
    cfg.c = oracle::kLambdaA;
    return cfg;
}

} // namespace

TEST_CASE("walk config validation") {
    const auto S = oracle::flagship();
    WalkConfig cfg = flagship_cfg();
    CHECK(cfg.alpha() * std::log(cfg.c) == doctest::Approx(2 * 3.14159265358979323846).epsilon(1e-12));
    cfg.weights = {0.6, 0.6};
    CHECK_THROWS_AS(cfg.validate(S), Error); // must sum to 1
    cfg.weights = {0.5, 0.5};
    cfg.c = 0.5;
    CHECK_THROWS_AS(cfg.validate(S), Error);
}

TEST_CASE("sample_letters: degenerate weights, frequencies, determinism") {
    const auto S = oracle::flagship();
    WalkConfig cfg = flagship_cfg();
    cfg.weights = {1.0, 0.0}; // degenerate measure
    auto letters = sample_letters(cfg, S, 1000);
    for (int l : letters) CHECK(l == 0);

    cfg.weights = {0.5, 0.5};
    letters = sample_letters(cfg, S, 100000);
    double freq0 = 0.0;
    for (int l : letters) freq0 += (l == 0) ? 1.0 : 0.0;
    freq0 /= static_cast<double>(letters.size());
    CHECK(freq0 > 0.495); // binomial 3 sigma ~ 0.0047
    CHECK(freq0 < 0.505);

    const auto again = sample_letters(cfg, S, 100000);
    CHECK(letters == again);
    const auto other_trial = sample_letters(cfg, S, 100000, 1);
    CHECK(letters != other_trial);
}

TEST_CASE("step_pc: identity, homothety exactness, a on e1") {
    const auto S = oracle::flagship();
    const double alpha = flagship_cfg().alpha();
    PcPoint v{project({1.0, 0.0}), 1.25};

    const PcPoint id = step_pc(Matrix::identity(2), v, alpha);
    CHECK(id.base.rep == v.base.rep);
    CHECK(id.z == v.z);

    // Homothety by c returns the input bitwise (z shift = 2 pi).
    const double c = oracle::kLambdaA;
    Matrix hom(2, std::vector<double>{c, 0.0, 0.0, c});
    const PcPoint h = step_pc(hom, v, alpha);
    CHECK(h.base.rep == v.base.rep);
    CHECK(h.z == v.z);

    // a moves z by alpha log ||a e1|| = alpha log sqrt(5) mod 2 pi.
    const PcPoint w = step_pc(S.gen(0), v, alpha);
    const double expected =
        std::fmod(1.25 + alpha * std::log(std::sqrt(5.0)), 2 * 3.14159265358979323846);
    CHECK(w.z == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("run_chain: sample count and degenerate chain on the eigendirection") {
    const auto S = oracle::flagship();
    WalkConfig cfg = flagship_cfg();
    cfg.n_steps = cfg.burn_in + 1;
    const PcPoint start{project({1.0, 0.0}), 0.0};
    CHECK(run_chain(cfg, S, start).count() == 1);

    cfg.n_steps = 0;
    CHECK_THROWS_AS(run_chain(cfg, S, start), Error);

    // weights ~ (1, 0) starting on a's eigendirection: base stays put and z
    // advances by alpha log lambda_a each step.
    WalkConfig pure = flagship_cfg();
    pure.weights = {1.0, 0.0};
    pure.c = 2.0;
    pure.n_steps = 50;
    pure.burn_in = 0;
    const ProjectivePoint va = project({1.0, oracle::kSlopeA});
    const auto m = run_chain(pure, S, {va, 0.0});
    const double alpha = pure.alpha();
    const double shift = alpha * oracle::kLogLambdaA;
    double expect = 0.0;
    for (size_t i = 0; i < m.samples.size(); ++i) {
        CHECK(proj_distance(m.samples[i].base, va) < 1e-10);
        expect = std::fmod(expect + shift, 2 * 3.14159265358979323846);
        CHECK(m.samples[i].z == doctest::Approx(expect).epsilon(1e-9));
    }
}

TEST_CASE("contraction_stat: trivial cases and monotone decay") {
    const auto S = oracle::flagship();
    WalkConfig cfg = flagship_cfg();
    const ProjectivePoint x = project({1.0, 0.2});
    const ProjectivePoint y = project({-0.1, 1.0});
    CHECK(contraction_stat(cfg, S, x, x, 10, 5) == 0.0);
    CHECK(contraction_stat(cfg, S, x, y, 0, 5) == doctest::Approx(proj_distance(x, y)));

    const auto means = contraction_profile(cfg, S, x, y, {5, 10, 20, 30}, 1000);
    CHECK(means[0] > means[1]);
    CHECK(means[1] > means[2]);
    CHECK(means[2] >= means[3]); // tail may sit at the float floor
    CHECK(means[3] < 1e-6);
}

TEST_CASE("dirac_concentration: spread at n = 0, collapse at n = 30") {
    const auto S = oracle::flagship();
    WalkConfig cfg = flagship_cfg();
    const auto spread = dirac_concentration(cfg, S, 0, 100);
    CHECK(spread.diameter > 0.9); // uniform cloud on the projective circle

    const auto tight = dirac_concentration(cfg, S, 30, 100);
    CHECK(tight.diameter < 1e-8);

    // weights ~ (1, 0): the X_n cloud collapses on a's dominant direction.
    WalkConfig pure = flagship_cfg();
    pure.weights = {1.0, 0.0};
    const auto fixed = dirac_concentration(pure, S, 40, 50);
    const double slope = fixed.center.rep[1] / fixed.center.rep[0];
    CHECK(slope == doctest::Approx(oracle::kSlopeA).epsilon(1e-9));
}

TEST_CASE("norm_ratio_limit: identity case and the transpose-walk residual") {
    const auto S = oracle::flagship();
    WalkConfig cfg = flagship_cfg();
    const auto r0 = norm_ratio_limit(cfg, S, {1.0, 0.0}, 0);
    CHECK(r0.ratio == doctest::Approx(1.0));

    // Pure-a walk from a's top singular direction (a symmetric: = eigendirection).
    WalkConfig pure = flagship_cfg();
    pure.weights = {1.0, 0.0};
    std::vector<double> va = project({1.0, oracle::kSlopeA}).rep;
    const auto ra = norm_ratio_limit(pure, S, va, 30);
    CHECK(ra.ratio == doctest::Approx(1.0).epsilon(1e-9));

    const auto rj = norm_ratio_limit(cfg, S, {1.0, 0.0}, 40);
    CHECK(rj.residual < 1e-6);
}

TEST_CASE("cocycle_residual: identities and random well-conditioned triples") {
    const auto S = oracle::flagship();
    const auto x = project({1.0, 0.0});
    CHECK(cocycle_residual(DMatrix::identity(2), DMatrix::identity(2), x) == 0.0);
    CHECK(cocycle_residual(S.gen_double(0), S.gen_double(1), x) <= 1e-10);

    std::mt19937_64 rng = make_stream(43, StreamKind::Generic, 0);
    int checked = 0;
    while (checked < 10000) {
        const Matrix g = oracle::random_int_matrix(rng, 2);
        const Matrix h = oracle::random_int_matrix(rng, 2);
        const auto ks_g = kak(g), ks_h = kak(h);
        const double cond_g = ks_g.singular_values.front() / ks_g.singular_values.back();
        const double cond_h = ks_h.singular_values.front() / ks_h.singular_values.back();
        if (cond_g > 1e6 || cond_h > 1e6) continue;
        const auto p = project(gaussian_vector(rng, 2));
        CHECK(cocycle_residual(g.as_double(), h.as_double(), p) <= 1e-10);
        ++checked;
    }
}

TEST_CASE("cocycle_residual: orthogonal g contributes nothing") {
    const auto S = oracle::flagship();
    const DMatrix rot = oracle::rotation90().gen_double(0);
    std::mt19937_64 rng = make_stream(47, StreamKind::Generic, 0);
    for (int t = 0; t < 100; ++t) {
        const auto x = project(gaussian_vector(rng, 2));
        CHECK(cocycle_residual(rot, S.gen_double(1), x) <= 1e-12);
    }
}

TEST_CASE("lyapunov_top: pure generators and the mixed bracket") {
    const auto S = oracle::flagship();
    WalkConfig pure = flagship_cfg();
    pure.weights = {1.0, 0.0};
    const auto la = lyapunov_top(pure, S, 200, 4);
    CHECK(la.value == doctest::Approx(oracle::kLogLambdaA).epsilon(1e-6));

    const auto rot = oracle::rotation90();
    WalkConfig rcfg = flagship_cfg();
    rcfg.weights = {1.0};
    const auto lr = lyapunov_top(rcfg, rot, 100, 4);
    CHECK(lr.value == doctest::Approx(0.0).epsilon(1e-9));

    WalkConfig cfg = flagship_cfg();
    const auto lm = lyapunov_top(cfg, S, 500, 64);
    CHECK(lm.value > oracle::kLogLambdaA - 2 * lm.stderr_ - 1e-6);
    CHECK(lm.value < oracle::kLogLambdaB + 2 * lm.stderr_ + 1e-6);
}

TEST_CASE("z-marginal of the chain is uniform (KS) and starts are forgotten (W1)") {
    const auto S = oracle::flagship();
    WalkConfig cfg = flagship_cfg();
    cfg.n_steps = 100000;
    cfg.burn_in = 1000;
    const auto m1 = run_chain(cfg, S, {project({1.0, 0.0}), 0.0});
    const double ks = ks_uniform(m1.z_values(), 2 * 3.14159265358979323846);
    CHECK(ks < 0.01);

    const auto m2 = run_chain(cfg, S, {project({0.2, 1.0}), 2.5}, 1); // independent stream
    const double w1 = wasserstein1_circle(m1.base_angles(), m2.base_angles(),
                                          3.14159265358979323846);
    CHECK(w1 < 0.01);
}

TEST_CASE("walk_limitset_distance: invariant start and convergence at n = 50") {
    const auto S = oracle::flagship();
    const auto L = limit_set_approx(S, 8);

    WalkConfig pure = flagship_cfg();
    pure.weights = {1.0, 0.0};
    const PcPoint start{project({1.0, oracle::kSlopeA}), 0.0};
    for (long long n : {0LL, 5LL, 20LL})
        CHECK(walk_limitset_distance(pure, S, start, L, n) < 1e-9);

    WalkConfig cfg = flagship_cfg();
    const PcPoint far{project({1.0, -1.0}), 0.0};
    CHECK(walk_limitset_distance(cfg, S, far, L, 0) ==
          doctest::Approx(L.distance_to(far.base)));
    int ok = 0;
    for (int t = 0; t < 100; ++t)
        if (walk_limitset_distance(cfg, S, far, L, 50, static_cast<std::uint64_t>(t)) < 1e-3) ++ok;
    CHECK(ok >= 99);
}
