#include <doctest.h>

#include "oracles.hpp"
#include "semidyn/generators.hpp"
#include "semidyn/hypotheses.hpp"
#include "semidyn/limitset.hpp"
#include "semidyn/torus.hpp"
#include "semidyn/walk.hpp"

using namespace semidyn;

TEST_CASE("parse_generators: integers, rationals, comments") {
    const std::string text =
        "# two generators\n"
        "dim 2\n"
        "gen a\n"
        "2 1\n"
        "1 1\n"
        "gen h   # rational entries\n"
        "1/2 0\n"
        "0 2\n";
    const GeneratorSet S = parse_generators(text);
    CHECK(S.size() == 2);
    CHECK(S.label(0) == "a");
    CHECK(S.label(1) == "h");
    CHECK_FALSE(S.integer_flag());
    CHECK(S.gen(1).at(0, 0) == Rational(1) / Rational(2));
    CHECK(S.dets()[1] == Rational(1));
}

TEST_CASE("parse_generators: errors carry line numbers") {
    auto code_of = [](const std::string& text) {
        try {
            parse_generators(text);
        } catch (const Error& e) {
            return std::string(e.what());
        }
        return std::string("no error");
    };
    CHECK(code_of("gen a\n1 0\n0 1\n").find("line 1") != std::string::npos); // no dim header
    CHECK(code_of("dim 2\n1 0\n").find("line 2") != std::string::npos);      // row before gen
    CHECK(code_of("dim 2\ngen a\n1 0 0\n").find("line 3") != std::string::npos);
    CHECK(code_of("dim 2\ngen a\n1 0\n0 1\ngen b\n1 z\n").find("line 6") != std::string::npos);
    CHECK(code_of("dim 2\ngen a\n1 0\n0 0\n").find("singular") != std::string::npos);
    CHECK(code_of("dim 1\ngen a\n2\n").find("line 1") != std::string::npos);
    CHECK(code_of("").find("empty") != std::string::npos);
}

TEST_CASE("integer-only operations reject rational generator sets") {
    std::vector<Matrix> gens;
    gens.push_back(Matrix(2, std::vector<Rational>{Rational(1) / Rational(2), 0, 0, 2}));
    const GeneratorSet S(2, std::move(gens), {"h"});
    CHECK_THROWS_AS(orbit_rational(S, {5, {1, 2}}), Error);
    CHECK_THROWS_AS(orbit_float(S, {0.1, 0.2}, 4), Error);
    CHECK_THROWS_AS(congruence_words(S, 3, 2), Error);
}

TEST_CASE("eigen_dominant validates its tolerance") {
    const auto S = oracle::flagship();
    CHECK_THROWS_AS(eigen_dominant(S.gen(0), 0.0), Error);
    CHECK_THROWS_AS(eigen_dominant(S.gen(0), 1e-2), Error);
}

TEST_CASE("d = 3 smoke: verdicts, limit set, walk, torus") {
    // Block-diagonal embedding of the 2x2 pair plus a mixing shear.
    const std::string text =
        "dim 3\n"
        "gen a\n"
        "2 1 0\n"
        "1 1 0\n"
        "0 0 1\n"
        "gen b\n"
        "3 2 0\n"
        "1 1 0\n"
        "0 0 1\n"
        "gen s\n"
        "1 1 0\n"
        "0 1 1\n"
        "0 0 1\n";
    const GeneratorSet S = parse_generators(text);
    CHECK(S.integer_flag());

    CHECK(check_H2(S, 4).status == VerdictStatus::Satisfied);
    CHECK(check_H1(S, 3).status != VerdictStatus::Violated);

    const auto L = limit_set_approx(S, 5);
    CHECK(L.points.size() >= 3);
    for (const LimitPoint& p : L.points) CHECK(p.point.dim() == 3);

    WalkConfig cfg;
    cfg.weights = {1.0 / 3, 1.0 / 3, 1.0 / 3};
    cfg.seed = 3;
    cfg.n_steps = 500;
    cfg.burn_in = 50;
    cfg.c = 2.0;
    const auto m = run_chain(cfg, S, {project({1.0, 0.0, 0.0}), 0.0});
    CHECK(m.count() == 450);
    const double dmean = contraction_stat(cfg, S, project({1.0, 0.1, 0.0}),
                                          project({0.0, 1.0, 0.3}), 40, 64);
    CHECK(dmean < 1e-4);

    const auto orbit = orbit_rational(S, {3, {1, 2, 0}});
    CHECK(orbit.report.finite);
    CHECK(*orbit.report.orbit_size <= 27);
}
