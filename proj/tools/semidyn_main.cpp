// Experiment runner: seeded, reproducible runs of the library operations with
// CSV outputs and a JSON manifest per run directory.

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

#include "semidyn/hypotheses.hpp"
#include "semidyn/io.hpp"
#include "semidyn/limitset.hpp"
#include "semidyn/torus.hpp"
#include "semidyn/version.hpp"
#include "semidyn/walk.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace semidyn;

namespace {

struct CommonOpts {
    std::string gens_path;
    std::string out_dir = "out";
    std::uint64_t seed = 1;
    int threads = 1;
    int max_len = 8;
    long long steps = 100000;
    long long burn_in = 1000;
    int trials = 1000;
    double c = 2.0;
    int grid = 50;
    double tol = 1e-9;
    double dedup_eps = 1e-6;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool needs_gens = true) {
    auto* g = cmd->add_option("--gens", o.gens_path, "generator file");
    if (needs_gens) g->required();
    cmd->add_option("--out", o.out_dir, "output directory");
    cmd->add_option("--seed", o.seed, "64-bit seed");
    cmd->add_option("--threads", o.threads, "worker threads (never changes results)");
    cmd->add_option("--max-len", o.max_len, "maximum word length");
    cmd->add_option("--steps", o.steps, "chain steps");
    cmd->add_option("--burn-in", o.burn_in, "burn-in steps");
    cmd->add_option("--trials", o.trials, "Monte Carlo trials");
    cmd->add_option("--c", o.c, "norm-circle ratio c > 1");
    cmd->add_option("--grid", o.grid, "diagnostic grid resolution per axis");
    cmd->add_option("--tol", o.tol, "proximality tolerance");
    cmd->add_option("--dedup-eps", o.dedup_eps, "limit-set dedup distance");
}

std::vector<double> parse_vector(const std::string& csv) {
    std::vector<double> out;
    std::stringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(std::stod(tok));
    return out;
}

void write_manifest(const fs::path& dir, const std::string& command, const CommonOpts& o,
                    const json& extra) {
    json m;
    m["command"] = command;
    m["version"] = kVersion;
    m["gens"] = o.gens_path;
    m["seed"] = o.seed;
    m["threads"] = o.threads;
    m["params"] = {{"max_len", o.max_len}, {"steps", o.steps},   {"burn_in", o.burn_in},
                   {"trials", o.trials},   {"c", o.c},           {"grid", o.grid},
                   {"tol", o.tol},         {"dedup_eps", o.dedup_eps}};
    for (auto it = extra.begin(); it != extra.end(); ++it) m["params"][it.key()] = it.value();
    std::ofstream f(dir / "manifest.json");
    f << m.dump(2) << "\n";
}

fs::path prepare_out(const CommonOpts& o) {
    fs::path dir(o.out_dir);
    fs::create_directories(dir);
    return dir;
}

WalkConfig uniform_walk_config(const GeneratorSet& S, const CommonOpts& o) {
    WalkConfig cfg;
    cfg.weights.assign(static_cast<size_t>(S.size()), 1.0 / S.size());
    cfg.seed = o.seed;
    cfg.n_steps = o.steps;
    cfg.burn_in = o.burn_in;
    cfg.c = o.c;
    return cfg;
}

json verdict_json(const GeneratorSet& S, const HypothesisVerdict& v) {
    json j;
    j["status"] = to_string(v.status);
    j["search_depth"] = v.search_depth;
    j["witness"] = v.witness_text;
    if (v.witness_word) j["witness_word"] = word_name(S, *v.witness_word);
    return j;
}

int cmd_hypotheses(const CommonOpts& o, int h1_depth) {
    const GeneratorSet S = load_generators(o.gens_path);
    const fs::path dir = prepare_out(o);
    write_manifest(dir, "hypotheses", o, {{"h1_depth", h1_depth}});

    const HypothesisVerdict h0 = check_H0(S);
    const HypothesisVerdict h1 = check_H1(S, h1_depth);
    const HypothesisVerdict h2 = check_H2(S, o.max_len, o.tol);

    json out;
    out["H0"] = verdict_json(S, h0);
    out["H1"] = verdict_json(S, h1);
    out["H2"] = verdict_json(S, h2);
    std::ofstream(dir / "verdicts.json") << out.dump(2) << "\n";
    std::cout << out.dump(2) << "\n";

    const auto statuses = {h0.status, h1.status, h2.status};
    for (auto s : statuses)
        if (s == VerdictStatus::Violated) return 2;
    for (auto s : statuses)
        if (s == VerdictStatus::Inconclusive) return 3;
    return 0;
}

int cmd_limitset(const CommonOpts& o, const std::string& scales_csv) {
    const GeneratorSet S = load_generators(o.gens_path);
    const fs::path dir = prepare_out(o);
    write_manifest(dir, "limitset", o, {{"scales", scales_csv}});

    const LimitSetApprox L = limit_set_approx(S, o.max_len, o.tol, o.dedup_eps, o.threads);
    {
        std::vector<std::string> header = {"word"};
        if (S.dim() == 2) header.push_back("angle");
        for (int i = 0; i < S.dim(); ++i) header.push_back("x" + std::to_string(i));
        CsvWriter csv((dir / "limitset.csv").string(), header);
        for (const LimitPoint& p : L.points) {
            std::vector<std::string> row = {word_name(S, p.word)};
            if (S.dim() == 2) row.push_back(format_double(proj_angle(p.point)));
            for (double v : p.point.rep) row.push_back(format_double(v));
            csv.row(row);
        }
    }
    json rep;
    rep["points"] = L.points.size();
    rep["max_len"] = L.max_len;
    if (S.dim() == 2 && L.points.size() >= 10) {
        const BoxDimension bd = box_dimension(L, parse_vector(scales_csv));
        rep["box_dimension"] = bd.dimension;
        rep["fit_residual"] = bd.fit_residual;
    }
    std::ofstream(dir / "limitset.json") << rep.dump(2) << "\n";
    std::cout << rep.dump(2) << "\n";
    return 0;
}

int cmd_spectrum(const CommonOpts& o, int coeff_bound) {
    const GeneratorSet S = load_generators(o.gens_path);
    const fs::path dir = prepare_out(o);
    write_manifest(dir, "spectrum", o, {{"coeff_bound", coeff_bound}});

    const Spectrum sp = spectrum(S, o.max_len, o.tol, o.threads);
    {
        CsvWriter csv((dir / "spectrum.csv").string(), {"word", "log_modulus"});
        for (const auto& e : sp.entries)
            csv.row({word_name(S, e.word), format_double(e.log_modulus)});
    }
    json rep;
    rep["entries"] = sp.entries.size();
    if (sp.entries.size() >= 2) {
        try {
            const AperiodicityResult ap = aperiodicity_gap(sp, coeff_bound);
            rep["aperiodicity_gap"] = ap.gap;
            rep["s1"] = ap.s1;
            rep["degenerate"] = ap.degenerate;
        } catch (const Error& e) {
            rep["aperiodicity_error"] = e.what();
        }
    }
    std::ofstream(dir / "spectrum.json") << rep.dump(2) << "\n";
    std::cout << rep.dump(2) << "\n";
    return 0;
}

int cmd_walk(const CommonOpts& o, const std::string& start_csv, const std::string& weights_csv) {
    const GeneratorSet S = load_generators(o.gens_path);
    const fs::path dir = prepare_out(o);
    write_manifest(dir, "walk", o, {{"start", start_csv}, {"weights", weights_csv}});

    WalkConfig cfg = uniform_walk_config(S, o);
    if (!weights_csv.empty()) cfg.weights = parse_vector(weights_csv);
    cfg.validate(S);

    PcPoint start;
    if (start_csv.empty()) {
        std::vector<double> e(static_cast<size_t>(S.dim()), 0.0);
        e[0] = 1.0;
        start.base = project(e);
    } else {
        start.base = project(parse_vector(start_csv));
    }
    const EmpiricalMeasure m = run_chain(cfg, S, start);
    {
        std::vector<std::string> header;
        if (S.dim() == 2) header.push_back("angle");
        for (int i = 0; i < S.dim(); ++i) header.push_back("x" + std::to_string(i));
        header.push_back("z");
        CsvWriter csv((dir / "occupation.csv").string(), header);
        for (const PcPoint& p : m.samples) {
            std::vector<std::string> row;
            if (S.dim() == 2) row.push_back(format_double(proj_angle(p.base)));
            for (double v : p.base.rep) row.push_back(format_double(v));
            row.push_back(format_double(p.z));
            csv.row(row);
        }
    }
    // Contraction profile and Lyapunov summary on the same config.
    std::mt19937_64 rng = make_stream(cfg.seed, StreamKind::Starts, 0);
    const ProjectivePoint x = random_projective_point(rng, S.dim());
    const ProjectivePoint y = random_projective_point(rng, S.dim());
    const std::vector<long long> ns = {5, 10, 20, 30};
    const auto stats = contraction_stats(cfg, S, x, y, ns, o.trials, o.threads);
    {
        CsvWriter csv((dir / "contraction.csv").string(), {"n", "mean_delta", "stderr"});
        for (const auto& st : stats)
            csv.row({std::to_string(st.n), format_double(st.mean), format_double(st.stderr_)});
    }
    const LyapunovEstimate lya = lyapunov_top(cfg, S, 200, o.trials, o.threads);
    json rep;
    rep["samples"] = m.count();
    rep["lyapunov_top"] = lya.value;
    rep["lyapunov_stderr"] = lya.stderr_;
    std::ofstream(dir / "walk.json") << rep.dump(2) << "\n";
    std::cout << rep.dump(2) << "\n";
    return 0;
}

int cmd_torus(const CommonOpts& o, const std::string& x0_str) {
    const GeneratorSet S = load_generators(o.gens_path);
    const fs::path dir = prepare_out(o);
    write_manifest(dir, "torus", o, {{"x0", x0_str}});

    const bool rational = x0_str.find('/') != std::string::npos;
    json rep;
    if (rational) {
        // parse p1/q,p2/q,... with one common denominator
        std::vector<long long> nums;
        long long q = 0;
        std::stringstream ss(x0_str);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            const auto slash = tok.find('/');
            if (slash == std::string::npos) fail("ParseError", "rational x0 needs p/q entries");
            const long long p = std::stoll(tok.substr(0, slash));
            const long long qq = std::stoll(tok.substr(slash + 1));
            if (q == 0) q = qq;
            if (qq != q) fail("ParseError", "rational x0 needs one common denominator");
            nums.push_back(p);
        }
        const RationalOrbit orbit = orbit_rational(S, {q, nums});
        CsvWriter csv((dir / "orbit.csv").string(), [&] {
            std::vector<std::string> h;
            for (int i = 0; i < S.dim(); ++i) h.push_back("x" + std::to_string(i));
            return h;
        }());
        for (const RationalTorusPoint& p : orbit.points) {
            std::vector<std::string> row;
            for (double v : p.as_doubles()) row.push_back(format_double(v));
            csv.row(row);
        }
        rep["finite"] = true;
        rep["orbit_size"] = *orbit.report.orbit_size;
        rep["word_budget"] = orbit.report.word_budget;
        rep["resolution"] = nullptr;
        rep["coverage_fraction"] = nullptr;
    } else {
        const FloatOrbit orbit = orbit_float(S, parse_vector(x0_str), o.max_len, kDefaultWordBudget,
                                             o.grid, o.threads);
        constexpr size_t kMaxRows = 1000000; // cap the CSV, cloud order is BFS-deterministic
        CsvWriter csv((dir / "orbit.csv").string(), [&] {
            std::vector<std::string> h;
            for (int i = 0; i < S.dim(); ++i) h.push_back("x" + std::to_string(i));
            return h;
        }());
        const size_t rows = std::min(orbit.count(), kMaxRows);
        for (size_t r = 0; r < rows; ++r) {
            std::vector<std::string> row;
            for (int i = 0; i < S.dim(); ++i)
                row.push_back(format_double(orbit.points[r * static_cast<size_t>(S.dim()) + i]));
            csv.row(row);
        }
        rep["finite"] = false;
        rep["orbit_size"] = nullptr;
        rep["points"] = orbit.count();
        rep["csv_rows"] = rows;
        rep["word_budget"] = orbit.report.word_budget;
        rep["resolution"] = o.grid;
        rep["coverage_fraction"] = *orbit.report.coverage_fraction;
        rep["error_estimate"] = orbit.error_estimate;
    }
    std::ofstream(dir / "torus.json") << rep.dump(2) << "\n";
    std::cout << rep.dump(2) << "\n";
    return 0;
}

int cmd_shell(const CommonOpts& o, const std::string& v0_csv, const std::string& t_csv,
              int limit_len) {
    const GeneratorSet S = load_generators(o.gens_path);
    const fs::path dir = prepare_out(o);
    write_manifest(dir, "shell", o, {{"v0", v0_csv}, {"t", t_csv}, {"limit_len", limit_len}});

    const std::vector<double> v0 = parse_vector(v0_csv);
    const auto orbit = linear_orbit(S, v0, o.max_len);
    const LimitSetApprox L = limit_set_approx(S, limit_len, o.tol, o.dedup_eps, o.threads);

    json rep;
    rep["orbit_points"] = orbit.size();
    rep["ts"] = json::array();
    for (double td : parse_vector(t_csv)) {
        const int t = static_cast<int>(td);
        try {
            const ShellSnapshot snap = shell_snapshot(orbit, o.c, t);
            CsvWriter csv((dir / ("shell_t" + std::to_string(t) + ".csv")).string(), [&] {
                std::vector<std::string> h;
                if (S.dim() == 2) h.push_back("angle");
                for (int i = 0; i < S.dim(); ++i) h.push_back("x" + std::to_string(i));
                h.push_back("radial");
                return h;
            }());
            for (size_t i = 0; i < snap.directions.size(); ++i) {
                std::vector<std::string> row;
                if (S.dim() == 2) row.push_back(format_double(proj_angle(snap.directions[i])));
                for (double v : snap.directions[i].rep) row.push_back(format_double(v));
                row.push_back(format_double(snap.radial[i]));
                csv.row(row);
            }
            json jt;
            jt["t"] = t;
            jt["points"] = snap.directions.size();
            jt["hausdorff_to_limitset"] = shell_distance(snap, L);
            rep["ts"].push_back(jt);
        } catch (const Error& e) {
            json jt;
            jt["t"] = t;
            jt["error"] = e.code();
            rep["ts"].push_back(jt);
        }
    }
    std::ofstream(dir / "shell.json") << rep.dump(2) << "\n";
    std::cout << rep.dump(2) << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"matrix-semigroup dynamics laboratory"};
    app.require_subcommand(1);

    CommonOpts o;
    int h1_depth = 6;
    int coeff_bound = 500;
    std::string scales_csv =
        "0.08,0.04,0.02,0.01,0.005,0.0025,0.00125,0.000625,0.0003125,0.00015625";
    std::string start_csv, weights_csv;
    std::string x0_str = "0.41421356237309515,0.7320508075688772";
    std::string v0_csv = "1,0";
    std::string t_csv = "4,8";
    int limit_len = 8;

    auto* hyp = app.add_subcommand("hypotheses", "check (H0), (H1), (H2)");
    add_common(hyp, o);
    hyp->add_option("--depth", h1_depth, "H1 search depth");

    auto* lim = app.add_subcommand("limitset", "limit-set approximation and box dimension");
    add_common(lim, o);
    lim->add_option("--scales", scales_csv, "box-counting scales (csv)");

    auto* spec = app.add_subcommand("spectrum", "proximal log-moduli and aperiodicity gap");
    add_common(spec, o);
    spec->add_option("--coeff-bound", coeff_bound, "aperiodicity coefficient bound");

    auto* walk = app.add_subcommand("walk", "random walk occupation and contraction stats");
    add_common(walk, o);
    walk->add_option("--start", start_csv, "start direction (csv, default e1)");
    walk->add_option("--weights", weights_csv, "mu weights (csv, default uniform)");

    auto* torus = app.add_subcommand("torus", "torus orbits (exact rational or float cloud)");
    add_common(torus, o);
    torus->add_option("--x0", x0_str, "start point: 'p/q,p/q' exact or 'x,y' float");

    auto* shell = app.add_subcommand("shell", "c-shell snapshots of a linear orbit");
    add_common(shell, o);
    shell->add_option("--v0", v0_csv, "start vector in R^d (csv)");
    shell->add_option("--t", t_csv, "shell exponents t (csv)");
    shell->add_option("--limit-len", limit_len, "max word length for the reference limit set");

    CLI11_PARSE(app, argc, argv);

    try {
        if (hyp->parsed()) return cmd_hypotheses(o, h1_depth);
        if (lim->parsed()) return cmd_limitset(o, scales_csv);
        if (spec->parsed()) return cmd_spectrum(o, coeff_bound);
        if (walk->parsed()) return cmd_walk(o, start_csv, weights_csv);
        if (torus->parsed()) return cmd_torus(o, x0_str);
        if (shell->parsed()) return cmd_shell(o, v0_csv, t_csv, limit_len);
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        if (e.code() == "ParseError") return 1;
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    }
    return 0;
}
