#include "semidyn/hypotheses.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "semidyn/eigen.hpp"
#include "semidyn/kak.hpp"
#include "semidyn/lines2.hpp"
#include "semidyn/projective.hpp"
#include "semidyn/rng.hpp"

namespace semidyn {

const char* to_string(VerdictStatus s) {
    switch (s) {
        case VerdictStatus::Satisfied: return "Satisfied";
        case VerdictStatus::Violated: return "Violated";
        case VerdictStatus::Inconclusive: return "Inconclusive";
    }
    return "?";
}

HypothesisVerdict check_H0(const GeneratorSet& S, int trials, int horizon, double threshold) {
    if (trials < 1) fail("InvalidConfig", "check_H0 needs trials >= 1");
    HypothesisVerdict v;
    v.search_depth = horizon;

    bool all_orthogonal = true;
    for (int i = 0; i < S.size(); ++i)
        if (!is_orthogonal_exact(S.gen(i))) { all_orthogonal = false; break; }
    if (all_orthogonal) {
        v.status = VerdictStatus::Violated;
        v.witness_text = "all generators orthogonal: every orbit stays on its sphere";
        return v;
    }

    // Greedy growth from seeded random unit starts. Deterministic: the stream
    // is fixed, not user-seeded, so verdicts are stable across runs.
    std::mt19937_64 rng = make_stream(0, StreamKind::Generic, 0x4830u);
    const int d = S.dim();
    for (int t = 0; t < trials; ++t) {
        std::vector<double> x = project(gaussian_vector(rng, d)).rep;
        double norm = 1.0;
        bool reached = false;
        for (int step = 0; step < horizon && !reached; ++step) {
            double best = -1.0;
            std::vector<double> bx;
            for (int j = 0; j < S.size(); ++j) {
                std::vector<double> y = S.gen_double(j).apply(x);
                const double n = vec_norm(y);
                if (n > best) { best = n; bx = std::move(y); }
            }
            x = std::move(bx);
            norm = best;
            if (norm > threshold) reached = true;
        }
        if (!reached) {
            v.status = VerdictStatus::Inconclusive;
            v.witness_text = "a start reached only norm " + std::to_string(norm) + " within horizon " +
                             std::to_string(horizon);
            return v;
        }
    }
    v.status = VerdictStatus::Satisfied;
    v.witness_text = std::to_string(trials) + " random starts passed norm " +
                     std::to_string(threshold) + " under greedy growth";
    return v;
}

namespace {

struct LineCandidate {
    QuadField field;
    ProjLine line;
};

HypothesisVerdict check_H1_exact_2d(const GeneratorSet& S, int depth) {
    HypothesisVerdict v;
    v.search_depth = depth;
    const size_t bound = static_cast<size_t>(S.size()) * static_cast<size_t>(std::max(depth, 1));

    std::vector<LineCandidate> candidates;
    bool all_scalar = true;
    for_each_word(S, depth, [&](const Word& w) {
        const EigenLines2 el = eigenlines_2x2(w.product);
        if (!el.scalar && w.length() > 0) all_scalar = false;
        for (const ProjLine& l : el.lines) candidates.push_back({el.field, l});
    });
    if (all_scalar) {
        v.status = VerdictStatus::Violated;
        v.witness_text = "all words act as scalars: every line is invariant";
        return v;
    }
    // Axis seeds catch finite projective order generators (e.g. rotations)
    // whose words have no real eigenline.
    QuadField rational_field{Int(0)};
    candidates.push_back({rational_field, make_line(rational_field, {1, 0}, {0, 0})});
    candidates.push_back({rational_field, make_line(rational_field, {0, 0}, {1, 0})});

    std::vector<std::string> closed_sets;
    for (const LineCandidate& c : candidates) {
        auto closure = line_orbit_closure(c.field, S, c.line, bound);
        if (!closure) continue; // escaped
        std::string desc;
        for (const ProjLine& l : *closure) {
            if (!desc.empty()) desc += ", ";
            desc += line_to_string(c.field, l);
        }
        if (std::find(closed_sets.begin(), closed_sets.end(), desc) == closed_sets.end())
            closed_sets.push_back(desc);
    }
    if (!closed_sets.empty()) {
        v.status = VerdictStatus::Violated;
        v.witness_text = "invariant finite line set(s): ";
        for (size_t i = 0; i < closed_sets.size(); ++i)
            v.witness_text += (i ? " | {" : "{") + closed_sets[i] + "}";
        return v;
    }
    v.status = VerdictStatus::Satisfied;
    v.witness_text = std::to_string(candidates.size()) +
                     " candidate lines all escape past " + std::to_string(bound) + " images";
    return v;
}

HypothesisVerdict check_H1_heuristic(const GeneratorSet& S, int depth) {
    HypothesisVerdict v;
    v.search_depth = depth;
    const size_t bound = static_cast<size_t>(S.size()) * static_cast<size_t>(std::max(depth, 1));
    const int d = S.dim();

    std::vector<ProjectivePoint> candidates;
    for (int i = 0; i < d; ++i) {
        std::vector<double> e(static_cast<size_t>(d), 0.0);
        e[static_cast<size_t>(i)] = 1.0;
        candidates.push_back(project(e));
    }
    for_each_word(S, std::min(depth, 4), [&](const Word& w) {
        if (w.length() == 0) return;
        const EigenDominantResult r = eigen_dominant(w.product);
        if (r.proximal) candidates.push_back(r.info.dominant_vector);
    });
    std::mt19937_64 rng = make_stream(0, StreamKind::Generic, 0x4831u);
    for (int t = 0; t < 8; ++t) candidates.push_back(project(gaussian_vector(rng, d)));

    for (const ProjectivePoint& c : candidates) {
        // delta-deduplicated BFS orbit of the direction; a closed small set is
        // only reported as Inconclusive (floats cannot certify Violated).
        std::vector<ProjectivePoint> seen{c};
        std::vector<ProjectivePoint> frontier{c};
        bool escaped = false;
        while (!frontier.empty() && !escaped) {
            std::vector<ProjectivePoint> next;
            for (const ProjectivePoint& p : frontier) {
                for (int j = 0; j < S.size(); ++j) {
                    ProjectivePoint img = act(S.gen_double(j), p);
                    bool known = false;
                    for (const ProjectivePoint& q : seen)
                        if (proj_distance(img, q) < 1e-9) { known = true; break; }
                    if (known) continue;
                    seen.push_back(img);
                    next.push_back(std::move(img));
                    if (seen.size() > bound) { escaped = true; break; }
                }
                if (escaped) break;
            }
            frontier = std::move(next);
        }
        if (!escaped) {
            v.status = VerdictStatus::Inconclusive;
            v.witness_text = "a direction orbit numerically closed at " +
                             std::to_string(seen.size()) + " lines (d >= 3 heuristic cannot certify)";
            return v;
        }
    }
    v.status = VerdictStatus::Satisfied;
    v.witness_text = "all sampled subspace orbits escape (heuristic)";
    return v;
}

} // namespace

HypothesisVerdict check_H1(const GeneratorSet& S, int depth) {
    if (depth < 1) fail("InvalidConfig", "check_H1 needs depth >= 1");
    if (S.dim() == 2) return check_H1_exact_2d(S, depth);
    return check_H1_heuristic(S, depth);
}

HypothesisVerdict check_H2(const GeneratorSet& S, int max_len, double tol) {
    HypothesisVerdict v;
    v.search_depth = max_len;
    bool found = false;
    for_each_word(S, max_len, [&](const Word& w) {
        if (found || w.length() == 0) return;
        const EigenDominantResult r = eigen_dominant(w.product, tol);
        if (r.proximal) {
            found = true;
            v.status = VerdictStatus::Satisfied;
            v.witness_word = w;
            v.witness_text = "proximal word '" + word_name(S, w) + "', gap ratio " +
                             std::to_string(r.info.gap_ratio);
        }
    });
    if (!found) {
        v.status = VerdictStatus::Inconclusive;
        v.witness_text = "no proximal word of length <= " + std::to_string(max_len);
    }
    return v;
}

EscapeResult escape_from_ball(const GeneratorSet& S, const std::vector<double>& x, int budget) {
    const double n0 = vec_norm(x);
    if (!(n0 > 0.0)) fail("ZeroVector", "escape_from_ball needs x != 0");
    if (n0 > 1.0 + 1e-12) fail("InvalidConfig", "escape_from_ball needs ||x|| <= 1");

    EscapeResult out{Word(S.dim()), 0.0, S.norm_bound()};
    std::vector<double> cur = x;
    std::vector<int> letters; // applied order: letters[k] applied at step k
    for (int step = 0; step < budget; ++step) {
        // Prefer the first generator that crosses the unit sphere; otherwise
        // grow greedily and keep going.
        int crossing = -1, best = 0;
        double best_norm = -1.0;
        std::vector<double> imgs_best, imgs_cross;
        for (int j = 0; j < S.size(); ++j) {
            std::vector<double> y = S.gen_double(j).apply(cur);
            const double n = vec_norm(y);
            if (crossing < 0 && n > 1.0) {
                crossing = j;
                imgs_cross = std::move(y);
                break;
            }
            if (n > best_norm) { best_norm = n; best = j; imgs_best = std::move(y); }
        }
        if (crossing >= 0) {
            letters.push_back(crossing);
            cur = std::move(imgs_cross);
            // Word indices carry leftmost-applied-last order.
            std::vector<int> idx(letters.rbegin(), letters.rend());
            Matrix prod = Matrix::identity(S.dim());
            for (int i : idx) prod = prod * S.gen(i);
            out.word = Word(std::move(idx), std::move(prod));
            out.final_norm = vec_norm(cur);
            // Re-verify the lemma bounds on every return.
            if (!(out.final_norm > 1.0 && out.final_norm <= out.C + 1e-9))
                fail("NumericalFailure", "escape bound verification failed");
            return out;
        }
        letters.push_back(best);
        cur = std::move(imgs_best);
    }
    fail("SearchFailed", "no escape from the unit ball within the budget (H0 may fail)");
}

CongruenceResult congruence_words(const GeneratorSet& S, long long m, int max_len,
                                  std::uint64_t budget) {
    if (!S.integer_flag()) fail("InvalidConfig", "congruence_words needs integer generators");
    if (m < 2) fail("BadModulus", "modulus must be >= 2");
    for (long long p = 2; p * p <= m; ++p)
        if (m % p == 0) fail("BadModulus", "modulus must be prime");
    for (int i = 0; i < S.size(); ++i) {
        const Int num = boost::multiprecision::numerator(S.dets()[static_cast<size_t>(i)]);
        if (num % m == 0) fail("BadModulus", "modulus divides det of generator " + S.label(i));
    }

    const int d = S.dim();
    auto reduce = [&](const Matrix& g) {
        std::vector<long long> r(static_cast<size_t>(d) * d);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) {
                Int e = boost::multiprecision::numerator(g.at(i, j)) % m;
                if (e < 0) e += m;
                r[static_cast<size_t>(i) * d + j] = e.convert_to<long long>();
            }
        return r;
    };
    auto mulmod = [&](const std::vector<long long>& a, const std::vector<long long>& b) {
        std::vector<long long> r(static_cast<size_t>(d) * d, 0);
        for (int i = 0; i < d; ++i)
            for (int k = 0; k < d; ++k) {
                const long long v = a[static_cast<size_t>(i) * d + k];
                if (!v) continue;
                for (int j = 0; j < d; ++j)
                    r[static_cast<size_t>(i) * d + j] =
                        (r[static_cast<size_t>(i) * d + j] + v * b[static_cast<size_t>(k) * d + j]) % m;
            }
        return r;
    };
    std::vector<long long> id(static_cast<size_t>(d) * d, 0);
    for (int i = 0; i < d; ++i) id[static_cast<size_t>(i) * d + i] = 1;

    std::vector<std::vector<long long>> red;
    for (int j = 0; j < S.size(); ++j) red.push_back(reduce(S.gen(j)));

    // |Gamma_m|: multiplicative closure of the reductions. Finite and made of
    // invertible maps, so the closure is the generated group.
    std::set<std::vector<long long>> group{id};
    {
        std::vector<std::vector<long long>> frontier{id};
        while (!frontier.empty()) {
            std::vector<std::vector<long long>> next;
            for (const auto& g : frontier)
                for (const auto& r : red) {
                    auto h = mulmod(g, r);
                    if (group.insert(h).second) next.push_back(std::move(h));
                }
            frontier = std::move(next);
        }
        // The identity belongs to Gamma_m as the image of nonempty words too;
        // group closure above already contains it.
    }

    CongruenceResult out;
    out.group_order = group.size();

    // Enumerate words with mod-m products only; exact products are attached
    // to the returned identities (cheap: the matches are few).
    struct Node {
        std::vector<int> idx;
        std::vector<long long> rm;
    };
    std::vector<Node> level{{{}, id}};
    auto attach = [&](const std::vector<int>& idx) {
        Matrix prod = Matrix::identity(d);
        for (int i : idx) prod = prod * S.gen(i);
        out.words.emplace_back(idx, std::move(prod));
    };
    attach({}); // empty word, always congruent
    std::uint64_t emitted = 1;
    for (int len = 1; len <= max_len; ++len) {
        std::vector<Node> next;
        next.reserve(level.size() * static_cast<size_t>(S.size()));
        for (const Node& nd : level)
            for (int j = 0; j < S.size(); ++j) {
                Node child{nd.idx, mulmod(nd.rm, red[static_cast<size_t>(j)])};
                child.idx.push_back(j);
                if (child.rm == id) attach(child.idx);
                if (++emitted > budget) fail("BudgetExceeded", "congruence enumeration budget");
                next.push_back(std::move(child));
            }
        level = std::move(next);
    }
    return out;
}

bool dual_orbit_unbounded(const GeneratorSet& S, const std::vector<long long>& chi, int horizon,
                          double threshold) {
    bool nonzero = false;
    for (long long c : chi)
        if (c != 0) nonzero = true;
    if (!nonzero) fail("ZeroVector", "dual_orbit_unbounded needs chi != 0");
    if (static_cast<int>(chi.size()) != S.dim()) fail("InvalidConfig", "chi dimension mismatch");

    std::vector<DMatrix> gt;
    for (int j = 0; j < S.size(); ++j) gt.push_back(S.gen_double(j).transpose());
    std::vector<double> v(chi.begin(), chi.end());
    for (int step = 0; step < horizon; ++step) {
        double best = -1.0;
        std::vector<double> bx;
        for (const DMatrix& g : gt) {
            std::vector<double> y = g.apply(v);
            const double n = vec_norm(y);
            if (n > best) { best = n; bx = std::move(y); }
        }
        v = std::move(bx);
        if (best > threshold) return true;
    }
    return false;
}

} // namespace semidyn
