#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "semidyn/words.hpp"

namespace semidyn {

enum class VerdictStatus { Satisfied, Violated, Inconclusive };

// Three-valued verdict: the conditions quantify over infinite orbits, so a
// finite search reports its budget along with any witness.
struct HypothesisVerdict {
    VerdictStatus status = VerdictStatus::Inconclusive;
    std::optional<Word> witness_word;
    std::string witness_text; // subspace/line description or budget note
    int search_depth = 0;
};

const char* to_string(VerdictStatus s);

struct H0Params {
    int trials = 16;
    int horizon = 256;
    double threshold = 1e6;
};

// Orbit unboundedness, heuristically: greedy norm growth from random unit
// starts. Violated only on the exact all-generators-orthogonal certificate.
HypothesisVerdict check_H0(const GeneratorSet& S, int trials = 16, int horizon = 256,
                           double threshold = 1e6);

// Strong irreducibility. d = 2: exact decision over line orbits in Q(sqrt(D))
// (candidates: eigenlines of words up to `depth`, plus the coordinate axes);
// d >= 3: sampling heuristic, Satisfied/Inconclusive only.
HypothesisVerdict check_H1(const GeneratorSet& S, int depth = 6);

// Existence of a proximal element: first proximal word in BFS order.
HypothesisVerdict check_H2(const GeneratorSet& S, int max_len = 8, double tol = 1e-9);

// First word g (letters applied greedily, stopping at the first norm crossing)
// with 1 < ||g x|| <= C, C = sup of generator operator norms.
struct EscapeResult {
    Word word;
    double final_norm = 0.0;
    double C = 0.0;
};
EscapeResult escape_from_ball(const GeneratorSet& S, const std::vector<double>& x,
                              int budget = 4096);

// All words of length <= max_len congruent to Id mod m, plus the order of the
// group generated by the generator reductions in GL(d, Z/mZ).
struct CongruenceResult {
    std::vector<Word> words;
    std::uint64_t group_order = 0;
};
CongruenceResult congruence_words(const GeneratorSet& S, long long m, int max_len,
                                  std::uint64_t budget = kDefaultWordBudget);

// Greedy growth of ||gamma^t chi||; true once `threshold` is passed.
bool dual_orbit_unbounded(const GeneratorSet& S, const std::vector<long long>& chi,
                          int horizon = 256, double threshold = 1e6);

} // namespace semidyn
