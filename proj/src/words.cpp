#include "semidyn/words.hpp"

#include <cmath>

namespace semidyn {

std::string word_name(const GeneratorSet& S, const std::vector<int>& indices) {
    if (indices.empty()) return "e";
    bool single = true;
    for (int i = 0; i < S.size(); ++i)
        if (S.label(i).size() != 1) { single = false; break; }
    std::string out;
    for (size_t k = 0; k < indices.size(); ++k) {
        if (!single && k) out += '.';
        out += S.label(indices[k]);
    }
    return out;
}

std::string word_name(const GeneratorSet& S, const Word& w) { return word_name(S, w.indices); }

std::uint64_t for_each_word(const GeneratorSet& S, int max_len,
                            const std::function<void(const Word&)>& fn, std::uint64_t budget) {
    if (max_len < 0) fail("InvalidConfig", "max_len must be >= 0");
    if (static_cast<double>(max_len) * std::log2(static_cast<double>(S.size())) >
        std::log2(static_cast<double>(budget)) + 1e-9)
        fail("BudgetExceeded", "|S|^max_len exceeds the word budget");

    std::uint64_t emitted = 0;
    std::vector<Word> level;
    level.emplace_back(S.dim());
    fn(level.front());
    ++emitted;
    for (int len = 1; len <= max_len; ++len) {
        std::vector<Word> next;
        next.reserve(level.size() * static_cast<size_t>(S.size()));
        for (const Word& w : level)
            for (int j = 0; j < S.size(); ++j) {
                std::vector<int> idx = w.indices;
                idx.push_back(j);
                next.emplace_back(std::move(idx), w.product * S.gen(j));
                fn(next.back());
                ++emitted;
            }
        level = std::move(next);
    }
    return emitted;
}

std::vector<Word> enumerate_words(const GeneratorSet& S, int max_len, std::uint64_t budget) {
    std::vector<Word> out;
    for_each_word(S, max_len, [&](const Word& w) { out.push_back(w); }, budget);
    return out;
}

std::vector<std::vector<double>> linear_orbit(const GeneratorSet& S, const std::vector<double>& v0,
                                              int max_len, std::uint64_t budget) {
    if (static_cast<int>(v0.size()) != S.dim()) fail("InvalidConfig", "vector dimension mismatch");
    std::vector<std::vector<double>> out;
    out.push_back(v0);
    size_t level_begin = 0;
    std::uint64_t total = 1;
    for (int len = 1; len <= max_len; ++len) {
        const size_t level_end = out.size();
        for (size_t p = level_begin; p < level_end; ++p)
            for (int j = 0; j < S.size(); ++j) {
                out.push_back(S.gen_double(j).apply(out[p]));
                if (++total > budget) fail("BudgetExceeded", "linear orbit exceeded the budget");
            }
        level_begin = level_end;
    }
    return out;
}

} // namespace semidyn
