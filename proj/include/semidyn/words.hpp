#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "semidyn/generators.hpp"

namespace semidyn {

// A word over the generator alphabet with its exact product cached. Leftmost
// index is applied last: indices (i1, ..., ik) name g_{i1} g_{i2} ... g_{ik}.
struct Word {
    std::vector<int> indices;
    Matrix product;

    explicit Word(int dim) : product(Matrix::identity(dim)) {}
    Word(std::vector<int> idx, Matrix prod) : indices(std::move(idx)), product(std::move(prod)) {}

    int length() const { return static_cast<int>(indices.size()); }
};

std::string word_name(const GeneratorSet& S, const Word& w);
std::string word_name(const GeneratorSet& S, const std::vector<int>& indices);

inline constexpr std::uint64_t kDefaultWordBudget = 1ull << 24;

// Breadth-first, lexicographic within a level; yields sum_{k<=max_len} |S|^k
// words starting with the empty word. Products are exact: each level extends
// the parent product by one right factor.
std::uint64_t for_each_word(const GeneratorSet& S, int max_len,
                            const std::function<void(const Word&)>& fn,
                            std::uint64_t budget = kDefaultWordBudget);

std::vector<Word> enumerate_words(const GeneratorSet& S, int max_len,
                                  std::uint64_t budget = kDefaultWordBudget);

// BFS orbit of a vector under the generator's float mirrors, all words up to
// max_len (2^... vectors; no products are formed). Returns points in BFS
// order, including v0 itself.
std::vector<std::vector<double>> linear_orbit(const GeneratorSet& S, const std::vector<double>& v0,
                                              int max_len, std::uint64_t budget = kDefaultWordBudget);

} // namespace semidyn
