#pragma once

#include <string>
#include <vector>

#include "semidyn/matrix.hpp"

namespace semidyn {

// A finite labeled generating set for a sub-semigroup of GL(d). Generators are
// exact (integer or rational entries); everything downstream that needs floats
// reads the mirrors.
class GeneratorSet {
public:
    GeneratorSet(int dim, std::vector<Matrix> generators, std::vector<std::string> labels);

    int dim() const { return dim_; }
    int size() const { return static_cast<int>(gens_.size()); }
    const Matrix& gen(int i) const { return gens_[static_cast<size_t>(i)]; }
    const DMatrix& gen_double(int i) const { return gens_[static_cast<size_t>(i)].as_double(); }
    const std::string& label(int i) const { return labels_[static_cast<size_t>(i)]; }
    bool integer_flag() const { return integer_flag_; }
    const std::vector<Rational>& dets() const { return dets_; }

    // sup of generator operator norms; the escape constant C.
    double norm_bound() const;
    // min of generator operator norms (precision-cap base for float orbits).
    double min_norm() const;

private:
    int dim_;
    std::vector<Matrix> gens_;
    std::vector<std::string> labels_;
    bool integer_flag_;
    std::vector<Rational> dets_;
    mutable double norm_bound_ = -1.0;
    mutable double min_norm_ = -1.0;
};

// Plain-text format:
//   dim 2
//   gen a
//   2 1
//   1 1
//   gen b
//   3 2
//   1 1
// Entries are integers or rationals p/q; '#' starts a comment. Errors cite
// 1-based line numbers.
GeneratorSet parse_generators(const std::string& text);
GeneratorSet load_generators(const std::string& path);

} // namespace semidyn
