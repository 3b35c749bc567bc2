#pragma once

#include "semidyn/matrix.hpp"

namespace semidyn {

// g = k diag(a) k' with k, k' orthogonal and a^1 >= ... >= a^d > 0.
struct KAKFactorization {
    DMatrix k;
    std::vector<double> singular_values;
    DMatrix k_prime;
};

KAKFactorization kak(const DMatrix& g);
KAKFactorization kak(const Matrix& g);

// Largest singular value.
double operator_norm(const DMatrix& g);
double operator_norm(const Matrix& g);

} // namespace semidyn
