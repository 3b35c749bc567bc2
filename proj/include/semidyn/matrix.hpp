#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "semidyn/error.hpp"

namespace semidyn {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& r) { return r.convert_to<double>(); }
inline double to_double(const Int& n) { return n.convert_to<double>(); }

enum class Domain { ExactInt, ExactRational, Float64 };

// Plain row-major double matrix for the numeric hot paths (walk iterations,
// orbit clouds). Kept separate from Matrix so the exact layer never leaks
// rationals into per-step loops.
struct DMatrix {
    int dim = 0;
    std::vector<double> a; // row-major, dim*dim

    double operator()(int i, int j) const { return a[static_cast<size_t>(i) * dim + j]; }
    double& operator()(int i, int j) { return a[static_cast<size_t>(i) * dim + j]; }

    static DMatrix identity(int d);
    DMatrix transpose() const;
    DMatrix operator*(const DMatrix& o) const;

    // y = M x
    void apply(const double* x, double* y) const;
    std::vector<double> apply(const std::vector<double>& x) const;

    double frobenius_norm() const;
    double max_abs() const;
};

// Square matrix over an exact domain (arbitrary-precision integers/rationals)
// or float64. Exact matrices always carry a float64 mirror so numeric
// diagnostics never re-convert. Construction rejects det == 0.
class Matrix {
public:
    Matrix(int dim, std::vector<Rational> entries);          // exact; domain inferred
    Matrix(int dim, std::vector<double> entries);             // float64

    static Matrix identity(int dim);
    static Matrix from_int_rows(const std::vector<std::vector<long long>>& rows);

    int dim() const { return dim_; }
    Domain domain() const { return domain_; }
    bool is_exact() const { return domain_ != Domain::Float64; }
    bool is_integer() const;

    const Rational& at(int i, int j) const;
    double fat(int i, int j) const { return flt_(i, j); }
    const DMatrix& as_double() const { return flt_; }

    Matrix operator*(const Matrix& o) const;
    Matrix transpose() const;
    Matrix inverse() const; // exact domains only

    const Rational& det() const; // exact domains only, cached
    double det_double() const;

    bool operator==(const Matrix& o) const;

    std::string to_string() const;

private:
    void check_invertible();

    int dim_;
    Domain domain_;
    std::vector<Rational> exact_; // empty for Float64
    DMatrix flt_;
    mutable std::optional<Rational> det_cache_;
};

// Exact orthogonality test: g^t g == Id. Requires an exact-domain matrix.
bool is_orthogonal_exact(const Matrix& g);

double vec_norm(const double* x, int d);
double vec_norm(const std::vector<double>& x);

} // namespace semidyn
