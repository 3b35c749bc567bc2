#include "semidyn/matrix.hpp"

#include <cmath>
#include <sstream>

namespace semidyn {

DMatrix DMatrix::identity(int d) {
    DMatrix m;
    m.dim = d;
    m.a.assign(static_cast<size_t>(d) * d, 0.0);
    for (int i = 0; i < d; ++i) m(i, i) = 1.0;
    return m;
}

DMatrix DMatrix::transpose() const {
    DMatrix t;
    t.dim = dim;
    t.a.resize(a.size());
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) t(j, i) = (*this)(i, j);
    return t;
}

DMatrix DMatrix::operator*(const DMatrix& o) const {
    DMatrix r;
    r.dim = dim;
    r.a.assign(a.size(), 0.0);
    for (int i = 0; i < dim; ++i)
        for (int k = 0; k < dim; ++k) {
            const double v = (*this)(i, k);
            if (v == 0.0) continue;
            for (int j = 0; j < dim; ++j) r(i, j) += v * o(k, j);
        }
    return r;
}

void DMatrix::apply(const double* x, double* y) const {
    for (int i = 0; i < dim; ++i) {
        double s = 0.0;
        for (int j = 0; j < dim; ++j) s += (*this)(i, j) * x[j];
        y[i] = s;
    }
}

std::vector<double> DMatrix::apply(const std::vector<double>& x) const {
    std::vector<double> y(static_cast<size_t>(dim));
    apply(x.data(), y.data());
    return y;
}

double DMatrix::frobenius_norm() const {
    double s = 0.0;
    for (double v : a) s += v * v;
    return std::sqrt(s);
}

double DMatrix::max_abs() const {
    double m = 0.0;
    for (double v : a) m = std::max(m, std::fabs(v));
    return m;
}

double vec_norm(const double* x, int d) {
    double s = 0.0;
    for (int i = 0; i < d; ++i) s += x[i] * x[i];
    return std::sqrt(s);
}

double vec_norm(const std::vector<double>& x) { return vec_norm(x.data(), static_cast<int>(x.size())); }

namespace {

DMatrix mirror_of(int dim, const std::vector<Rational>& exact) {
    DMatrix m;
    m.dim = dim;
    m.a.resize(exact.size());
    for (size_t i = 0; i < exact.size(); ++i) m.a[i] = to_double(exact[i]);
    return m;
}

// Fraction-free enough for small dims: plain rational Gaussian elimination.
Rational det_exact(int n, std::vector<Rational> a) {
    Rational det = 1;
    for (int col = 0; col < n; ++col) {
        int pivot = -1;
        for (int r = col; r < n; ++r)
            if (a[static_cast<size_t>(r) * n + col] != 0) { pivot = r; break; }
        if (pivot < 0) return Rational(0);
        if (pivot != col) {
            for (int j = 0; j < n; ++j)
                std::swap(a[static_cast<size_t>(pivot) * n + j], a[static_cast<size_t>(col) * n + j]);
            det = -det;
        }
        const Rational p = a[static_cast<size_t>(col) * n + col];
        det *= p;
        for (int r = col + 1; r < n; ++r) {
            const Rational f = a[static_cast<size_t>(r) * n + col] / p;
            if (f == 0) continue;
            for (int j = col; j < n; ++j)
                a[static_cast<size_t>(r) * n + j] -= f * a[static_cast<size_t>(col) * n + j];
        }
    }
    return det;
}

} // namespace

Matrix::Matrix(int dim, std::vector<Rational> entries) : dim_(dim) {
    if (dim < 1) fail("InvalidMatrix", "dimension must be >= 1");
    if (entries.size() != static_cast<size_t>(dim) * dim)
        fail("InvalidMatrix", "entry count does not match dimension");
    exact_ = std::move(entries);
    bool integral = true;
    for (const Rational& r : exact_)
        if (boost::multiprecision::denominator(r) != 1) { integral = false; break; }
    domain_ = integral ? Domain::ExactInt : Domain::ExactRational;
    flt_ = mirror_of(dim_, exact_);
    check_invertible();
}

Matrix::Matrix(int dim, std::vector<double> entries) : dim_(dim), domain_(Domain::Float64) {
    if (dim < 1) fail("InvalidMatrix", "dimension must be >= 1");
    if (entries.size() != static_cast<size_t>(dim) * dim)
        fail("InvalidMatrix", "entry count does not match dimension");
    flt_.dim = dim;
    flt_.a = std::move(entries);
    check_invertible();
}

Matrix Matrix::identity(int dim) {
    std::vector<Rational> e(static_cast<size_t>(dim) * dim, Rational(0));
    for (int i = 0; i < dim; ++i) e[static_cast<size_t>(i) * dim + i] = 1;
    return Matrix(dim, std::move(e));
}

Matrix Matrix::from_int_rows(const std::vector<std::vector<long long>>& rows) {
    const int d = static_cast<int>(rows.size());
    std::vector<Rational> e;
    e.reserve(static_cast<size_t>(d) * d);
    for (const auto& row : rows) {
        if (static_cast<int>(row.size()) != d) fail("InvalidMatrix", "ragged rows");
        for (long long v : row) e.emplace_back(v);
    }
    return Matrix(d, std::move(e));
}

bool Matrix::is_integer() const { return domain_ == Domain::ExactInt; }

const Rational& Matrix::at(int i, int j) const {
    if (!is_exact()) fail("InvalidMatrix", "exact entries requested from a float matrix");
    return exact_[static_cast<size_t>(i) * dim_ + j];
}

Matrix Matrix::operator*(const Matrix& o) const {
    if (dim_ != o.dim_) fail("InvalidMatrix", "dimension mismatch in product");
    if (is_exact() && o.is_exact()) {
        std::vector<Rational> r(static_cast<size_t>(dim_) * dim_, Rational(0));
        for (int i = 0; i < dim_; ++i)
            for (int k = 0; k < dim_; ++k) {
                const Rational& v = at(i, k);
                if (v == 0) continue;
                for (int j = 0; j < dim_; ++j) r[static_cast<size_t>(i) * dim_ + j] += v * o.at(k, j);
            }
        return Matrix(dim_, std::move(r));
    }
    DMatrix r = flt_ * o.flt_;
    return Matrix(dim_, std::move(r.a));
}

Matrix Matrix::transpose() const {
    if (is_exact()) {
        std::vector<Rational> t(exact_.size());
        for (int i = 0; i < dim_; ++i)
            for (int j = 0; j < dim_; ++j) t[static_cast<size_t>(j) * dim_ + i] = at(i, j);
        return Matrix(dim_, std::move(t));
    }
    DMatrix t = flt_.transpose();
    return Matrix(dim_, std::move(t.a));
}

Matrix Matrix::inverse() const {
    if (!is_exact()) fail("InvalidMatrix", "exact inverse requires an exact matrix");
    const int n = dim_;
    std::vector<Rational> a = exact_;
    std::vector<Rational> inv(static_cast<size_t>(n) * n, Rational(0));
    for (int i = 0; i < n; ++i) inv[static_cast<size_t>(i) * n + i] = 1;
    for (int col = 0; col < n; ++col) {
        int pivot = -1;
        for (int r = col; r < n; ++r)
            if (a[static_cast<size_t>(r) * n + col] != 0) { pivot = r; break; }
        if (pivot < 0) fail("InvalidMatrix", "singular matrix in inverse");
        if (pivot != col)
            for (int j = 0; j < n; ++j) {
                std::swap(a[static_cast<size_t>(pivot) * n + j], a[static_cast<size_t>(col) * n + j]);
                std::swap(inv[static_cast<size_t>(pivot) * n + j], inv[static_cast<size_t>(col) * n + j]);
            }
        const Rational p = a[static_cast<size_t>(col) * n + col];
        for (int j = 0; j < n; ++j) {
            a[static_cast<size_t>(col) * n + j] /= p;
            inv[static_cast<size_t>(col) * n + j] /= p;
        }
        for (int r = 0; r < n; ++r) {
            if (r == col) continue;
            const Rational f = a[static_cast<size_t>(r) * n + col];
            if (f == 0) continue;
            for (int j = 0; j < n; ++j) {
                a[static_cast<size_t>(r) * n + j] -= f * a[static_cast<size_t>(col) * n + j];
                inv[static_cast<size_t>(r) * n + j] -= f * inv[static_cast<size_t>(col) * n + j];
            }
        }
    }
    return Matrix(n, std::move(inv));
}

const Rational& Matrix::det() const {
    if (!is_exact()) fail("InvalidMatrix", "exact det requires an exact matrix");
    if (!det_cache_) det_cache_ = det_exact(dim_, exact_);
    return *det_cache_;
}

double Matrix::det_double() const {
    if (is_exact()) return to_double(det());
    // LU with partial pivoting; dims are small.
    const int n = dim_;
    std::vector<double> a = flt_.a;
    double det = 1.0;
    for (int col = 0; col < n; ++col) {
        int pivot = col;
        for (int r = col + 1; r < n; ++r)
            if (std::fabs(a[static_cast<size_t>(r) * n + col]) >
                std::fabs(a[static_cast<size_t>(pivot) * n + col]))
                pivot = r;
        if (a[static_cast<size_t>(pivot) * n + col] == 0.0) return 0.0;
        if (pivot != col) {
            for (int j = 0; j < n; ++j)
                std::swap(a[static_cast<size_t>(pivot) * n + j], a[static_cast<size_t>(col) * n + j]);
            det = -det;
        }
        const double p = a[static_cast<size_t>(col) * n + col];
        det *= p;
        for (int r = col + 1; r < n; ++r) {
            const double f = a[static_cast<size_t>(r) * n + col] / p;
            for (int j = col; j < n; ++j)
                a[static_cast<size_t>(r) * n + j] -= f * a[static_cast<size_t>(col) * n + j];
        }
    }
    return det;
}

bool Matrix::operator==(const Matrix& o) const {
    if (dim_ != o.dim_) return false;
    if (is_exact() && o.is_exact()) return exact_ == o.exact_;
    return flt_.a == o.flt_.a;
}

void Matrix::check_invertible() {
    if (is_exact()) {
        if (det() == 0) fail("InvalidMatrix", "singular matrix");
    } else {
        if (det_double() == 0.0) fail("InvalidMatrix", "numerically singular matrix");
    }
}

std::string Matrix::to_string() const {
    std::ostringstream os;
    os << "[";
    for (int i = 0; i < dim_; ++i) {
        os << (i ? "; " : "");
        for (int j = 0; j < dim_; ++j) {
            if (j) os << " ";
            if (is_exact())
                os << at(i, j).str();
            else
                os << fat(i, j);
        }
    }
    os << "]";
    return os.str();
}

bool is_orthogonal_exact(const Matrix& g) {
    if (!g.is_exact()) fail("InvalidMatrix", "exact orthogonality test requires an exact matrix");
    const Matrix gtg = g.transpose() * g;
    return gtg == Matrix::identity(g.dim());
}

} // namespace semidyn
