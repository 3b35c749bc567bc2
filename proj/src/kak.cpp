#include "semidyn/kak.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <cmath>

namespace semidyn {

namespace {

DMatrix from_eigen(const Eigen::MatrixXd& e) {
    DMatrix m;
    m.dim = static_cast<int>(e.rows());
    m.a.resize(static_cast<size_t>(m.dim) * m.dim);
    for (int i = 0; i < m.dim; ++i)
        for (int j = 0; j < m.dim; ++j) m(i, j) = e(i, j);
    return m;
}

} // namespace

KAKFactorization kak(const DMatrix& g) {
    Eigen::MatrixXd M(g.dim, g.dim);
    for (int i = 0; i < g.dim; ++i)
        for (int j = 0; j < g.dim; ++j) M(i, j) = g(i, j);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(M, Eigen::ComputeFullU | Eigen::ComputeFullV);

    KAKFactorization f;
    f.k = from_eigen(svd.matrixU());
    f.k_prime = from_eigen(svd.matrixV().transpose());
    f.singular_values.assign(svd.singularValues().data(),
                             svd.singularValues().data() + svd.singularValues().size());

    // Reconstruction and determinant invariants; Jacobi iteration failures show
    // up here rather than in a status flag.
    Eigen::MatrixXd R = svd.matrixU() * svd.singularValues().asDiagonal() * svd.matrixV().transpose();
    const double scale = M.norm();
    if ((R - M).norm() > 1e-9 * scale)
        fail("NumericalFailure", "kak reconstruction residual too large");
    double prod = 1.0;
    for (double s : f.singular_values) {
        if (!(s > 0.0)) fail("NumericalFailure", "kak produced a nonpositive singular value");
        prod *= s;
    }
    const double ad = std::fabs(M.determinant());
    if (ad > 0.0 && std::fabs(prod - ad) > 1e-9 * std::max(prod, ad))
        fail("NumericalFailure", "kak singular value product disagrees with |det|");
    return f;
}

KAKFactorization kak(const Matrix& g) { return kak(g.as_double()); }

double operator_norm(const DMatrix& g) {
    Eigen::MatrixXd M(g.dim, g.dim);
    for (int i = 0; i < g.dim; ++i)
        for (int j = 0; j < g.dim; ++j) M(i, j) = g(i, j);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(M);
    return svd.singularValues()[0];
}

double operator_norm(const Matrix& g) { return operator_norm(g.as_double()); }

} // namespace semidyn
