#include "semidyn/eigen.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <cmath>

namespace semidyn {

namespace {

Eigen::MatrixXd to_eigen(const DMatrix& m) {
    Eigen::MatrixXd e(m.dim, m.dim);
    for (int i = 0; i < m.dim; ++i)
        for (int j = 0; j < m.dim; ++j) e(i, j) = m(i, j);
    return e;
}

struct Moduli2 {
    double top = 0.0, second = 0.0;
    double top_eigenvalue = 0.0; // signed; meaningful only if real
    bool top_real = false;
};

// Eigenvalue moduli of a 2x2 via the characteristic polynomial, with the
// Vieta trick for the smaller root to avoid cancellation.
Moduli2 moduli_2x2(const DMatrix& g) {
    const double tr = g(0, 0) + g(1, 1);
    const double det = g(0, 0) * g(1, 1) - g(0, 1) * g(1, 0);
    const double disc = tr * tr - 4.0 * det;
    Moduli2 r;
    if (disc < 0.0) { // complex pair, |lambda|^2 = det
        r.top = r.second = std::sqrt(det);
        return r;
    }
    const double s = std::sqrt(disc);
    double big = (tr >= 0.0) ? (tr + s) / 2.0 : (tr - s) / 2.0;
    double small = (big != 0.0) ? det / big : (tr - s) / 2.0;
    if (std::fabs(small) > std::fabs(big)) std::swap(big, small);
    r.top = std::fabs(big);
    r.second = std::fabs(small);
    r.top_eigenvalue = big;
    r.top_real = true;
    return r;
}

ProjectivePoint eigenvector_2x2(const DMatrix& g, double lambda) {
    // (g - lambda I) v = 0; pick the better-conditioned row formula.
    const std::vector<double> cand1 = {g(0, 1), lambda - g(0, 0)};
    const std::vector<double> cand2 = {lambda - g(1, 1), g(1, 0)};
    const double n1 = vec_norm(cand1), n2 = vec_norm(cand2);
    if (n1 == 0.0 && n2 == 0.0) return project({1.0, 0.0}); // scalar matrix; any direction
    return project(n1 >= n2 ? cand1 : cand2);
}

struct ModuliN {
    double top = 0.0, second = 0.0;
    double top_eigenvalue = 0.0;
    bool top_real = false;
    Eigen::VectorXd top_vector;
};

ModuliN moduli_nxn(const DMatrix& g, bool want_vector) {
    Eigen::EigenSolver<Eigen::MatrixXd> es(to_eigen(g), want_vector);
    if (es.info() != Eigen::Success) fail("NumericalFailure", "eigendecomposition did not converge");
    const auto& vals = es.eigenvalues();
    int top = 0;
    for (int i = 1; i < vals.size(); ++i)
        if (std::abs(vals[i]) > std::abs(vals[top])) top = i;
    ModuliN r;
    r.top = std::abs(vals[top]);
    for (int i = 0; i < vals.size(); ++i) {
        if (i == top) continue;
        r.second = std::max(r.second, std::abs(vals[i]));
    }
    // A strictly dominant eigenvalue of a real matrix is real; accept a tiny
    // imaginary residue from the solver.
    if (std::fabs(vals[top].imag()) <= 1e-12 * std::max(1.0, r.top)) {
        r.top_real = true;
        r.top_eigenvalue = vals[top].real();
        if (want_vector) {
            Eigen::VectorXcd v = es.eigenvectors().col(top);
            // Rotate the arbitrary complex phase away before taking real parts.
            int lead = 0;
            for (int i = 1; i < v.size(); ++i)
                if (std::abs(v[i]) > std::abs(v[lead])) lead = i;
            const std::complex<double> phase = std::conj(v[lead]) / std::abs(v[lead]);
            r.top_vector = (v * phase).real();
        }
    }
    return r;
}

} // namespace

EigenDominantResult eigen_dominant(const DMatrix& g, double tol) {
    if (!(tol > 0.0) || tol > 1e-3) fail("InvalidConfig", "eigen_dominant tol must be in (0, 1e-3]");
    EigenDominantResult out;
    double top_eigenvalue = 0.0;
    bool top_real = false;
    ProjectivePoint vec;
    if (g.dim == 2) {
        const Moduli2 m = moduli_2x2(g);
        out.top_modulus = m.top;
        out.second_modulus = m.second;
        top_eigenvalue = m.top_eigenvalue;
        top_real = m.top_real;
        if (top_real && m.second < (1.0 - tol) * m.top) vec = eigenvector_2x2(g, m.top_eigenvalue);
    } else {
        const ModuliN m = moduli_nxn(g, true);
        out.top_modulus = m.top;
        out.second_modulus = m.second;
        top_eigenvalue = m.top_eigenvalue;
        top_real = m.top_real;
        if (top_real && m.second < (1.0 - tol) * m.top) {
            std::vector<double> v(m.top_vector.data(), m.top_vector.data() + m.top_vector.size());
            vec = project(v);
        }
    }
    if (!top_real || !(out.second_modulus < (1.0 - tol) * out.top_modulus)) return out;

    out.proximal = true;
    out.info.dominant_modulus = out.top_modulus;
    out.info.dominant_eigenvalue = top_eigenvalue;
    out.info.dominant_vector = vec;
    out.info.gap_ratio = out.top_modulus > 0.0 ? out.second_modulus / out.top_modulus : 1.0;

    // Residual invariant ||g v - lambda v|| <= tol ||g||.
    std::vector<double> gv = g.apply(vec.rep);
    double res = 0.0;
    for (int i = 0; i < g.dim; ++i) {
        const double r = gv[i] - top_eigenvalue * vec.rep[i];
        res += r * r;
    }
    if (std::sqrt(res) > tol * g.frobenius_norm())
        fail("NumericalFailure", "dominant eigenpair residual exceeds tolerance");
    return out;
}

EigenDominantResult eigen_dominant(const Matrix& g, double tol) {
    EigenDominantResult out = eigen_dominant(g.as_double(), tol);
    if (out.proximal) {
        // Hyperplane normal = dominant direction of the transpose (kernel of
        // the dominant dual functional).
        const DMatrix gt = g.as_double().transpose();
        EigenDominantResult t = eigen_dominant(gt, tol);
        if (t.proximal) out.info.hyperplane_normal = t.info.dominant_vector;
    }
    return out;
}

double spectral_radius(const DMatrix& g) {
    if (g.dim == 2) return moduli_2x2(g).top;
    return moduli_nxn(g, false).top;
}

double spectral_radius(const Matrix& g) { return spectral_radius(g.as_double()); }

bool is_expanding(const Matrix& g, double tol) { return spectral_radius(g) > 1.0 + tol; }

} // namespace semidyn
