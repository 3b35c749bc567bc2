#pragma once

#include "semidyn/matrix.hpp"
#include "semidyn/projective.hpp"

namespace semidyn {

// Dominant eigenstructure of a proximal matrix: the simple eigenvalue of
// strictly maximal modulus, its direction, and the normal of the invariant
// complementary hyperplane (dominant direction of the transpose).
struct EigenInfo {
    double dominant_modulus = 0.0;
    double dominant_eigenvalue = 0.0; // signed, real
    ProjectivePoint dominant_vector;
    double gap_ratio = 1.0; // second modulus / dominant modulus, < 1
    ProjectivePoint hyperplane_normal;
};

struct EigenDominantResult {
    bool proximal = false;
    EigenInfo info;           // valid iff proximal
    double top_modulus = 0.0; // two largest moduli found (always set)
    double second_modulus = 0.0;
};

inline constexpr double kDefaultEigenTol = 1e-9;

// Proximality test: succeeds iff there is a real eigenvalue whose modulus
// exceeds every other modulus by relative margin > tol. d = 2 uses the
// characteristic polynomial in closed form; d >= 3 defers to a QR-type solver.
EigenDominantResult eigen_dominant(const Matrix& g, double tol = kDefaultEigenTol);
EigenDominantResult eigen_dominant(const DMatrix& g, double tol = kDefaultEigenTol);

double spectral_radius(const Matrix& g);
double spectral_radius(const DMatrix& g);

bool is_expanding(const Matrix& g, double tol = kDefaultEigenTol);

} // namespace semidyn
