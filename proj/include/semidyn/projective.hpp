#pragma once

#include <vector>

#include "semidyn/matrix.hpp"

namespace semidyn {

// A point of P^{d-1} = S^{d-1}/± stored as its sign-normalized unit
// representative: the first coordinate of largest absolute value is positive.
struct ProjectivePoint {
    std::vector<double> rep;

    int dim() const { return static_cast<int>(rep.size()); }
    bool operator==(const ProjectivePoint& o) const { return rep == o.rep; }
};

// project(v) = sign-normalized v/||v||. project(-v) == project(v) bitwise; a
// point that is already unit (within a few ulp) is not re-divided, so
// normalization is idempotent. Throws ZeroVector for ||v|| < 1e-300.
ProjectivePoint project(const std::vector<double>& v);
void sign_normalize(std::vector<double>& v);

// Allocation-free core of project(), for per-step loops.
void normalize_in_place(std::vector<double>& v);
double proj_distance_raw(const double* x, const double* y, int d);

// delta(u,v) = ||u ^ v|| for the unit representatives, in [0,1]. Computed as
// the root sum of squared 2x2 minors, which stays accurate down to ~1e-16
// absolute (no 1 - dot^2 cancellation).
double proj_distance(const ProjectivePoint& x, const ProjectivePoint& y);

// g.pi(x) = pi(g x). Exact-scalar matrices act as the identity (quotient).
ProjectivePoint act(const DMatrix& g, const ProjectivePoint& x);
ProjectivePoint act(const Matrix& g, const ProjectivePoint& x);

// Projective angle in [0, pi) for d = 2 points.
double proj_angle(const ProjectivePoint& x);

} // namespace semidyn
