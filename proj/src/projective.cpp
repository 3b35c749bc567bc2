#include "semidyn/projective.hpp"

#include <cmath>
#include <limits>

namespace semidyn {

void sign_normalize(std::vector<double>& v) {
    int lead = 0;
    double best = -1.0;
    for (int i = 0; i < static_cast<int>(v.size()); ++i) {
        const double a = std::fabs(v[i]);
        if (a > best) { best = a; lead = i; }
    }
    if (v[lead] < 0.0)
        for (double& c : v) c = -c;
}

void normalize_in_place(std::vector<double>& v) {
    const double n = vec_norm(v);
    if (!(n > 1e-300)) fail("ZeroVector", "cannot project a (near-)zero vector");
    // Skip the division when already unit so project(project(v)) is bitwise
    // idempotent.
    if (std::fabs(n - 1.0) > 4.0 * std::numeric_limits<double>::epsilon())
        for (double& c : v) c /= n;
    sign_normalize(v);
}

ProjectivePoint project(const std::vector<double>& v) {
    ProjectivePoint p;
    p.rep = v;
    normalize_in_place(p.rep);
    return p;
}

double proj_distance_raw(const double* x, const double* y, int d) {
    double s = 0.0;
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j) {
            const double m = x[i] * y[j] - x[j] * y[i];
            s += m * m;
        }
    return std::min(1.0, std::sqrt(s));
}

double proj_distance(const ProjectivePoint& x, const ProjectivePoint& y) {
    return proj_distance_raw(x.rep.data(), y.rep.data(), x.dim());
}

namespace {

bool is_scalar(const DMatrix& g) {
    const double s = g(0, 0);
    for (int i = 0; i < g.dim; ++i)
        for (int j = 0; j < g.dim; ++j)
            if (g(i, j) != (i == j ? s : 0.0)) return false;
    return s != 0.0;
}

} // namespace

ProjectivePoint act(const DMatrix& g, const ProjectivePoint& x) {
    if (is_scalar(g)) return x; // homotheties are the identity on the quotient
    return project(g.apply(x.rep));
}

ProjectivePoint act(const Matrix& g, const ProjectivePoint& x) { return act(g.as_double(), x); }

double proj_angle(const ProjectivePoint& x) {
    if (x.dim() != 2) fail("InvalidConfig", "proj_angle requires d = 2");
    double t = std::atan2(x.rep[1], x.rep[0]);
    const double pi = 3.14159265358979323846;
    if (t < 0.0) t += pi;
    if (t >= pi) t -= pi;
    return t;
}

} // namespace semidyn
