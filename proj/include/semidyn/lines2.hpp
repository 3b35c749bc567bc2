#pragma once

#include <optional>
#include <string>
#include <vector>

#include "semidyn/matrix.hpp"

namespace semidyn {

// Exact arithmetic in Q(sqrt(D)) for a fixed nonnegative non-square integer D
// (D == 0 marks the purely rational case). Rational 2x2 matrices act on lines
// by Moebius maps, which preserve the field, so line orbits stay decidable.
struct QuadExt {
    Rational u; // u + v sqrt(D)
    Rational v;

    bool is_zero() const { return u == 0 && v == 0; }
};

struct QuadField {
    Int D; // 0, or a positive non-square

    QuadExt add(const QuadExt& a, const QuadExt& b) const { return {a.u + b.u, a.v + b.v}; }
    QuadExt sub(const QuadExt& a, const QuadExt& b) const { return {a.u - b.u, a.v - b.v}; }
    QuadExt mul(const QuadExt& a, const QuadExt& b) const {
        return {a.u * b.u + a.v * b.v * Rational(D), a.u * b.v + a.v * b.u};
    }
    QuadExt div(const QuadExt& a, const QuadExt& b) const;
    double to_double_val(const QuadExt& a) const;
};

// A line of P^1 over Q(sqrt(D)), canonical form: (1 : y) or (0 : 1).
struct ProjLine {
    bool finite = true; // finite => line (1 : slope_y); else the (0 : 1) axis
    QuadExt slope;      // y component when finite

    bool operator==(const ProjLine& o) const {
        if (finite != o.finite) return false;
        if (!finite) return true;
        return slope.u == o.slope.u && slope.v == o.slope.v;
    }
    bool operator<(const ProjLine& o) const {
        if (finite != o.finite) return finite < o.finite;
        if (!finite) return false;
        if (slope.u != o.slope.u) return slope.u < o.slope.u;
        return slope.v < o.slope.v;
    }
};

ProjLine make_line(const QuadField& F, const QuadExt& x, const QuadExt& y);

// Image of a line under an exact 2x2 matrix.
ProjLine act_line(const QuadField& F, const Matrix& g, const ProjLine& line);

std::string line_to_string(const QuadField& F, const ProjLine& line);

// Real eigenlines of an exact 2x2 matrix, together with their field. The
// invariance equation is the integer quadratic -c x^2 + (a - d) x y + b y^2 = 0
// in the direction (x, y). A scalar matrix yields the "every line" marker.
struct EigenLines2 {
    bool scalar = false;
    QuadField field;             // shared by the lines below
    std::vector<ProjLine> lines; // 0, 1, or 2 real eigenlines
};

EigenLines2 eigenlines_2x2(const Matrix& g);

// Orbit closure of `seed` under the generators, exact, aborted once the set
// exceeds `bound`. Returns the closed set, or nullopt on escape.
class GeneratorSet;
std::optional<std::vector<ProjLine>> line_orbit_closure(const QuadField& F, const GeneratorSet& S,
                                                        const ProjLine& seed, size_t bound);

} // namespace semidyn
