#include "semidyn/lines2.hpp"

#include <cmath>
#include <set>
#include <sstream>

#include "semidyn/generators.hpp"

namespace semidyn {

QuadExt QuadField::div(const QuadExt& a, const QuadExt& b) const {
    // (u - v sqrt(D)) / (u^2 - v^2 D) is the inverse of u + v sqrt(D); the
    // norm only vanishes at zero because D is not a square.
    const Rational norm = b.u * b.u - b.v * b.v * Rational(D);
    if (norm == 0) fail("NumericalFailure", "division by zero in Q(sqrt(D))");
    const QuadExt binv{b.u / norm, -b.v / norm};
    return mul(a, binv);
}

double QuadField::to_double_val(const QuadExt& a) const {
    return to_double(a.u) + to_double(a.v) * std::sqrt(to_double(Int(D)));
}

ProjLine make_line(const QuadField& F, const QuadExt& x, const QuadExt& y) {
    if (x.is_zero() && y.is_zero()) fail("InvalidMatrix", "zero direction for a line");
    ProjLine l;
    if (x.is_zero()) {
        l.finite = false;
        return l;
    }
    l.finite = true;
    l.slope = F.div(y, x);
    return l;
}

ProjLine act_line(const QuadField& F, const Matrix& g, const ProjLine& line) {
    const QuadExt a{g.at(0, 0), 0}, b{g.at(0, 1), 0}, c{g.at(1, 0), 0}, d{g.at(1, 1), 0};
    QuadExt x{1, 0}, y = line.finite ? line.slope : QuadExt{0, 0};
    if (!line.finite) { x = {0, 0}; y = {1, 0}; }
    return make_line(F, F.add(F.mul(a, x), F.mul(b, y)), F.add(F.mul(c, x), F.mul(d, y)));
}

std::string line_to_string(const QuadField& F, const ProjLine& line) {
    if (!line.finite) return "(0:1)";
    std::ostringstream os;
    os << "(1:";
    if (line.slope.v == 0) {
        os << line.slope.u.str();
    } else {
        os << line.slope.u.str() << "+" << line.slope.v.str() << "*sqrt(" << F.D.str() << ")";
        os << "~" << F.to_double_val(line.slope);
    }
    os << ")";
    return os.str();
}

EigenLines2 eigenlines_2x2(const Matrix& g) {
    if (g.dim() != 2) fail("InvalidConfig", "eigenlines_2x2 requires d = 2");
    // Invariance of direction (x, y): A x^2 + B x y + C y^2 = 0 with
    // A = -g21, B = g11 - g22, C = g12 (cross product of g(x,y) and (x,y)).
    Rational A = -g.at(1, 0);
    Rational B = g.at(0, 0) - g.at(1, 1);
    Rational C = g.at(0, 1);
    EigenLines2 out;
    if (A == 0 && B == 0 && C == 0) {
        out.scalar = true;
        out.field.D = 0;
        return out;
    }
    // Clear denominators to land in Z[x, y].
    Int lcm = 1;
    for (const Rational* r : {&A, &B, &C})
        lcm = boost::multiprecision::lcm(lcm, boost::multiprecision::denominator(*r));
    const Int Ai = boost::multiprecision::numerator(Rational(A * lcm));
    const Int Bi = boost::multiprecision::numerator(Rational(B * lcm));
    const Int Ci = boost::multiprecision::numerator(Rational(C * lcm));

    if (Ai == 0) {
        // y (Bi x + Ci y) = 0: the (1:0) axis, plus (-Ci : Bi) when Bi != 0.
        out.field.D = 0;
        out.lines.push_back(make_line(out.field, {1, 0}, {0, 0}));
        if (Bi != 0) {
            const ProjLine l = make_line(out.field, {Rational(-Ci), 0}, {Rational(Bi), 0});
            if (!(l == out.lines[0])) out.lines.push_back(l);
        }
        return out;
    }
    const Int disc = Bi * Bi - 4 * Ai * Ci;
    if (disc < 0) {
        out.field.D = 0; // complex pair: no real eigenline
        return out;
    }
    const Int s = boost::multiprecision::sqrt(disc);
    if (s * s == disc) {
        // Rational roots x/y = (-Bi +/- s) / (2 Ai).
        out.field.D = 0;
        const Rational r1 = Rational(-Bi + s) / Rational(2 * Ai);
        const Rational r2 = Rational(-Bi - s) / Rational(2 * Ai);
        out.lines.push_back(make_line(out.field, {r1, 0}, {1, 0}));
        if (r1 != r2) out.lines.push_back(make_line(out.field, {r2, 0}, {1, 0}));
        return out;
    }
    out.field.D = disc;
    const Rational u = Rational(-Bi) / Rational(2 * Ai);
    const Rational v1 = Rational(1) / Rational(2 * Ai);
    out.lines.push_back(make_line(out.field, {u, v1}, {1, 0}));
    out.lines.push_back(make_line(out.field, {u, -v1}, {1, 0}));
    return out;
}

std::optional<std::vector<ProjLine>> line_orbit_closure(const QuadField& F, const GeneratorSet& S,
                                                        const ProjLine& seed, size_t bound) {
    std::set<ProjLine> seen{seed};
    std::vector<ProjLine> frontier{seed};
    while (!frontier.empty()) {
        std::vector<ProjLine> next;
        for (const ProjLine& l : frontier)
            for (int j = 0; j < S.size(); ++j) {
                ProjLine img = act_line(F, S.gen(j), l);
                if (seen.insert(img).second) {
                    if (seen.size() > bound) return std::nullopt;
                    next.push_back(std::move(img));
                }
            }
        frontier = std::move(next);
    }
    return std::vector<ProjLine>(seen.begin(), seen.end());
}

} // namespace semidyn
