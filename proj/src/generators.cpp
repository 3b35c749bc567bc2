#include "semidyn/generators.hpp"

#include <fstream>
#include <sstream>

#include "semidyn/kak.hpp"

namespace semidyn {

GeneratorSet::GeneratorSet(int dim, std::vector<Matrix> generators, std::vector<std::string> labels)
    : dim_(dim), gens_(std::move(generators)), labels_(std::move(labels)) {
    if (dim_ < 2) fail("InvalidConfig", "generator sets need dim >= 2");
    if (gens_.empty()) fail("InvalidConfig", "generator set is empty");
    if (labels_.size() != gens_.size()) fail("InvalidConfig", "label/generator count mismatch");
    integer_flag_ = true;
    for (const Matrix& g : gens_) {
        if (g.dim() != dim_) fail("InvalidConfig", "generator dimension mismatch");
        if (!g.is_exact()) fail("InvalidConfig", "generators must be exact matrices");
        if (!g.is_integer()) integer_flag_ = false;
        dets_.push_back(g.det());
    }
}

double GeneratorSet::norm_bound() const {
    if (norm_bound_ < 0.0) {
        double m = 0.0;
        for (const Matrix& g : gens_) m = std::max(m, operator_norm(g));
        norm_bound_ = m;
    }
    return norm_bound_;
}

double GeneratorSet::min_norm() const {
    if (min_norm_ < 0.0) {
        double m = operator_norm(gens_[0]);
        for (const Matrix& g : gens_) m = std::min(m, operator_norm(g));
        min_norm_ = m;
    }
    return min_norm_;
}

namespace {

[[noreturn]] void parse_fail(int line, const std::string& what) {
    fail("ParseError", "line " + std::to_string(line) + ": " + what);
}

Rational parse_entry(const std::string& tok, int line) {
    const auto slash = tok.find('/');
    try {
        if (slash == std::string::npos) return Rational(Int(tok));
        const Int num(tok.substr(0, slash));
        const Int den(tok.substr(slash + 1));
        if (den == 0) parse_fail(line, "zero denominator in '" + tok + "'");
        return Rational(num) / Rational(den);
    } catch (const Error&) {
        throw;
    } catch (...) {
        parse_fail(line, "bad matrix entry '" + tok + "'");
    }
}

std::string strip(const std::string& s) {
    const auto h = s.find('#');
    std::string t = (h == std::string::npos) ? s : s.substr(0, h);
    const auto b = t.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = t.find_last_not_of(" \t\r\n");
    return t.substr(b, e - b + 1);
}

} // namespace

GeneratorSet parse_generators(const std::string& text) {
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    int dim = 0;
    std::vector<Matrix> gens;
    std::vector<std::string> labels;

    std::string pending_label;
    std::vector<Rational> pending;
    int pending_line = 0;

    auto flush = [&]() {
        if (pending_label.empty()) return;
        if (static_cast<int>(pending.size()) != dim * dim)
            parse_fail(pending_line, "generator '" + pending_label + "' has " +
                                         std::to_string(pending.size()) + " entries, expected " +
                                         std::to_string(dim * dim));
        try {
            gens.emplace_back(dim, pending);
        } catch (const Error& e) {
            parse_fail(pending_line, "generator '" + pending_label + "': " + e.what());
        }
        labels.push_back(pending_label);
        pending_label.clear();
        pending.clear();
    };

    while (std::getline(in, raw)) {
        ++lineno;
        const std::string line = strip(raw);
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string head;
        ls >> head;
        if (head == "dim") {
            if (dim != 0) parse_fail(lineno, "duplicate dim header");
            if (!(ls >> dim) || dim < 2) parse_fail(lineno, "dim must be an integer >= 2");
            continue;
        }
        if (dim == 0) parse_fail(lineno, "expected 'dim d' header first");
        if (head == "gen") {
            flush();
            if (!(ls >> pending_label)) parse_fail(lineno, "gen needs a label");
            pending_line = lineno;
            continue;
        }
        if (pending_label.empty()) parse_fail(lineno, "matrix rows before any 'gen <label>'");
        std::istringstream row(line);
        std::string tok;
        int count = 0;
        while (row >> tok) {
            pending.push_back(parse_entry(tok, lineno));
            ++count;
        }
        if (count != dim) parse_fail(lineno, "expected " + std::to_string(dim) + " entries per row");
    }
    if (dim == 0) parse_fail(lineno ? lineno : 1, "empty generator file");
    flush();
    if (gens.empty()) parse_fail(lineno, "no generators defined");
    return GeneratorSet(dim, std::move(gens), std::move(labels));
}

GeneratorSet load_generators(const std::string& path) {
    std::ifstream f(path);
    if (!f) fail("ParseError", "cannot open generator file '" + path + "'");
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse_generators(ss.str());
}

} // namespace semidyn
