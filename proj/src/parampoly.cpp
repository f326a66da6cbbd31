#include "petlab/parampoly.hpp"

#include <algorithm>
#include <cctype>

namespace petlab {

namespace {

void trim(Monomial& m) {
    while (!m.empty() && m.back() == 0) m.pop_back();
}

int mono_degree(const Monomial& m) {
    int d = 0;
    for (unsigned e : m) d += static_cast<int>(e);
    return d;
}

// Graded lex: higher total degree first, then lex on exponents.
bool mono_render_before(const Monomial& a, const Monomial& b) {
    int da = mono_degree(a), db = mono_degree(b);
    if (da != db) return da > db;
    return a > b;
}

}  // namespace

ParamPoly ParamPoly::constant(Int c) {
    ParamPoly p;
    if (c != 0) p.terms_[{}] = std::move(c);
    return p;
}

ParamPoly ParamPoly::var(int index) {
    ParamPoly p;
    Monomial m(static_cast<size_t>(index) + 1, 0);
    m[static_cast<size_t>(index)] = 1;
    p.terms_[m] = 1;
    return p;
}

bool ParamPoly::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
}

Int ParamPoly::constant_value() const {
    if (terms_.empty()) return 0;
    if (!is_constant()) throw Error("domain", "constant_value on non-constant polynomial " + str());
    return terms_.begin()->second;
}

int ParamPoly::total_degree() const {
    int d = -1;
    for (const auto& [m, c] : terms_) d = std::max(d, mono_degree(m));
    return d;
}

int ParamPoly::num_vars() const {
    size_t n = 0;
    for (const auto& [m, c] : terms_) n = std::max(n, m.size());
    return static_cast<int>(n);
}

void ParamPoly::add_term(const Monomial& mono, const Int& c) {
    if (c == 0) return;
    Monomial m = mono;
    trim(m);
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_.emplace(std::move(m), c);
    } else {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

ParamPoly ParamPoly::operator-() const {
    ParamPoly r;
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
    return r;
}

ParamPoly ParamPoly::operator+(const ParamPoly& o) const {
    ParamPoly r = *this;
    for (const auto& [m, c] : o.terms_) r.add_term(m, c);
    return r;
}

ParamPoly ParamPoly::operator-(const ParamPoly& o) const {
    ParamPoly r = *this;
    for (const auto& [m, c] : o.terms_) r.add_term(m, -c);
    return r;
}

ParamPoly ParamPoly::operator*(const ParamPoly& o) const {
    ParamPoly r;
    for (const auto& [ma, ca] : terms_) {
        for (const auto& [mb, cb] : o.terms_) {
            Monomial m(std::max(ma.size(), mb.size()), 0);
            for (size_t i = 0; i < ma.size(); ++i) m[i] += ma[i];
            for (size_t i = 0; i < mb.size(); ++i) m[i] += mb[i];
            r.add_term(m, ca * cb);
        }
    }
    return r;
}

ParamPoly ParamPoly::scaled(const Int& c) const {
    ParamPoly r;
    if (c == 0) return r;
    for (const auto& [m, v] : terms_) r.terms_.emplace(m, v * c);
    return r;
}

ParamPoly operator*(const Int& c, const ParamPoly& p) { return p.scaled(c); }

Int ParamPoly::content() const {
    Int g = 0;
    for (const auto& [m, c] : terms_) {
        g = gcd(g, abs_int(c));
        if (g == 1) break;
    }
    return g;
}

ParamPoly ParamPoly::divided_by(const Int& c) const {
    if (c == 0) throw Error("domain", "division by zero");
    ParamPoly r;
    for (const auto& [m, v] : terms_) {
        if (v % c != 0) throw Error("domain", "inexact polynomial division by " + c.str());
        r.terms_.emplace(m, v / c);
    }
    return r;
}

Int ParamPoly::evaluate(std::span<const Int> values) const {
    Int total = 0;
    for (const auto& [m, c] : terms_) {
        Int t = c;
        for (size_t i = 0; i < m.size(); ++i) {
            if (m[i] == 0) continue;
            if (i >= values.size()) throw Error("domain", "evaluate: missing value for h" + std::to_string(i + 1));
            t *= pow_int(values[i], m[i]);
        }
        total += t;
    }
    return total;
}

ParamPoly ParamPoly::substitute_prefix(std::span<const Int> values) const {
    ParamPoly r;
    for (const auto& [m, c] : terms_) {
        Int coef = c;
        Monomial rest(m.size(), 0);
        for (size_t i = 0; i < m.size(); ++i) {
            if (i < values.size()) coef *= pow_int(values[i], m[i]);
            else rest[i] = m[i];
        }
        r.add_term(rest, coef);
    }
    return r;
}

std::string ParamPoly::str() const {
    if (terms_.empty()) return "0";
    std::vector<const std::pair<const Monomial, Int>*> order;
    order.reserve(terms_.size());
    for (const auto& t : terms_) order.push_back(&t);
    std::sort(order.begin(), order.end(),
              [](auto* a, auto* b) { return mono_render_before(a->first, b->first); });

    std::string out;
    bool first = true;
    for (auto* t : order) {
        const auto& [m, c] = *t;
        Int a = abs_int(c);
        if (first) {
            if (c < 0) out += "-";
            first = false;
        } else {
            out += c < 0 ? " - " : " + ";
        }
        bool unit = (a == 1) && !m.empty();
        if (!unit) out += a.str();
        bool need_star = !unit;
        for (size_t i = 0; i < m.size(); ++i) {
            if (m[i] == 0) continue;
            if (need_star) out += "*";
            out += "h" + std::to_string(i + 1);
            if (m[i] > 1) out += "^" + std::to_string(m[i]);
            need_star = true;
        }
    }
    return out;
}

namespace {

struct Parser {
    const std::string& s;
    size_t pos = 0;

    explicit Parser(const std::string& text) : s(text) {}

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }

    bool eat(char c) {
        skip_ws();
        if (pos < s.size() && s[pos] == c) { ++pos; return true; }
        return false;
    }

    Int number() {
        skip_ws();
        size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (start == pos) throw Error("domain", "polynomial parse error at offset " + std::to_string(pos) + " in '" + s + "'");
        return Int(s.substr(start, pos - start));
    }

    // term := number ['*' factor]* | factor ['*' factor]*,  factor := h<i> ['^' e]
    ParamPoly term() {
        skip_ws();
        Int coef = 1;
        Monomial mono;
        bool any = false;
        if (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
            coef = number();
            any = true;
        }
        for (;;) {
            size_t save = pos;
            skip_ws();
            if (pos < s.size() && (s[pos] == 'h' || s[pos] == 'H')) {
                ++pos;
                Int idx = number();
                if (idx < 1)
                    throw Error("domain", "parameter index must be >= 1 in '" + s + "'");
                unsigned exp = 1;
                if (eat('^')) exp = static_cast<unsigned>(to_ll(number()));
                size_t vi = static_cast<size_t>(to_ll(idx)) - 1;
                if (mono.size() <= vi) mono.resize(vi + 1, 0);
                mono[vi] += exp;
                any = true;
            } else if (pos < s.size() && s[pos] == '*') {
                ++pos;
                continue;
            } else {
                pos = save;
                break;
            }
            size_t save2 = pos;
            if (!eat('*')) { pos = save2; break; }
        }
        if (!any) throw Error("domain", "polynomial parse error in '" + s + "'");
        ParamPoly p;
        p.add_term(mono, coef);
        return p;
    }

    ParamPoly parse() {
        ParamPoly total;
        bool neg = eat('-');
        if (!neg) eat('+');
        for (;;) {
            ParamPoly t = term();
            total += neg ? -t : t;
            skip_ws();
            if (eat('-')) neg = true;
            else if (eat('+')) neg = false;
            else break;
        }
        skip_ws();
        if (pos != s.size()) throw Error("domain", "trailing input in polynomial '" + s + "'");
        return total;
    }
};

}  // namespace

ParamPoly ParamPoly::parse(const std::string& text) {
    Parser p(text);
    return p.parse();
}

}  // namespace petlab
