#include "petlab/config.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace petlab {

Configuration Configuration::power(int k, std::vector<Int> coeffs) {
    Configuration c;
    c.k = k;
    c.coefficients = std::move(coeffs);
    for (const auto& ci : c.coefficients) c.polys.push_back(IntPoly::monomial(ci, k));
    return c;
}

Configuration Configuration::general(std::vector<IntPoly> polys) {
    Configuration c;
    c.polys = std::move(polys);
    int k = 0;
    for (const auto& p : c.polys)
        if (!p.is_zero()) k = std::max(k, p.degree());
    c.k = k;
    return c;
}

DegreeSequence::DegreeSequence(std::map<int, int> entries) {
    for (auto& [d, cnt] : entries) {
        if (cnt < 0 || d < 0) throw Error("domain", "degree sequence entries must be non-negative");
        if (cnt > 0) e_[d] = cnt;
    }
}

int DegreeSequence::at(int degree) const {
    auto it = e_.find(degree);
    return it == e_.end() ? 0 : it->second;
}

void DegreeSequence::set(int degree, int count) {
    if (count == 0) e_.erase(degree);
    else e_[degree] = count;
}

std::string DegreeSequence::str() const {
    std::ostringstream os;
    os << "{";
    bool first = true;
    for (const auto& [d, cnt] : e_) {
        if (!first) os << ", ";
        os << d << ":" << cnt;
        first = false;
    }
    os << "}";
    return os.str();
}

int colex_compare(const DegreeSequence& a, const DegreeSequence& b) {
    int top = std::max(a.max_degree(), b.max_degree());
    for (int d = top; d >= 0; --d) {
        int ca = a.at(d), cb = b.at(d);
        if (ca != cb) return ca < cb ? -1 : 1;
    }
    return 0;
}

IntPoly non_constant_part(const IntPoly& p) { return p.non_constant_part(); }

std::optional<ValidationIssue> validate_configuration(const Configuration& c) {
    if (c.polys.empty()) return ValidationIssue{0, 0, "configuration has no polynomials"};
    if (c.power_form()) {
        if (c.k < 1) return ValidationIssue{0, 0, "power form requires k >= 1"};
        for (size_t i = 0; i < c.coefficients.size(); ++i) {
            if (c.coefficients[i] == 0)
                return ValidationIssue{0, static_cast<int>(i + 1), "zero power coefficient"};
            for (size_t j = i + 1; j < c.coefficients.size(); ++j)
                if (c.coefficients[i] == c.coefficients[j])
                    return ValidationIssue{static_cast<int>(i + 1), static_cast<int>(j + 1),
                                           "equal power coefficients"};
        }
    }
    // Index 0 is the trivial polynomial at the anchor point x.
    std::vector<IntPoly> parts{IntPoly{}};
    for (const auto& p : c.polys) parts.push_back(p.non_constant_part());
    for (size_t i = 0; i < parts.size(); ++i)
        for (size_t j = i + 1; j < parts.size(); ++j)
            if (parts[i] == parts[j])
                return ValidationIssue{static_cast<int>(i), static_cast<int>(j),
                                       i == 0 ? "constant polynomial" : "shared non-constant part"};
    return std::nullopt;
}

Int config_height(const Configuration& c) {
    Int h = 0;
    for (const auto& p : c.polys) h = std::max(h, poly_height(p));
    return h;
}

namespace {

template <class P>
DegreeSequence degree_sequence_impl(const std::vector<P>& polys) {
    std::map<int, std::set<std::decay_t<decltype(polys[0].leading())>>> leads;
    for (const auto& p : polys) {
        if (p.is_zero() || p.is_constant()) continue;
        leads[p.degree()].insert(p.leading());
    }
    DegreeSequence d;
    for (const auto& [deg, s] : leads) d.set(deg, static_cast<int>(s.size()));
    return d;
}

}  // namespace

DegreeSequence degree_sequence(const std::vector<IntPoly>& polys) {
    return degree_sequence_impl(polys);
}

DegreeSequence degree_sequence(const std::vector<SymPoly>& polys) {
    return degree_sequence_impl(polys);
}

Int bound_R_capped(const Int& n, const DegreeSequence& m, const Int& cap) {
    if (cap < 1) return cap < 0 ? Int(0) : cap;
    Int steps = 0;            // completed differencing rounds
    Int budget = n;           // current function count bound
    DegreeSequence cur = m;
    for (;;) {
        if (cur.empty() || cur.max_degree() <= 1) {
            Int r = steps + 1;
            return r < cap ? r : cap;
        }
        if (steps + 1 >= cap) return cap;
        int t = cur.entries().begin()->first;  // least active degree
        cur.set(t, cur.at(t) - 1);
        budget = budget * 2;
        if (budget > cap) budget = cap;  // extra mass beyond cap cannot matter
        if (t >= 2) {
            // Colex-largest element of M(n, m): all 2n free entries at degree t-1.
            Int add = budget;
            Int existing = cur.at(t - 1);
            Int total = existing + add;
            if (total > cap) total = cap;
            cur.set(t - 1, static_cast<int>(total));
        }
        steps += 1;
    }
}

Int bound_R(const Int& n, const DegreeSequence& m, const Int& safety_cap) {
    Int r = bound_R_capped(n, m, safety_cap);
    if (r >= safety_cap)
        throw Error("resource_exceeded",
                    "bound_R(" + n.str() + ", " + m.str() + ") exceeds cap " + safety_cap.str());
    return r;
}

namespace {

void enumerate_masses(int t, const Int& total, std::vector<int>& cur,
                      const std::function<void(const std::vector<int>&)>& emit) {
    // Distributes up to `total` units over degrees 1..t-1 (cur has t-1 slots).
    if (cur.size() == static_cast<size_t>(t - 1)) {
        emit(cur);
        return;
    }
    Int used = 0;
    for (int v : cur) used += v;
    for (Int give = 0; give + used <= total; ++give) {
        cur.push_back(static_cast<int>(give));
        enumerate_masses(t, total, cur, emit);
        cur.pop_back();
    }
}

}  // namespace

Int bound_R_enumerated(const Int& n, const DegreeSequence& m, const Int& cap) {
    static thread_local std::map<std::string, Int> memo;
    if (m.empty() || m.max_degree() <= 1) return std::min(Int(1), cap);
    if (cap <= 1) return cap;
    std::string key = n.str() + "|" + m.str() + "|" + cap.str();
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;

    int t = m.entries().begin()->first;
    Int best = 0;
    std::vector<int> masses;
    enumerate_masses(t, 2 * n, masses, [&](const std::vector<int>& given) {
        DegreeSequence next = m;
        next.set(t, next.at(t) - 1);
        for (int d = 1; d < t; ++d) next.set(d, given[static_cast<size_t>(d - 1)]);
        for (Int np = 1; np <= 2 * n; ++np)
            best = std::max(best, bound_R_enumerated(np, next, cap - 1));
    });
    Int r = std::min(Int(1) + best, cap);
    memo[key] = r;
    return r;
}

Int MultiPoly::evaluate(std::span<const Int> z) const {
    Int total = 0;
    for (const auto& t : terms) {
        Int v = t.coef;
        for (size_t i = 0; i < t.exps.size(); ++i) {
            if (t.exps[i] == 0) continue;
            if (i >= z.size()) throw Error("domain", "evaluate: missing coordinate");
            v *= pow_int(z[i], t.exps[i]);
        }
        total += v;
    }
    return total;
}

int MultiPoly::total_degree() const {
    int d = -1;
    for (const auto& t : terms) {
        if (t.coef == 0) continue;
        int td = 0;
        for (unsigned e : t.exps) td += static_cast<int>(e);
        d = std::max(d, td);
    }
    return d;
}

bool MultiPoly::homogeneous(int k) const {
    bool any = false;
    for (const auto& t : terms) {
        if (t.coef == 0) continue;
        int td = 0;
        for (unsigned e : t.exps) td += static_cast<int>(e);
        if (td != k) return false;
        any = true;
    }
    return any;
}

ReductionResult reduce_homogeneous(const std::vector<MultiPoly>& polys, int k,
                                   const HyperplaneSet& avoid, const Int& bound) {
    if (polys.empty()) throw Error("domain", "reduce_homogeneous needs at least one form");
    int m = 0;
    for (const auto& p : polys) m = std::max(m, p.vars);
    for (const auto& p : polys)
        if (!p.homogeneous(k)) throw Error("domain", "form is not homogeneous of degree " + std::to_string(k));
    for (const auto& nrm : avoid.normals) {
        bool nonzero = false;
        for (const auto& v : nrm) nonzero = nonzero || v != 0;
        if (!nonzero) throw Error("domain", "hyperplane normal must be nonzero");
    }

    std::vector<Int> z(static_cast<size_t>(m), -bound);
    auto off_hyperplanes = [&]() {
        for (const auto& nrm : avoid.normals) {
            Int dot = 0;
            for (size_t i = 0; i < nrm.size() && i < z.size(); ++i) dot += nrm[i] * z[i];
            if (dot == 0) return false;
        }
        return true;
    };
    for (;;) {
        if (off_hyperplanes()) {
            ReductionResult r;
            r.z = z;
            for (const auto& p : polys) r.c.push_back(p.evaluate(z));
            std::set<Int> seen;
            r.distinct_nonzero = true;
            for (const auto& ci : r.c) {
                if (ci == 0 || !seen.insert(ci).second) r.distinct_nonzero = false;
            }
            return r;
        }
        // Advance lexicographically: last coordinate fastest.
        size_t i = z.size();
        while (i-- > 0) {
            if (z[i] < bound) { z[i] += 1; break; }
            z[i] = -bound;
            if (i == 0) throw Error("no_valid_point", "no lattice point in the box avoids every hyperplane");
        }
        if (i == static_cast<size_t>(-1)) break;
    }
    throw Error("no_valid_point", "no lattice point in the box avoids every hyperplane");
}

std::string poly_str(const IntPoly& p) {
    if (p.is_zero()) return "0";
    std::string out;
    for (int d = p.degree(); d >= 0; --d) {
        Int c = p.coef(d);
        if (c == 0) continue;
        Int a = abs_int(c);
        if (out.empty()) out += c < 0 ? "-" : "";
        else out += c < 0 ? " - " : " + ";
        bool unit = (a == 1) && d > 0;
        if (!unit) out += a.str();
        if (d > 0) {
            if (!unit) out += "*";
            out += "y";
            if (d > 1) out += "^" + std::to_string(d);
        }
    }
    return out;
}

std::string poly_str(const SymPoly& p) {
    if (p.is_zero()) return "0";
    std::string out;
    for (int d = p.degree(); d >= 0; --d) {
        ParamPoly c = p.coef(d);
        if (c.is_zero()) continue;
        if (c.is_constant()) {
            Int v = c.constant_value();
            Int a = abs_int(v);
            if (out.empty()) out += v < 0 ? "-" : "";
            else out += v < 0 ? " - " : " + ";
            bool unit = (a == 1) && d > 0;
            if (!unit) out += a.str();
            if (d > 0 && !unit) out += "*";
        } else {
            if (!out.empty()) out += " + ";
            out += d > 0 ? "(" + c.str() + ")*" : c.str();
        }
        if (d > 0) {
            out += "y";
            if (d > 1) out += "^" + std::to_string(d);
        }
    }
    return out;
}

}  // namespace petlab
