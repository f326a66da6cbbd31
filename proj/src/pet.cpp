#include "petlab/pet.hpp"

#include "petlab/parallel.hpp"

#include <algorithm>
#include <cstddef>
#include <map>
#include <string>

namespace petlab {

namespace {

int mono_deg(const Monomial& m) {
    unsigned s = 0;
    for (unsigned e : m) s += e;
    return static_cast<int>(s);
}

// Leading term under the display order: highest total degree, ties broken
// lexicographically on the exponent vector. Null for the zero polynomial.
const std::pair<const Monomial, Int>* lead_term(const ParamPoly& p) {
    const std::pair<const Monomial, Int>* best = nullptr;
    for (const auto& t : p.terms()) {
        if (!best) {
            best = &t;
            continue;
        }
        int dt = mono_deg(t.first);
        int db = mono_deg(best->first);
        if (dt > db || (dt == db && t.first > best->first)) best = &t;
    }
    return best;
}

// Canonical representative of the zero set: content divided out, leading
// coefficient positive.
ParamPoly normalize_condition(ParamPoly p) {
    Int c = p.content();
    if (c > 1) p = p.divided_by(c);
    const auto* lt = lead_term(p);
    if (lt && lt->second < 0) p = ParamPoly() - p;
    return p;
}

int slot_degree(const SymPoly& p) { return p.is_constant() ? 0 : p.degree(); }

// When the last slot falls below the maximum degree, the highest-degree slot
// P_j swaps roles with the anchor: every argument shifts by -P_j, the old
// anchor enters at position j with argument -P_j, and slot j's lineage
// becomes the anchor. Keeps the final slot at the maximum degree.
void re_anchor(PetState& s) {
    int maxd = s.max_degree();
    if (slot_degree(s.polys.back()) == maxd) return;
    std::size_t j = 0;
    for (std::size_t i = 0; i < s.polys.size(); ++i)
        if (slot_degree(s.polys[i]) == maxd) j = i;
    const SymPoly pj = s.polys[j];
    Lineage promoted = s.lineage[j];
    for (std::size_t i = 0; i < s.polys.size(); ++i)
        s.polys[i] = (i == j) ? -pj : s.polys[i] - pj;
    s.lineage[j] = s.anchor;
    s.anchor = std::move(promoted);
}

void reorder(PetState& s) {
    std::vector<std::pair<SymPoly, Lineage>> zip;
    zip.reserve(s.polys.size());
    for (std::size_t i = 0; i < s.polys.size(); ++i)
        zip.emplace_back(std::move(s.polys[i]), std::move(s.lineage[i]));
    std::stable_sort(zip.begin(), zip.end(), [](const auto& a, const auto& b) {
        return slot_degree(a.first) < slot_degree(b.first);
    });
    for (std::size_t i = 0; i < zip.size(); ++i) {
        s.polys[i] = std::move(zip[i].first);
        s.lineage[i] = std::move(zip[i].second);
    }
}

}  // namespace

int PetState::max_degree() const {
    int d = 0;
    for (const auto& p : polys) d = std::max(d, slot_degree(p));
    return d;
}

PetState initial_state(const Configuration& c) {
    if (auto issue = validate_configuration(c)) throw Error("domain", issue->reason);
    PetState s;
    s.anchor = Lineage{0, {}};
    for (int i = 0; i < c.n(); ++i) {
        s.lineage.push_back(Lineage{i + 1, {}});
        s.polys.push_back(lift(c.polys[static_cast<std::size_t>(i)]));
    }
    return s;
}

// Sorted term-vector mirror of ParamPoly for the pairwise difference loop.
// Monomials are borrowed from the group's stable flats, so subtraction
// allocates nothing beyond small coefficient values and dedup compares
// pointees lexicographically.
using FlatTerms = std::vector<std::pair<const Monomial*, Int>>;

void flat_sub(const FlatTerms& a, const FlatTerms& b, FlatTerms& out) {
    out.clear();
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && *a[i].first < *b[j].first)) {
            out.push_back(a[i++]);
        } else if (i == a.size() || *b[j].first < *a[i].first) {
            out.emplace_back(b[j].first, -b[j].second);
            ++j;
        } else {
            Int c = a[i].second - b[j].second;
            if (c != 0) out.emplace_back(a[i].first, std::move(c));
            ++i;
            ++j;
        }
    }
}

struct FlatTermsLess {
    bool operator()(const FlatTerms& a, const FlatTerms& b) const {
        std::size_t n = std::min(a.size(), b.size());
        for (std::size_t i = 0; i < n; ++i) {
            if (*a[i].first != *b[i].first) return *a[i].first < *b[i].first;
            if (a[i].second != b[i].second) return a[i].second < b[i].second;
        }
        return a.size() < b.size();
    }
};

BadSet bad_difference_set(const PetState& s) {
    BadSet out;
    if (s.max_degree() < 2) return out;
    ParamPoly h = ParamPoly::var(s.steps);

    // A condition depends only on (degree, leading, pair of sub-leading
    // coefficients), so group the slots and difference distinct sub-leading
    // values; the allocation-heavy normalization then runs once per distinct
    // difference instead of once per slot pair.
    std::map<std::pair<int, ParamPoly>, std::set<ParamPoly>> groups;
    for (const auto& qi : s.polys) {
        int deg = slot_degree(qi);
        if (deg < 2) continue;
        groups[{deg, qi.leading()}].insert(qi.coef(deg - 1));
    }

    std::set<ParamPoly> seen;
    for (const auto& [key, subs] : groups) {
        ParamPoly shift_term = (key.second * h).scaled(Int(key.first));
        std::vector<FlatTerms> flats;
        flats.reserve(subs.size());
        for (const auto& v : subs) {
            FlatTerms f;
            f.reserve(v.terms().size());
            for (const auto& [m, c] : v.terms()) f.emplace_back(&m, c);
            flats.push_back(std::move(f));
        }
        std::set<FlatTerms, FlatTermsLess> diffs;
        FlatTerms buf;
        for (const auto& a : flats)
            for (const auto& b : flats) {
                flat_sub(a, b, buf);
                diffs.insert(buf);
            }
        for (const auto& d : diffs) {
            ParamPoly dp;
            for (const auto& [m, c] : d) dp.add_term(*m, c);
            seen.insert(normalize_condition(shift_term + dp));
        }
    }
    out.conditions.assign(seen.begin(), seen.end());
    return out;
}

PetState pet_step(const PetState& s0) {
    if (s0.max_degree() < 2)
        throw Error("domain", "differencing requires a slot of degree at least 2");
    PetState s = s0;
    re_anchor(s);
    reorder(s);

    BadSet bs = bad_difference_set(s);
    int step_no = s.steps + 1;
    for (auto& cond : bs.conditions) s.bad.push_back(BadCondition{step_no, std::move(cond)});

    ParamPoly h = ParamPoly::var(s.steps);
    const SymPoly p1 = s.polys[0];

    PetState out;
    out.steps = s.steps + 1;
    out.interval_shift = s.interval_shift + h;
    out.bad = std::move(s.bad);
    for (std::size_t i = 0; i < s.polys.size(); ++i) {
        const SymPoly& pi = s.polys[i];
        const Lineage& li = s.lineage[i];
        if (slot_degree(pi) <= 1) {
            Lineage merged = li;
            merged.deltas.push_back(pi.coef(1) * h);
            if (i == 0) {
                out.anchor = std::move(merged);
            } else {
                out.polys.push_back(pi - p1);
                out.lineage.push_back(std::move(merged));
            }
        } else {
            if (i == 0) {
                out.anchor = li;
            } else {
                out.polys.push_back(pi - p1);
                out.lineage.push_back(li);
            }
            out.polys.push_back(pi.shift(h) - p1);
            out.lineage.push_back(li);
        }
    }
    return out;
}

LinearSystem collect_linear_system(const PetState& s, const Configuration& source) {
    LinearSystem sys;
    sys.r = s.steps;
    sys.d = static_cast<int>(s.polys.size());
    sys.bad = s.bad;
    sys.anchor = s.anchor;
    sys.n_source = source.n();
    sys.k_source = source.k;
    sys.height_source = config_height(source);
    for (std::size_t i = 0; i < s.polys.size(); ++i) {
        if (slot_degree(s.polys[i]) > 1)
            throw Error("domain", "state still carries a slot of degree above 1");
        LinearForm f;
        f.a = s.polys[i].coef(1);
        f.b = s.polys[i].coef(0);
        f.lineage = s.lineage[i].source;
        sys.forms.push_back(std::move(f));
    }
    if (sys.d >= 2) {
        Int g = 0;
        for (const auto& f : sys.forms) {
            g = gcd(g, f.a.content());
            if (g == 1) break;
        }
        if (g > 1) {
            for (auto& f : sys.forms) f.a = f.a.divided_by(g);
            sys.y_scale = g;
        }
    }
    return sys;
}

LinearSystem linearize(const Configuration& c, const PetOptions& opt) {
    PetState st = initial_state(c);
    while (st.max_degree() >= 2) {
        if (st.steps >= opt.max_steps)
            throw Error("resource_exceeded",
                        "differencing still not linear after " + std::to_string(st.steps) +
                            " steps");
        // Each slot of degree >= 2 leaves two children, a linear slot one, and
        // the pivot becomes the anchor, so the next form count is known before
        // the step is paid for.
        long long next = -1;
        for (const auto& p : st.polys) next += slot_degree(p) >= 2 ? 2 : 1;
        if (next > opt.max_forms)
            throw Error("resource_exceeded", "form count " + std::to_string(next) +
                                                 " exceeds the budget " +
                                                 std::to_string(opt.max_forms));
        st = pet_step(st);
        if (static_cast<long long>(st.polys.size()) > opt.max_forms)
            throw Error("resource_exceeded",
                        "form count " + std::to_string(st.polys.size()) + " exceeds the budget " +
                            std::to_string(opt.max_forms));
    }
    return collect_linear_system(st, c);
}

ConcreteSystem instantiate(const LinearSystem& sys, std::span<const Int> h_values) {
    if (static_cast<int>(h_values.size()) != sys.r)
        throw Error("domain", "expected " + std::to_string(sys.r) + " parameter values, got " +
                                  std::to_string(h_values.size()));
    for (const auto& bc : sys.bad) {
        if (bc.lhs.evaluate(h_values) == 0)
            throw Error("bad_parameter", "parameters zero the step-" + std::to_string(bc.step) +
                                             " condition " + bc.lhs.str());
    }
    ConcreteSystem out;
    out.r = sys.r;
    out.y_scale = sys.y_scale;
    for (const auto& f : sys.forms)
        out.forms.push_back(
            ConcreteForm{f.a.evaluate(h_values), f.b.evaluate(h_values), f.lineage});
    return out;
}

std::pair<Rat, Rat> verify_vdc(const GridFunction& g, const std::set<long long>& H_set,
                               const std::set<long long>& S) {
    if (H_set.empty()) throw Error("bad_parameter", "the shift set H must be non-empty");
    if (!g.empty()) {
        for (long long x = g.lo(); x <= g.hi(); ++x)
            if (!(g.value(x) == 0) && S.count(x) == 0)
                throw Error("domain",
                            "g must vanish outside S; offending point " + std::to_string(x));
    }

    Rat total = 0;
    for (long long x : S) total += g.value(x);
    Rat lhs = total * total;

    std::set<long long> diff;
    for (long long s : S)
        for (long long t : H_set) diff.insert(s - t);
    std::map<long long, long long> rep;
    for (long long t : H_set)
        for (long long u : H_set) ++rep[t - u];

    Rat inner = 0;
    if (!g.empty()) {
        for (const auto& [h, mult] : rep) {
            Rat corr = 0;
            long long lo = std::max(g.lo(), g.lo() - h);
            long long hi = std::min(g.hi(), g.hi() - h);
            for (long long y = lo; y <= hi; ++y) corr += g.value(y + h) * g.value(y);
            inner += Rat(mult) * corr;
        }
    }
    Int hs(static_cast<long long>(H_set.size()));
    Rat rhs = Rat(Int(static_cast<long long>(diff.size())), hs * hs) * inner;
    return {lhs, rhs};
}

namespace {

struct CSlot {
    GridFunction func;
    IntPoly arg;
    int source = 0;
};

struct CState {
    GridFunction anchor_func;
    int anchor_source = 0;
    std::vector<CSlot> slots;
    long long m_cap = 0;
};

int cdeg(const IntPoly& p) { return p.is_constant() ? 0 : p.degree(); }

int cmax_degree(const std::vector<CSlot>& slots) {
    int d = 0;
    for (const auto& sl : slots) d = std::max(d, cdeg(sl.arg));
    return d;
}

void c_re_anchor(CState& st) {
    int maxd = cmax_degree(st.slots);
    if (cdeg(st.slots.back().arg) == maxd) return;
    std::size_t j = 0;
    for (std::size_t i = 0; i < st.slots.size(); ++i)
        if (cdeg(st.slots[i].arg) == maxd) j = i;
    const IntPoly pj = st.slots[j].arg;
    GridFunction promoted_func = st.slots[j].func;
    int promoted_source = st.slots[j].source;
    for (std::size_t i = 0; i < st.slots.size(); ++i)
        if (i != j) st.slots[i].arg = st.slots[i].arg - pj;
    st.slots[j] = CSlot{st.anchor_func, -pj, st.anchor_source};
    st.anchor_func = std::move(promoted_func);
    st.anchor_source = promoted_source;
}

void c_reorder(CState& st) {
    std::stable_sort(st.slots.begin(), st.slots.end(),
                     [](const CSlot& a, const CSlot& b) { return cdeg(a.arg) < cdeg(b.arg); });
}

// Integer roots of the collision conditions deg*lead*h + (c_i - c_j) = 0
// that land inside [1..H].
std::vector<long long> c_bad_h(const CState& st, long long H) {
    std::set<long long> bad;
    for (const auto& si : st.slots) {
        int deg = cdeg(si.arg);
        if (deg < 2) continue;
        Int den = Int(deg) * si.arg.leading();
        for (const auto& sj : st.slots) {
            if (cdeg(sj.arg) != deg || sj.arg.leading() != si.arg.leading()) continue;
            Int num = sj.arg.coef(deg - 1) - si.arg.coef(deg - 1);
            if (num % den != 0) continue;
            Int root = num / den;
            if (root >= 1 && root <= H) bad.insert(to_ll(root));
        }
    }
    return std::vector<long long>(bad.begin(), bad.end());
}

CState commit_step(const CState& st, long long h) {
    const CSlot& s0 = st.slots[0];
    CState out;
    out.m_cap = st.m_cap - h;
    for (std::size_t i = 0; i < st.slots.size(); ++i) {
        const CSlot& si = st.slots[i];
        if (cdeg(si.arg) <= 1) {
            Int delta = si.arg.coef(1) * h;
            GridFunction merged = si.func * si.func.shifted(-to_ll(delta));
            if (i == 0) {
                out.anchor_func = std::move(merged);
                out.anchor_source = si.source;
            } else {
                out.slots.push_back(CSlot{std::move(merged), si.arg - s0.arg, si.source});
            }
        } else {
            if (i == 0) {
                out.anchor_func = si.func;
                out.anchor_source = si.source;
            } else {
                out.slots.push_back(CSlot{si.func, si.arg - s0.arg, si.source});
            }
            out.slots.push_back(CSlot{si.func, si.arg.shift(Int(h)) - s0.arg, si.source});
        }
    }
    return out;
}

Rat fvalue(const GridFunction& f, const Int& pos) {
    if (f.empty() || pos < f.lo() || pos > f.hi()) return Rat(0);
    return f.value(to_ll(pos));
}

Rat correlation(const CState& st) {
    Rat total = 0;
    if (st.m_cap < 1 || st.anchor_func.empty()) return total;
    std::vector<Int> args(st.slots.size());
    for (long long y = 1; y <= st.m_cap; ++y) {
        for (std::size_t i = 0; i < st.slots.size(); ++i)
            args[i] = eval_poly(st.slots[i].arg, Int(y));
        for (long long x = st.anchor_func.lo(); x <= st.anchor_func.hi(); ++x) {
            Rat p = st.anchor_func.value(x);
            for (std::size_t i = 0; i < st.slots.size() && !(p == 0); ++i)
                p *= fvalue(st.slots[i].func, Int(x) + args[i]);
            total += p;
        }
    }
    return total;
}

}  // namespace

ConcreteRun concrete_linearize(const std::vector<GridFunction>& funcs, const Configuration& c,
                               long long N, long long H, const PetOptions& opt) {
    if (auto issue = validate_configuration(c)) throw Error("domain", issue->reason);
    if (N < 1) throw Error("domain", "N must be positive");
    std::size_t n = static_cast<std::size_t>(c.n());
    if (funcs.size() != n && funcs.size() != n + 1)
        throw Error("domain", "expected " + std::to_string(n) + " functions (or " +
                                  std::to_string(n + 1) + " with an explicit anchor), got " +
                                  std::to_string(funcs.size()));
    for (const auto& f : funcs) {
        if (!f.bounded_by_one())
            throw Error("domain", "function values must lie in [-1, 1]");
        if (!f.empty() && (f.lo() < 1 || f.hi() > N))
            throw Error("domain", "functions must be supported inside [1.." + std::to_string(N) + "]");
    }
    int maxdeg = 1;
    for (const auto& p : c.polys)
        if (!p.is_constant()) maxdeg = std::max(maxdeg, p.degree());
    long long M = to_ll(root_floor(Int(N), static_cast<unsigned long>(maxdeg)));
    if (H < 1 || H > M)
        throw Error("domain", "H must lie in [1.." + std::to_string(M) + "]");

    bool has_anchor = funcs.size() == n + 1;
    CState st;
    st.anchor_func = has_anchor ? funcs[0] : GridFunction::indicator(1, N);
    st.anchor_source = 0;
    for (std::size_t i = 0; i < n; ++i)
        st.slots.push_back(
            CSlot{funcs[i + (has_anchor ? 1 : 0)], c.polys[i], static_cast<int>(i) + 1});
    st.m_cap = M;

    ConcreteRun run;
    run.initial_correlation = correlation(st);

    int steps = 0;
    while (cmax_degree(st.slots) >= 2) {
        if (steps >= opt.max_steps)
            throw Error("resource_exceeded",
                        "differencing still not linear after " + std::to_string(steps) + " steps");
        c_re_anchor(st);
        c_reorder(st);

        std::vector<long long> bad = c_bad_h(st, H);
        std::vector<long long> admissible;
        {
            std::size_t bi = 0;
            for (long long h = 1; h <= H; ++h) {
                while (bi < bad.size() && bad[bi] < h) ++bi;
                if (bi < bad.size() && bad[bi] == h) continue;
                admissible.push_back(h);
            }
        }
        if (admissible.empty())
            throw Error("empty_parameter_range", "every h in [1.." + std::to_string(H) +
                                                     "] is excluded at step " +
                                                     std::to_string(steps + 1));

        std::vector<Rat> vals(admissible.size());
        long long count = static_cast<long long>(admissible.size());
#ifdef PETLAB_HAVE_OPENMP
#pragma omp parallel for schedule(dynamic, 1) num_threads(worker_count())
#endif
        for (long long idx = 0; idx < count; ++idx)
            vals[static_cast<std::size_t>(idx)] =
                correlation(commit_step(st, admissible[static_cast<std::size_t>(idx)]));

        std::size_t best = 0;
        for (std::size_t i = 1; i < vals.size(); ++i)
            if (vals[i] > vals[best]) best = i;
        long long hstar = admissible[best];
        st = commit_step(st, hstar);
        ++steps;
        run.h.push_back(hstar);
        run.trace.push_back(ConcreteTraceStep{steps, hstar, vals[best], std::move(bad),
                                              static_cast<long long>(admissible.size())});
        if (static_cast<long long>(st.slots.size()) > opt.max_forms)
            throw Error("resource_exceeded",
                        "form count " + std::to_string(st.slots.size()) + " exceeds the budget " +
                            std::to_string(opt.max_forms));
    }

    ConcreteSystem sys;
    sys.r = steps;
    for (const auto& sl : st.slots)
        sys.forms.push_back(ConcreteForm{sl.arg.coef(1), sl.arg.coef(0), sl.source});
    if (sys.forms.size() >= 2) {
        Int g = 0;
        for (const auto& f : sys.forms) {
            g = gcd(g, abs_int(f.a));
            if (g == 1) break;
        }
        if (g > 1) {
            for (auto& f : sys.forms) f.a /= g;
            sys.y_scale = g;
        }
    }
    run.system = std::move(sys);
    return run;
}

}  // namespace petlab
