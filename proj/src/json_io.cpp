#include "petlab/json_io.hpp"

#include <fstream>
#include <limits>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace petlab {

namespace {

bool fits_ll(const Int& v) {
    return v >= std::numeric_limits<long long>::min() &&
           v <= std::numeric_limits<long long>::max();
}

const Json& need_key(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key))
        throw Error("domain", std::string("missing key '") + key + "' in JSON object");
    return j.at(key);
}

long long as_ll(const Json& j, const char* what) {
    Int v = int_of_json(j);
    if (!fits_ll(v)) throw Error("domain", std::string(what) + " out of machine range");
    return static_cast<long long>(v);
}

int as_int(const Json& j, const char* what) {
    long long v = as_ll(j, what);
    if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max())
        throw Error("domain", std::string(what) + " out of int range");
    return static_cast<int>(v);
}

std::string trimmed(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

}  // namespace

Json json_of_int(const Int& v) {
    if (fits_ll(v)) return Json(static_cast<long long>(v));
    return Json(v.str());
}

Int int_of_json(const Json& j) {
    if (j.is_number_integer()) return Int(j.get<long long>());
    if (j.is_number_unsigned()) return Int(j.get<unsigned long long>());
    if (j.is_string()) {
        Rat r = parse_number(j.get<std::string>());
        if (denominator(r) != 1) throw Error("domain", "expected an integer, got " + j.dump());
        return numerator(r);
    }
    throw Error("domain", "expected an integer, got " + j.dump());
}

Json json_of_rat(const Rat& v) { return Json(rat_str(v)); }

Rat rat_of_json(const Json& j) {
    if (j.is_string()) return parse_number(j.get<std::string>());
    if (j.is_number_integer()) return Rat(j.get<long long>());
    if (j.is_number_unsigned()) return Rat(Int(j.get<unsigned long long>()));
    throw Error("domain", "expected an exact number, got " + j.dump());
}

Rat parse_number(const std::string& text) {
    std::string s = trimmed(text);
    if (s.empty()) throw Error("domain", "empty number");
    if (s.find('/') != std::string::npos) return rat_parse(s);
    if (s.find('.') == std::string::npos && s.find('e') == std::string::npos &&
        s.find('E') == std::string::npos)
        return rat_parse(s);

    size_t pos = 0;
    bool neg = false;
    if (s[pos] == '+' || s[pos] == '-') neg = s[pos++] == '-';
    std::string digits;
    long long frac_places = 0;
    bool any = false;
    while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') { digits += s[pos++]; any = true; }
    if (pos < s.size() && s[pos] == '.') {
        ++pos;
        while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') {
            digits += s[pos++];
            ++frac_places;
            any = true;
        }
    }
    long long exp10 = 0;
    if (pos < s.size() && (s[pos] == 'e' || s[pos] == 'E')) {
        ++pos;
        bool eneg = false;
        if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) eneg = s[pos++] == '-';
        bool edig = false;
        while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') {
            exp10 = exp10 * 10 + (s[pos++] - '0');
            edig = true;
            if (exp10 > 100000) throw Error("domain", "exponent too large in '" + text + "'");
        }
        if (!edig) throw Error("domain", "malformed exponent in '" + text + "'");
        if (eneg) exp10 = -exp10;
    }
    if (!any || pos != s.size())
        throw Error("domain", "cannot parse number '" + text + "'");

    Int mant = digits.empty() ? Int(0) : int_parse(digits);
    if (neg) mant = -mant;
    long long net = exp10 - frac_places;
    Rat v(mant);
    if (net > 0) v *= Rat(pow_int(10, static_cast<unsigned long>(net)));
    if (net < 0) v /= Rat(pow_int(10, static_cast<unsigned long>(-net)));
    return v;
}

Rat bounded_denominator(const Rat& x, const Int& max_den) {
    if (max_den < 1) throw Error("domain", "denominator bound must be positive");
    if (denominator(x) <= max_den) return x;

    // Continued fraction walk: (hp/kp, hc/kc) are the last two convergents.
    Int p = numerator(x), q = denominator(x);
    Int hp = 1, kp = 0, hc, kc;
    {
        Int a = rat_floor(Rat(p, q));
        hc = a;
        kc = 1;
        Int r = p - a * q;
        p = q;
        q = r;
    }
    while (q != 0 && kc <= max_den) {
        Int a = p / q;  // p, q > 0 from here on
        Int hn = a * hc + hp, kn = a * kc + kp;
        if (kn > max_den) break;
        hp = hc; kp = kc; hc = hn; kc = kn;
        Int r = p - a * q;
        p = q;
        q = r;
    }

    Rat conv(hc, kc);
    Int t = (max_den - kp) / kc;
    Rat best = conv;
    if (t > 0) {
        Rat semi(hp + t * hc, kp + t * kc);
        Rat dc = abs(x - conv), ds = abs(x - semi);
        if (ds < dc || (ds == dc && denominator(semi) < denominator(best))) best = semi;
    }
    return best;
}

Json json_of_config(const Configuration& c) {
    Json j = Json::object();
    if (c.power_form()) {
        j["k"] = c.k;
        Json arr = Json::array();
        for (const Int& v : c.coefficients) arr.push_back(json_of_int(v));
        j["coefficients"] = std::move(arr);
    } else {
        Json polys = Json::array();
        for (const IntPoly& p : c.polys) {
            Json coeffs = Json::array();
            for (const Int& v : p.coeffs()) coeffs.push_back(json_of_int(v));
            polys.push_back(std::move(coeffs));
        }
        j["polys"] = std::move(polys);
    }
    return j;
}

Configuration config_of_json(const Json& j) {
    if (!j.is_object()) throw Error("domain", "configuration must be a JSON object");
    bool power = j.contains("coefficients") || j.contains("k");
    bool general = j.contains("polys");
    if (power == general)
        throw Error("domain",
                    "configuration needs either k/coefficients or polys, not both");
    if (power) {
        int k = as_int(need_key(j, "k"), "k");
        std::vector<Int> coeffs;
        for (const Json& v : need_key(j, "coefficients"))
            coeffs.push_back(int_of_json(v));
        return Configuration::power(k, std::move(coeffs));
    }
    std::vector<IntPoly> polys;
    for (const Json& poly : need_key(j, "polys")) {
        std::vector<Int> coeffs;
        for (const Json& v : poly) coeffs.push_back(int_of_json(v));
        polys.emplace_back(std::move(coeffs));
    }
    return Configuration::general(std::move(polys));
}

Json json_of_degseq(const DegreeSequence& s) {
    Json j = Json::object();
    for (const auto& [deg, cnt] : s.entries()) j[std::to_string(deg)] = cnt;
    return j;
}

DegreeSequence degseq_of_json(const Json& j) {
    if (!j.is_object()) throw Error("domain", "degree sequence must be a JSON object");
    std::map<int, int> e;
    for (const auto& [key, val] : j.items()) {
        int deg;
        try {
            size_t used = 0;
            deg = std::stoi(key, &used);
            if (used != key.size()) throw std::invalid_argument("trailing");
        } catch (const std::exception&) {
            throw Error("domain", "bad degree key '" + key + "'");
        }
        e[deg] = as_int(val, "degree count");
    }
    return DegreeSequence(std::move(e));
}

Json json_of_system(const LinearSystem& sys) {
    Json j = Json::object();
    j["r"] = sys.r;
    j["d"] = sys.d;
    j["y_scale"] = json_of_int(sys.y_scale);
    Json forms = Json::array();
    for (const LinearForm& f : sys.forms) {
        Json jf = Json::object();
        jf["a"] = f.a.str();
        jf["b"] = f.b.str();
        jf["lineage"] = f.lineage;
        forms.push_back(std::move(jf));
    }
    j["forms"] = std::move(forms);
    Json bad = Json::array();
    for (const BadCondition& b : sys.bad) bad.push_back(b.lhs.str());
    j["bad"] = std::move(bad);
    return j;
}

LinearSystem system_of_json(const Json& j) {
    LinearSystem sys;
    sys.r = as_int(need_key(j, "r"), "r");
    sys.d = as_int(need_key(j, "d"), "d");
    if (j.contains("y_scale")) sys.y_scale = int_of_json(j.at("y_scale"));
    for (const Json& jf : need_key(j, "forms")) {
        LinearForm f;
        f.a = ParamPoly::parse(need_key(jf, "a").get<std::string>());
        f.b = ParamPoly::parse(need_key(jf, "b").get<std::string>());
        f.lineage = as_int(need_key(jf, "lineage"), "lineage");
        sys.forms.push_back(std::move(f));
    }
    if (j.contains("bad"))
        for (const Json& jb : j.at("bad")) {
            BadCondition b;
            b.lhs = ParamPoly::parse(jb.get<std::string>());
            b.step = b.lhs.num_vars();  // each condition is linear in its newest parameter
            sys.bad.push_back(std::move(b));
        }
    return sys;
}

Json json_of_concrete_run(const ConcreteRun& run) {
    Json j = Json::object();
    j["r"] = run.system.r;
    j["d"] = static_cast<long long>(run.system.forms.size());
    j["y_scale"] = json_of_int(run.system.y_scale);
    Json forms = Json::array();
    for (const ConcreteForm& f : run.system.forms) {
        Json jf = Json::object();
        jf["a"] = json_of_int(f.a);
        jf["b"] = json_of_int(f.b);
        jf["lineage"] = f.lineage;
        forms.push_back(std::move(jf));
    }
    j["forms"] = std::move(forms);
    j["h"] = run.h;
    j["initial_correlation"] = json_of_rat(run.initial_correlation);
    Json trace = Json::array();
    for (const ConcreteTraceStep& s : run.trace) {
        Json js = Json::object();
        js["step"] = s.step;
        js["h"] = s.h;
        js["correlation"] = json_of_rat(s.correlation);
        js["bad_h"] = s.bad_h;
        js["admissible"] = s.admissible;
        trace.push_back(std::move(js));
    }
    j["trace"] = std::move(trace);
    return j;
}

ConcreteRun concrete_run_of_json(const Json& j) {
    ConcreteRun run;
    run.system.r = as_int(need_key(j, "r"), "r");
    if (j.contains("y_scale")) run.system.y_scale = int_of_json(j.at("y_scale"));
    for (const Json& jf : need_key(j, "forms")) {
        ConcreteForm f;
        f.a = int_of_json(need_key(jf, "a"));
        f.b = int_of_json(need_key(jf, "b"));
        f.lineage = as_int(need_key(jf, "lineage"), "lineage");
        run.system.forms.push_back(f);
    }
    for (const Json& v : need_key(j, "h")) run.h.push_back(as_ll(v, "h"));
    run.initial_correlation = rat_of_json(need_key(j, "initial_correlation"));
    if (j.contains("trace"))
        for (const Json& js : j.at("trace")) {
            ConcreteTraceStep s;
            s.step = as_int(need_key(js, "step"), "step");
            s.h = as_ll(need_key(js, "h"), "h");
            s.correlation = rat_of_json(need_key(js, "correlation"));
            for (const Json& v : need_key(js, "bad_h")) s.bad_h.push_back(as_ll(v, "bad_h"));
            s.admissible = as_ll(need_key(js, "admissible"), "admissible");
            run.trace.push_back(std::move(s));
        }
    return run;
}

Json json_of_count(const CountReport& r) {
    Json j = Json::object();
    if (denominator(r.value) == 1)
        j["count"] = json_of_int(numerator(r.value));
    else
        j["count"] = json_of_rat(r.value);
    j["y_min"] = r.y_min;
    j["y_max"] = r.y_max;
    j["term_count"] = r.term_count;
    return j;
}

CountReport count_of_json(const Json& j) {
    CountReport r;
    r.value = rat_of_json(need_key(j, "count"));
    r.y_min = as_ll(need_key(j, "y_min"), "y_min");
    r.y_max = as_ll(need_key(j, "y_max"), "y_max");
    r.term_count = as_ll(need_key(j, "term_count"), "term_count");
    return r;
}

Json json_of_expansion(const Expansion& e) {
    Json j = Json::object();
    Json terms = Json::array();
    for (const ExpansionTerm& t : e.terms) {
        Json jt = Json::object();
        jt["mask"] = t.mask;
        jt["value"] = json_of_rat(t.value);
        terms.push_back(std::move(jt));
    }
    j["terms"] = std::move(terms);
    j["main_term"] = json_of_rat(e.main_term);
    j["total"] = json_of_rat(e.total);
    return j;
}

Expansion expansion_of_json(const Json& j) {
    Expansion e;
    for (const Json& jt : need_key(j, "terms")) {
        ExpansionTerm t;
        t.mask = static_cast<unsigned>(as_ll(need_key(jt, "mask"), "mask"));
        t.value = rat_of_json(need_key(jt, "value"));
        e.terms.push_back(std::move(t));
    }
    e.main_term = rat_of_json(need_key(j, "main_term"));
    e.total = rat_of_json(need_key(j, "total"));
    return e;
}

Json json_of_norm(const NormValue& v, bool with_root) {
    Json j = Json::object();
    j["power"] = json_of_rat(v.power);
    j["degree"] = v.degree;
    if (with_root) j["root"] = v.real_root();
    return j;
}

NormValue norm_of_json(const Json& j) {
    NormValue v;
    v.power = rat_of_json(need_key(j, "power"));
    v.degree = as_int(need_key(j, "degree"), "degree");
    return v;
}

Json json_of_scale(const ScaleDecomposition& s, bool with_float) {
    Json j = Json::object();
    j["first_x"] = s.first_x;
    j["width"] = s.width;
    Json powers = Json::array();
    for (const Rat& p : s.powers) powers.push_back(json_of_rat(p));
    j["powers"] = std::move(powers);
    if (with_float) {
        j["total"] = s.total;
        j["error_bound"] = s.error_bound;
    }
    return j;
}

ScaleDecomposition scale_of_json(const Json& j) {
    ScaleDecomposition s;
    s.first_x = as_ll(need_key(j, "first_x"), "first_x");
    s.width = as_ll(need_key(j, "width"), "width");
    for (const Json& p : need_key(j, "powers")) s.powers.push_back(rat_of_json(p));
    if (j.contains("total")) s.total = j.at("total").get<double>();
    if (j.contains("error_bound")) s.error_bound = j.at("error_bound").get<double>();
    return s;
}

Json json_of_power_min(const PowerMin& m) {
    Json j = Json::object();
    j["q"] = json_of_int(m.q);
    j["dist"] = json_of_rat(m.dist);
    return j;
}

PowerMin power_min_of_json(const Json& j) {
    PowerMin m;
    m.q = int_of_json(need_key(j, "q"));
    m.dist = rat_of_json(need_key(j, "dist"));
    return m;
}

Json json_of_recurrence(const RecurrenceTrace& t) {
    Json j = Json::object();
    j["q"] = json_of_int(t.q);
    j["max_dist"] = json_of_rat(t.max_dist);
    Json steps = Json::array();
    for (const RecurrenceStep& s : t.steps) {
        Json js = Json::object();
        js["budget"] = json_of_int(s.budget);
        js["q"] = json_of_int(s.q);
        js["dist"] = json_of_rat(s.dist);
        steps.push_back(std::move(js));
    }
    j["steps"] = std::move(steps);
    return j;
}

RecurrenceTrace recurrence_of_json(const Json& j) {
    RecurrenceTrace t;
    t.q = int_of_json(need_key(j, "q"));
    t.max_dist = rat_of_json(need_key(j, "max_dist"));
    for (const Json& js : need_key(j, "steps")) {
        RecurrenceStep s;
        s.budget = int_of_json(need_key(js, "budget"));
        s.q = int_of_json(need_key(js, "q"));
        s.dist = rat_of_json(need_key(js, "dist"));
        t.steps.push_back(std::move(s));
    }
    return t;
}

Json json_of_progression(const PowerProgression& p) {
    Json j = Json::object();
    j["start"] = json_of_int(p.start);
    j["q"] = json_of_int(p.q);
    j["k"] = p.k;
    j["length"] = p.length;
    j["step"] = json_of_int(p.step());
    return j;
}

PowerProgression progression_of_json(const Json& j) {
    PowerProgression p;
    p.start = int_of_json(need_key(j, "start"));
    p.q = int_of_json(need_key(j, "q"));
    p.k = as_int(need_key(j, "k"), "k");
    p.length = as_ll(need_key(j, "length"), "length");
    return p;
}

Json json_of_increment(const IncrementResult& r) {
    Json j = Json::object();
    j["progression"] = json_of_progression(r.progression);
    j["relative_density"] = json_of_rat(r.relative_density);
    j["increment"] = json_of_rat(r.increment);
    return j;
}

IncrementResult increment_of_json(const Json& j) {
    IncrementResult r;
    r.progression = progression_of_json(need_key(j, "progression"));
    r.relative_density = rat_of_json(need_key(j, "relative_density"));
    r.increment = rat_of_json(need_key(j, "increment"));
    return r;
}

Json json_of_trajectory(const IterationTrajectory& t) {
    Json j = Json::object();
    j["stop"] = t.stop;
    Json entries = Json::array();
    for (const TrajectoryEntry& e : t.entries) {
        Json je = Json::object();
        je["N"] = e.N;
        je["density"] = json_of_rat(e.density);
        je["lacking"] = e.lacking;
        je["move"] = e.move ? json_of_increment(*e.move) : Json(nullptr);
        entries.push_back(std::move(je));
    }
    j["entries"] = std::move(entries);
    return j;
}

IterationTrajectory trajectory_of_json(const Json& j) {
    IterationTrajectory t;
    t.stop = need_key(j, "stop").get<std::string>();
    for (const Json& je : need_key(j, "entries")) {
        TrajectoryEntry e;
        e.N = as_ll(need_key(je, "N"), "N");
        e.density = rat_of_json(need_key(je, "density"));
        e.lacking = need_key(je, "lacking").get<bool>();
        const Json& mv = need_key(je, "move");
        if (!mv.is_null()) e.move = increment_of_json(mv);
        t.entries.push_back(std::move(e));
    }
    return t;
}

Json json_of_probe(const VonNeumannReport& r, bool exact_only) {
    Json j = Json::object();
    j["t_value"] = json_of_rat(r.t_value);
    j["d"] = r.d_norm;
    j["M"] = r.M;
    if (!exact_only) {
        j["normalization"] = r.normalization;
        j["lhs"] = r.lhs;
        j["local_ratio_sum"] = r.local_ratio_sum;
        j["h_term"] = r.h_term;
        j["norm_term"] = r.norm_term;
    }
    j["chain"] = json_of_concrete_run(r.chain);
    return j;
}

VonNeumannReport probe_of_json(const Json& j) {
    VonNeumannReport r;
    r.t_value = rat_of_json(need_key(j, "t_value"));
    r.d_norm = as_int(need_key(j, "d"), "d");
    r.M = as_ll(need_key(j, "M"), "M");
    if (j.contains("normalization")) r.normalization = j.at("normalization").get<double>();
    if (j.contains("lhs")) r.lhs = j.at("lhs").get<double>();
    if (j.contains("local_ratio_sum")) r.local_ratio_sum = j.at("local_ratio_sum").get<double>();
    if (j.contains("h_term")) r.h_term = j.at("h_term").get<double>();
    if (j.contains("norm_term")) r.norm_term = j.at("norm_term").get<double>();
    r.chain = concrete_run_of_json(need_key(j, "chain"));
    return r;
}

std::string function_to_csv(const GridFunction& f) {
    std::string out;
    for (long long x = f.lo(); !f.empty() && x <= f.hi(); ++x)
        out += std::to_string(x) + "," + rat_str(f.value(x)) + "\n";
    return out;
}

GridFunction function_from_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::map<long long, Rat> pts;
    while (std::getline(in, line)) {
        std::string t = trimmed(line);
        if (t.empty() || t[0] == '#') continue;
        size_t comma = t.find(',');
        if (comma == std::string::npos)
            throw Error("domain", "function line needs 'x,value': '" + t + "'");
        long long x;
        try {
            size_t used = 0;
            x = std::stoll(t.substr(0, comma), &used);
            if (used != comma) throw std::invalid_argument("trailing");
        } catch (const std::exception&) {
            throw Error("domain", "bad point '" + t.substr(0, comma) + "'");
        }
        if (!pts.emplace(x, parse_number(t.substr(comma + 1))).second)
            throw Error("domain", "duplicate point " + std::to_string(x));
    }
    if (pts.empty()) return GridFunction{};
    long long lo = pts.begin()->first, hi = pts.rbegin()->first;
    std::vector<Rat> vals(static_cast<size_t>(hi - lo + 1), Rat(0));
    for (const auto& [x, v] : pts) vals[static_cast<size_t>(x - lo)] = v;
    return GridFunction(lo, std::move(vals));
}

std::string set_to_text(const DensitySet& A) {
    std::string out = "#N=" + std::to_string(A.n) + "\n";
    std::vector<long long> e = A.sorted();
    for (size_t i = 0; i < e.size();) {
        size_t j = i;
        while (j + 1 < e.size() && e[j + 1] == e[j] + 1) ++j;
        if (j == i)
            out += std::to_string(e[i]) + "\n";
        else
            out += std::to_string(e[i]) + "-" + std::to_string(e[j]) + "\n";
        i = j + 1;
    }
    return out;
}

DensitySet set_from_text(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    long long n = -1;
    std::set<long long> elems;
    auto parse_ll = [](const std::string& s) {
        try {
            size_t used = 0;
            long long v = std::stoll(s, &used);
            if (used != s.size()) throw std::invalid_argument("trailing");
            return v;
        } catch (const std::exception&) {
            throw Error("domain", "bad set entry '" + s + "'");
        }
    };
    while (std::getline(in, line)) {
        std::string t = trimmed(line);
        if (t.empty()) continue;
        if (t[0] == '#') {
            if (t.rfind("#N=", 0) == 0) {
                if (n >= 0) throw Error("domain", "duplicate #N= header");
                n = parse_ll(t.substr(3));
                if (n < 1) throw Error("domain", "set window must be positive");
            }
            continue;
        }
        if (n < 0) throw Error("domain", "set file must start with a #N= header");
        size_t dash = t.find('-', 1);  // position 0 would be a sign
        long long a, b;
        if (dash == std::string::npos) {
            a = b = parse_ll(t);
        } else {
            a = parse_ll(t.substr(0, dash));
            b = parse_ll(t.substr(dash + 1));
        }
        if (a > b) throw Error("domain", "descending run '" + t + "'");
        if (a < 1 || b > n)
            throw Error("domain", "set entry '" + t + "' leaves the window [1.." +
                                      std::to_string(n) + "]");
        for (long long x = a; x <= b; ++x) elems.insert(x);
    }
    if (n < 0) throw Error("domain", "set file must start with a #N= header");
    return DensitySet::from_elems(n, std::move(elems));
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("io", "cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("io", "cannot open '" + path + "' for writing");
    out << content;
    if (!out) throw Error("io", "short write to '" + path + "'");
}

}  // namespace petlab
