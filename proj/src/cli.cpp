#include "petlab/cli.hpp"

#include "petlab/counting.hpp"
#include "petlab/dioph.hpp"
#include "petlab/gowers.hpp"
#include "petlab/increment.hpp"
#include "petlab/json_io.hpp"
#include "petlab/pet.hpp"
#include "petlab/prng.hpp"
#include "petlab/reference.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace petlab {

namespace {

// A flag-level problem detected after CLI11 parsing; maps to exit code 2.
struct UsageFailure {
    std::string message;
};

struct Rationalized {
    std::string given;
    Rat used;
};

// Exact "p/q" and integer inputs pass through; decimal or exponent spellings
// are rationalized to the best approximation with denominator <= max_den and
// the substitution is logged for the report.
Rat read_freq(const std::string& text, long long max_den, std::vector<Rationalized>& log) {
    Rat v = parse_number(text);
    bool floating = text.find('.') != std::string::npos ||
                    (text.find('/') == std::string::npos &&
                     (text.find('e') != std::string::npos || text.find('E') != std::string::npos));
    if (!floating) return v;
    Rat b = bounded_denominator(v, Int(max_den));
    log.push_back({text, b});
    return b;
}

void attach_rationalized(Json& j, const std::vector<Rationalized>& log) {
    if (log.empty()) return;
    Json arr = Json::array();
    for (const Rationalized& r : log) {
        Json e = Json::object();
        e["given"] = r.given;
        e["used"] = json_of_rat(r.used);
        arr.push_back(std::move(e));
    }
    j["rationalized"] = std::move(arr);
}

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : text) {
        if (ch == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    out.push_back(cur);
    if (out.size() == 1 && out[0].empty()) out.clear();
    return out;
}

Json parse_json_text(const std::string& text, const std::string& where) {
    try {
        return Json::parse(text);
    } catch (const std::exception& e) {
        throw Error("domain", "bad JSON in " + where + ": " + e.what());
    }
}

Configuration load_config(const std::string& path) {
    return config_of_json(parse_json_text(read_text_file(path), path));
}

DensitySet load_set(const std::string& path) { return set_from_text(read_text_file(path)); }

GridFunction load_function(const std::string& path) {
    return function_from_csv(read_text_file(path));
}

// "auto-balanced:SET" and "auto-indicator:SET" replicate the derived
// function across all slots; otherwise a comma list of CSV paths, with a
// single path replicated.
std::vector<GridFunction> load_funcs(const std::string& fns, int slots) {
    const std::string balanced = "auto-balanced:", indicator = "auto-indicator:";
    if (fns.rfind(balanced, 0) == 0) {
        GridFunction f = balanced_function(load_set(fns.substr(balanced.size())));
        return std::vector<GridFunction>(static_cast<size_t>(slots), f);
    }
    if (fns.rfind(indicator, 0) == 0) {
        GridFunction f = load_set(fns.substr(indicator.size())).indicator();
        return std::vector<GridFunction>(static_cast<size_t>(slots), f);
    }
    std::vector<std::string> paths = split_list(fns);
    if (paths.empty()) throw UsageFailure{"--fns needs at least one source"};
    std::vector<GridFunction> fs;
    fs.reserve(paths.size());
    for (const std::string& p : paths) fs.push_back(load_function(p));
    if (fs.size() == 1 && slots > 1) fs.assign(static_cast<size_t>(slots), fs[0]);
    return fs;
}

void emit(std::ostream& out, const Json& j) { out << j.dump(2) << "\n"; }

Json error_json(const std::string& code, const std::string& message) {
    Json e = Json::object();
    e["code"] = code;
    e["message"] = message;
    Json j = Json::object();
    j["error"] = std::move(e);
    return j;
}

// ---- verification suites -------------------------------------------------

GridFunction random_function(SplitMix64& rng, long long max_width, int max_points) {
    long long lo = rng.range(-max_width, max_width);
    long long width = rng.range(1, max_width);
    std::vector<Rat> vals(static_cast<size_t>(width), Rat(0));
    long long pts = rng.range(1, max_points);
    for (long long i = 0; i < pts; ++i)
        vals[static_cast<size_t>(rng.below(static_cast<std::uint64_t>(width)))] =
            rng.bounded_rat(4);
    return GridFunction(lo, std::move(vals));
}

Configuration random_power_config(SplitMix64& rng, int max_n, int max_k, long long max_c) {
    int k = static_cast<int>(rng.range(1, max_k));
    int n = static_cast<int>(rng.range(1, max_n));
    std::set<long long> seen;
    while (static_cast<int>(seen.size()) < n) {
        long long c = rng.range(-max_c, max_c);
        if (c != 0) seen.insert(c);
    }
    std::vector<Int> coeffs(seen.begin(), seen.end());
    return Configuration::power(k, std::move(coeffs));
}

Configuration random_config(SplitMix64& rng) {
    if (rng.coin()) return random_power_config(rng, 3, 3, 3);
    for (;;) {
        int n = static_cast<int>(rng.range(1, 2));
        std::vector<IntPoly> ps;
        for (int i = 0; i < n; ++i) {
            int deg = static_cast<int>(rng.range(1, 2));
            std::vector<Int> cs(static_cast<size_t>(deg) + 1);
            for (Int& c : cs) c = rng.range(-2, 2);
            if (cs.back() == 0) cs.back() = rng.coin() ? 1 : -1;
            ps.emplace_back(std::move(cs));
        }
        Configuration c = Configuration::general(std::move(ps));
        if (!validate_configuration(c)) return c;
    }
}

bool vdc_trial(SplitMix64& rng) {
    GridFunction g = random_function(rng, 25, 12);
    std::set<long long> S;
    for (long long x = g.lo(); x <= g.hi(); ++x) S.insert(x);
    long long extras = rng.range(0, 5);
    for (long long i = 0; i < extras; ++i) S.insert(rng.range(-40, 40));
    std::set<long long> H;
    long long hn = rng.range(1, 6);
    for (long long i = 0; i < hn; ++i) H.insert(rng.range(-8, 8));
    auto [lhs, rhs] = verify_vdc(g, H, S);
    return lhs <= rhs;
}

bool gowers_trial(SplitMix64& rng) {
    GridFunction f = random_function(rng, 10, 8);
    int d = 2 + static_cast<int>(rng.below(2));
    Rat main = gowers_norm(f, d).power;
    if (main < 0) return false;
    Rat unrolled = 0;
    for (long long h = -(f.hi() - f.lo()); h <= f.hi() - f.lo(); ++h)
        unrolled += gowers_norm(delta(f, h), d - 1).power;
    return unrolled == main;
}

bool fourier_trial(SplitMix64& rng) {
    GridFunction f = random_function(rng, 32, 20);
    return u2_fourier_check(f, 512).relative_gap <= 1e-6;
}

bool count_trial(SplitMix64& rng) {
    Configuration c = random_config(rng);
    std::vector<GridFunction> funcs;
    for (int i = 0; i <= c.n(); ++i) funcs.push_back(random_function(rng, 40, 10));
    bool both = rng.coin();
    return count_operator(funcs, c, both).value == ref::count_naive(funcs, c, both);
}

bool expand_trial(SplitMix64& rng) {
    long long N = rng.range(2, 100);
    std::set<long long> e;
    for (long long x = 1; x <= N; ++x)
        if (rng.coin()) e.insert(x);
    DensitySet A = DensitySet::from_elems(N, std::move(e));
    Configuration c = random_power_config(rng, 2, 2, 3);
    Expansion ex = balanced_expansion(A, c);
    if (ex.terms.size() != (1u << (c.n() + 1))) return false;
    if (balanced_function(A).sum() != 0) return false;
    return ex.total == Rat(count_in_set(A, c));
}

// q <= Q^{1-1/E} iff q^E <= Q^{E-1}; a witness m < E with q^{m+1} <= Q^m
// already implies the bound, and one always appears early because q loses a
// constant factor to Q per step.
bool product_bound_holds(const Int& q, long long Q, int k, int r) {
    if (q <= 1) return true;
    Int E = pow_int(pow_int(Int(k), 4) + 1, static_cast<unsigned long>(r));
    Int qm = q * q, Qm = Q;
    for (Int m = 1; m < E; ++m) {
        if (Qm >= qm) return true;
        qm *= q;
        Qm *= Q;
    }
    return false;
}

bool dioph_trial(SplitMix64& rng) {
    int k = rng.coin() ? 2 : 3;
    int r = static_cast<int>(rng.range(1, 3));
    std::vector<Rat> alphas;
    for (int i = 0; i < r; ++i) {
        long long den = rng.range(1, 50);
        alphas.emplace_back(rng.range(0, den - 1), den);
    }
    long long Q = rng.range(2, 1000);
    RecurrenceTrace tr = simultaneous_power_recurrence(alphas, k, Q);
    if (!product_bound_holds(tr.q, Q, k, r)) return false;

    unsigned long uk = static_cast<unsigned long>(k);
    Rat qk(pow_int(tr.q, uk));
    for (int i = 0; i < r; ++i) {
        Int tail = 1;
        for (int j = i + 1; j < r; ++j) tail *= tr.steps[static_cast<size_t>(j)].q;
        Rat lifted = tr.steps[static_cast<size_t>(i)].dist * Rat(pow_int(tail, uk));
        if (!(nearest_int_distance(alphas[static_cast<size_t>(i)] * qk) <= lifted)) return false;
    }

    Rat best = 1;
    for (long long q = 1; q <= Q; ++q) {
        Rat qq(pow_int(Int(q), uk));
        Rat d = 0;
        for (const Rat& a : alphas) d = std::max(d, nearest_int_distance(a * qq));
        best = std::min(best, d);
    }
    return best <= tr.max_dist;
}

bool bohr_trial(SplitMix64& rng) {
    int k = static_cast<int>(rng.range(1, 3));
    int m = static_cast<int>(rng.range(0, 3));
    std::vector<Rat> freqs;
    for (int i = 0; i < m; ++i) {
        long long den = rng.range(1, 12);
        freqs.emplace_back(rng.range(0, den - 1), den);
    }
    BohrSpec spec = BohrSpec::make(std::move(freqs), Rat(1, rng.range(2, 8)), rng.range(8, 200));
    for (BohrMode mode : {BohrMode::theory, BohrMode::optimal}) {
        PowerProgression P = bohr_power_progression(spec, k, mode);
        for (const Int& x : P.elements())
            if (!bohr_contains(x, spec)) return false;
        if (mode == BohrMode::optimal) {
            Int next = P.step() * (P.half() + 1);
            if (bohr_contains(next, spec) && bohr_contains(-next, spec)) return false;
        }
    }
    return true;
}

bool increment_trial(SplitMix64& rng) {
    Configuration sq3 = Configuration::power(2, {1, 2});
    long long n = rng.range(20, 150);
    std::set<long long> e;
    long long picks = rng.range(0, 10);
    for (long long i = 0; i < picks; ++i) e.insert(rng.range(1, n));
    DensitySet A = DensitySet::from_elems(n, std::move(e));
    long long q = rng.range(1, 3), step = q * q;
    long long L = rng.range(2, 1 + (n - 1) / step);
    long long a = rng.range(1, n - (L - 1) * step);
    DensitySet pulled = rescale_through(A, PowerProgression{Int(a), Int(q), 2, L});
    if (count_in_set(A, sq3) == 0 && count_in_set(pulled, sq3) != 0) return false;

    long long w = rng.range(4, 36);
    std::vector<Rat> vals;
    Rat total = 0;
    for (long long i = 0; i < w; ++i) {
        vals.push_back(rng.rat(8, 5));
        total += vals.back();
    }
    Rat mean = total / Rat(w);
    for (Rat& v : vals) v -= mean;
    GridFunction f(1, std::move(vals));
    std::vector<std::vector<long long>> pieces(1);
    for (long long x = 1; x <= w; ++x) {
        if (!pieces.back().empty() && rng.below(3) == 0) pieces.emplace_back();
        pieces.back().push_back(x);
    }
    Rat abs_total = 0;
    for (const auto& piece : pieces) {
        Rat s = 0;
        for (long long x : piece) s += f.value(x);
        abs_total += s < 0 ? Rat(-s) : s;
    }
    Rat theta = abs_total / Rat(w);
    PartitionPick pick = partition_increment(f, pieces);
    if (theta == 0) return !pick.found;
    if (!pick.found) return false;
    return pick.sum >= theta / 2 * Rat(static_cast<long long>(pieces[pick.index].size()));
}

const std::map<std::string, std::function<bool(SplitMix64&)>>& suites() {
    static const std::map<std::string, std::function<bool(SplitMix64&)>> table = {
        {"vdc", vdc_trial},          {"gowers", gowers_trial},
        {"fourier", fourier_trial},  {"count", count_trial},
        {"expand", expand_trial},    {"dioph", dioph_trial},
        {"bohr", bohr_trial},        {"increment", increment_trial},
    };
    return table;
}

}  // namespace

int cli_run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact machinery for polynomial configurations in dense sets: "
                 "linearisation chains, uniformity norms, counting operators, "
                 "kth-power recurrence, Bohr progressions, density increments."};
    app.name("petlab");
    app.footer("Rationals read and print as exact p/q strings. Decimal frequency inputs are\n"
               "rationalized to denominator <= --max-den (default 1000000) and reported.\n"
               "PETLAB_THREADS caps worker threads; SplitMix64(seed) drives every suite.");
    app.require_subcommand(1);

    int rc = 0;

    // linearize
    struct {
        std::string config, mode = "symbolic", fns;
        long long N = 0, H = 0, max_forms = 5000;
        int max_steps = 40;
    } lin;
    auto* lin_cmd = app.add_subcommand("linearize", "Reduce a configuration to a linear system");
    lin_cmd->add_option("--config", lin.config, "configuration JSON file")->required();
    lin_cmd->add_option("--mode", lin.mode, "symbolic | concrete")
        ->check(CLI::IsMember({"symbolic", "concrete"}));
    lin_cmd->add_option("--fns", lin.fns,
                        "concrete mode data: auto-balanced:SET, auto-indicator:SET, or CSV paths");
    lin_cmd->add_option("--N", lin.N, "concrete mode window [1..N]")->check(CLI::PositiveNumber);
    lin_cmd->add_option("--H", lin.H, "concrete mode parameter budget")->check(CLI::PositiveNumber);
    lin_cmd->add_option("--max-steps", lin.max_steps, "differencing step budget (default 40)");
    lin_cmd->add_option("--max-forms", lin.max_forms, "slot budget (default 5000)");
    lin_cmd->callback([&] {
        Configuration c = load_config(lin.config);
        PetOptions opt{lin.max_steps, lin.max_forms};
        if (lin.mode == "symbolic") {
            emit(out, json_of_system(linearize(c, opt)));
            return;
        }
        if (lin.fns.empty()) throw UsageFailure{"--fns is required for --mode concrete"};
        if (lin.N <= 0) throw UsageFailure{"--N is required for --mode concrete"};
        if (lin.H <= 0) throw UsageFailure{"--H is required for --mode concrete"};
        std::vector<GridFunction> funcs = load_funcs(lin.fns, c.n() + 1);
        emit(out, json_of_concrete_run(concrete_linearize(funcs, c, lin.N, lin.H, opt)));
    });

    // gowers
    struct {
        std::string fn, local, format = "json";
        int d = 1;
        long long scale = 0;
        bool use_float = false;
    } gw;
    auto* gw_cmd = app.add_subcommand("gowers", "Uniformity norm of a function table");
    gw_cmd->add_option("--fn", gw.fn, "function CSV (x,p/q lines)")->required();
    gw_cmd->add_option("--d", gw.d, "norm degree")->required()->check(CLI::PositiveNumber);
    auto* local_opt = gw_cmd->add_option("--local", gw.local, "a,len window restriction");
    auto* scale_opt =
        gw_cmd->add_option("--scale", gw.scale, "sliding window width")->check(CLI::PositiveNumber);
    local_opt->excludes(scale_opt);
    gw_cmd->add_flag("--float", gw.use_float, "add floating roots to the exact output");
    gw_cmd->add_flag("--exact", [](std::int64_t) {}, "exact output only (the default)");
    gw_cmd->add_option("--format", gw.format, "json | csv (csv only with --scale)")
        ->check(CLI::IsMember({"json", "csv"}));
    gw_cmd->callback([&] {
        GridFunction f = load_function(gw.fn);
        if (gw.format == "csv" && gw.scale == 0)
            throw UsageFailure{"--format csv needs --scale"};
        if (gw.scale > 0) {
            ScaleDecomposition sc = gowers_norm_scale(f, gw.scale, gw.d);
            if (gw.format == "csv") {
                for (size_t i = 0; i < sc.powers.size(); ++i)
                    out << sc.first_x + static_cast<long long>(i) << ","
                        << rat_str(sc.powers[i]) << "\n";
                return;
            }
            emit(out, json_of_scale(sc, gw.use_float));
            return;
        }
        if (!gw.local.empty()) {
            std::vector<std::string> parts = split_list(gw.local);
            if (parts.size() != 2) throw UsageFailure{"--local expects a,len"};
            long long a = 0, len = 0;
            try {
                a = std::stoll(parts[0]);
                len = std::stoll(parts[1]);
            } catch (const std::exception&) {
                throw UsageFailure{"--local expects integers a,len"};
            }
            if (len < 1) throw UsageFailure{"--local length must be positive"};
            emit(out, json_of_norm(gowers_norm_local(f, a, a + len - 1, gw.d), gw.use_float));
            return;
        }
        emit(out, json_of_norm(gowers_norm(f, gw.d), gw.use_float));
    });

    // count
    struct {
        std::string set, config;
        bool both = false;
    } ct;
    auto* ct_cmd = app.add_subcommand("count", "Configuration count inside a set");
    ct_cmd->add_option("--set", ct.set, "set file (#N= header)")->required();
    ct_cmd->add_option("--config", ct.config, "configuration JSON file")->required();
    ct_cmd->add_flag("--both-signs", ct.both, "scan negative progression parameters too");
    ct_cmd->callback([&] {
        DensitySet A = load_set(ct.set);
        Configuration c = load_config(ct.config);
        std::vector<GridFunction> funcs(static_cast<size_t>(c.n()) + 1, A.indicator());
        emit(out, json_of_count(count_operator(funcs, c, ct.both)));
    });

    // expand
    struct {
        std::string set, config, format = "json";
    } ex;
    auto* ex_cmd = app.add_subcommand("expand", "Balanced-function expansion of a count");
    ex_cmd->add_option("--set", ex.set, "set file")->required();
    ex_cmd->add_option("--config", ex.config, "configuration JSON file")->required();
    ex_cmd->add_option("--format", ex.format, "json | csv")
        ->check(CLI::IsMember({"json", "csv"}));
    ex_cmd->callback([&] {
        Expansion e = balanced_expansion(load_set(ex.set), load_config(ex.config));
        if (ex.format == "csv") {
            for (const ExpansionTerm& t : e.terms)
                out << t.mask << "," << rat_str(t.value) << "\n";
            return;
        }
        emit(out, json_of_expansion(e));
    });

    // dioph min | recur
    struct {
        std::string alpha, alphas;
        int k = 2;
        long long Q = 1, max_den = 1000000;
    } dp;
    auto* dp_cmd = app.add_subcommand("dioph", "Power-distance minimization and recurrence");
    dp_cmd->require_subcommand(1);
    auto* dmin = dp_cmd->add_subcommand("min", "Brute-force min of ||alpha q^k|| over q <= Q");
    dmin->add_option("--alpha", dp.alpha, "frequency (p/q or decimal)")->required();
    dmin->add_option("--k", dp.k, "power")->required()->check(CLI::PositiveNumber);
    dmin->add_option("--Q", dp.Q, "search bound")->required()->check(CLI::PositiveNumber);
    dmin->add_option("--max-den", dp.max_den, "denominator bound for decimal input")
        ->check(CLI::PositiveNumber);
    dmin->callback([&] {
        std::vector<Rationalized> log;
        PowerMin m = min_power_distance(read_freq(dp.alpha, dp.max_den, log), dp.k, dp.Q);
        Json j = json_of_power_min(m);
        attach_rationalized(j, log);
        emit(out, j);
    });
    auto* drec = dp_cmd->add_subcommand("recur", "Simultaneous kth power recurrence");
    drec->add_option("--alphas", dp.alphas, "comma list of frequencies")->required();
    drec->add_option("--k", dp.k, "power")->required()->check(CLI::PositiveNumber);
    drec->add_option("--Q", dp.Q, "total budget")->required()->check(CLI::PositiveNumber);
    drec->add_option("--max-den", dp.max_den, "denominator bound for decimal input")
        ->check(CLI::PositiveNumber);
    drec->callback([&] {
        std::vector<Rationalized> log;
        std::vector<Rat> alphas;
        for (const std::string& s : split_list(dp.alphas))
            alphas.push_back(read_freq(s, dp.max_den, log));
        Json j = json_of_recurrence(simultaneous_power_recurrence(alphas, dp.k, dp.Q));
        attach_rationalized(j, log);
        emit(out, j);
    });

    // bohr
    struct {
        std::string freqs, eta, mode = "theory";
        int k = 2;
        long long N = 1, max_den = 1000000;
        std::optional<double> C;
    } bh;
    auto* bh_cmd = app.add_subcommand("bohr", "kth power progression inside a Bohr set");
    bh_cmd->add_option("--freqs", bh.freqs, "comma list of frequencies (empty for none)");
    bh_cmd->add_option("--eta", bh.eta, "membership tolerance in (0, 1/2]")->required();
    bh_cmd->add_option("--N", bh.N, "ambient window")->required()->check(CLI::PositiveNumber);
    bh_cmd->add_option("--k", bh.k, "power")->required()->check(CLI::PositiveNumber);
    bh_cmd->add_option("--mode", bh.mode, "theory | optimal")
        ->check(CLI::IsMember({"theory", "optimal"}));
    bh_cmd->add_option("--C", bh.C, "budget exponent constant (default 5 ln k)");
    bh_cmd->add_option("--max-den", bh.max_den, "denominator bound for decimal input")
        ->check(CLI::PositiveNumber);
    bh_cmd->callback([&] {
        std::vector<Rationalized> log;
        std::vector<Rat> freqs;
        for (const std::string& s : split_list(bh.freqs))
            freqs.push_back(read_freq(s, bh.max_den, log));
        BohrSpec spec = BohrSpec::make(freqs, read_freq(bh.eta, bh.max_den, log), bh.N);
        BohrMode mode = bh.mode == "theory" ? BohrMode::theory : BohrMode::optimal;
        long long budget = bohr_budget(spec, bh.k, bh.C);
        PowerProgression P = bohr_power_progression(spec, bh.k, mode, bh.C);
        Json j = Json::object();
        j["budget"] = budget;
        j["progression"] = json_of_progression(P);
        if (mode == BohrMode::theory && !spec.K.empty())
            j["trace"] = json_of_recurrence(simultaneous_power_recurrence(spec.K, bh.k, budget));
        attach_rationalized(j, log);
        emit(out, j);
    });

    // increment
    struct {
        std::string set;
        int k = 2;
        long long min_len = 1;
    } inc;
    auto* inc_cmd = app.add_subcommand("increment", "Density increment on power progressions");
    inc_cmd->add_option("--set", inc.set, "set file")->required();
    inc_cmd->add_option("--k", inc.k, "power of the progression step")
        ->required()
        ->check(CLI::PositiveNumber);
    inc_cmd->add_option("--min-len", inc.min_len, "minimum progression length (default 1)")
        ->check(CLI::PositiveNumber);
    inc_cmd->callback([&] {
        std::optional<IncrementResult> r =
            find_power_increment(load_set(inc.set), inc.k, inc.min_len);
        Json j = Json::object();
        j["found"] = r.has_value();
        if (r) {
            Json body = json_of_increment(*r);
            for (auto& [key, val] : body.items()) j[key] = val;
        }
        emit(out, j);
    });

    // iterate
    struct {
        std::string set, config, format = "json";
        long long min_len = 1;
        int max_steps = 20;
    } it;
    auto* it_cmd = app.add_subcommand("iterate", "Density increment iteration");
    it_cmd->add_option("--set", it.set, "set file")->required();
    it_cmd->add_option("--config", it.config, "power configuration JSON file")->required();
    it_cmd->add_option("--min-len", it.min_len, "minimum progression length (default 1)")
        ->check(CLI::PositiveNumber);
    it_cmd->add_option("--max-steps", it.max_steps, "iteration cap (default 20)")
        ->check(CLI::PositiveNumber);
    it_cmd->add_option("--format", it.format, "json | csv")
        ->check(CLI::IsMember({"json", "csv"}));
    it_cmd->callback([&] {
        IterationTrajectory t =
            density_iteration(load_set(it.set), load_config(it.config), it.min_len, it.max_steps);
        if (it.format == "csv") {
            for (const TrajectoryEntry& e : t.entries)
                out << e.N << "," << rat_str(e.density) << "," << (e.lacking ? 1 : 0) << "\n";
            return;
        }
        emit(out, json_of_trajectory(t));
    });

    // probe
    struct {
        std::string config, fns;
        long long N = 1, H = 1;
        int d = 1;
        bool exact = false;
    } pb;
    auto* pb_cmd = app.add_subcommand("probe", "Local von Neumann diagnostic");
    pb_cmd->add_option("--config", pb.config, "power configuration JSON file")->required();
    pb_cmd->add_option("--N", pb.N, "ambient window")->required()->check(CLI::PositiveNumber);
    pb_cmd->add_option("--H", pb.H, "chain parameter budget")->required()->check(CLI::PositiveNumber);
    pb_cmd->add_option("--d", pb.d, "uniformity norm degree")->required()->check(CLI::PositiveNumber);
    pb_cmd->add_option("--fns", pb.fns,
                       "auto-balanced:SET, auto-indicator:SET, or comma list of CSV paths")
        ->required();
    pb_cmd->add_flag("--exact", pb.exact, "omit the floating diagnostics");
    pb_cmd->callback([&] {
        Configuration c = load_config(pb.config);
        std::vector<GridFunction> funcs = load_funcs(pb.fns, c.n() + 1);
        emit(out, json_of_probe(local_von_neumann_probe(funcs, c, pb.H, pb.d), pb.exact));
    });

    // verify
    struct {
        std::string suite;
        long long trials = 100;
        std::uint64_t seed = 0;
    } vf;
    auto* vf_cmd = app.add_subcommand("verify", "Seeded property suites");
    vf_cmd->add_option("--suite", vf.suite,
                       "vdc | gowers | fourier | count | expand | dioph | bohr | increment")
        ->required();
    vf_cmd->add_option("--trials", vf.trials, "trial count (default 100)")
        ->check(CLI::PositiveNumber);
    vf_cmd->add_option("--seed", vf.seed, "SplitMix64 seed (default 0)");
    vf_cmd->callback([&] {
        auto found = suites().find(vf.suite);
        if (found == suites().end()) {
            std::string names;
            for (const auto& [name, fn] : suites()) names += (names.empty() ? "" : ", ") + name;
            throw UsageFailure{"--suite '" + vf.suite + "' unknown; choose one of: " + names};
        }
        SplitMix64 rng(vf.seed);
        long long passed = 0, failed = 0;
        for (long long t = 0; t < vf.trials; ++t) (found->second(rng) ? passed : failed) += 1;
        Json j = Json::object();
        j["passed"] = passed;
        j["failed"] = failed;
        emit(out, j);
        if (failed > 0) rc = 1;
    });

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    } catch (const UsageFailure& u) {
        err << u.message << "\n";
        return 2;
    } catch (const Error& e) {
        emit(out, error_json(e.code(), e.what()));
        return 1;
    } catch (const std::exception& e) {
        emit(out, error_json("internal", e.what()));
        return 1;
    }
    return rc;
}

}  // namespace petlab
