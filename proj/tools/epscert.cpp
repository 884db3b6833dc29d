// Command-line front end: every subcommand prints a deterministic JSON or CSV
// payload on stdout, validation failures exit 2 with a one-line error on
// stderr, internal errors exit 1.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "epscert/constants.hpp"
#include "epscert/discriminant.hpp"
#include "epscert/format.hpp"
#include "epscert/modlab.hpp"
#include "epscert/quadform.hpp"
#include "epscert/rank_bounds.hpp"
#include "epscert/series.hpp"
#include "epscert/tower.hpp"

using json = nlohmann::ordered_json;
using namespace epscert;

namespace {

json json_mpz(const mpz_class& v) {
    if (v.fits_ulong_p() && v.get_ui() <= (1ull << 53)) return v.get_ui();
    return v.get_str();
}

std::vector<long long> parse_ll_list(const std::string& csv) {
    std::vector<long long> out;
    for (const std::string& tok : split_csv(csv)) out.push_back(std::stoll(tok));
    return out;
}

void emit(const json& payload) { std::cout << payload.dump(2) << "\n"; }

// ----------------------------------------------------------------- table

struct TableArgs {
    std::size_t n_max = 1;
    std::string fmt = "json";
    std::size_t prime_cap = default_prime_cap;
    bool sign_report = false;
};

int run_table(const TableArgs& args) {
    SeriesScan scan = series_scan(args.n_max, args.prime_cap);
    if (args.sign_report) {
        json rep;
        rep["n_max"] = args.n_max;
        rep["E_nonpositive"] = scan.report.E_nonpositive;
        rep["e_negative"] = scan.report.e_negative;
        emit(rep);
        return 0;
    }
    if (args.fmt == "csv") {
        std::string out = "N,S,s,t,E,e\n";
        for (const SeriesRow& row : scan.rows) {
            out += std::to_string(row.n);
            for (double v : {row.S, row.s, row.t, row.E, row.e}) {
                out += ',';
                out += format_double(v);
            }
            out += '\n';
        }
        std::cout << out;
        return 0;
    }
    json rows = json::array();
    for (const SeriesRow& row : scan.rows)
        rows.push_back({{"N", row.n},
                        {"S", row.S},
                        {"s", row.s},
                        {"t", row.t},
                        {"E", row.E},
                        {"e", row.e}});
    emit(rows);
    return 0;
}

// ----------------------------------------------------------------- disc

struct DiscArgs {
    std::uint64_t p = 2;
    std::optional<std::size_t> n;
    bool tame = false;
    bool exact = false;
    std::vector<std::string> ramified;
    std::size_t prime_cap = default_prime_cap;
};

int run_disc(const DiscArgs& args) {
    DiscriminantBound bound;
    std::size_t n = 0;
    if (args.n && !args.ramified.empty())
        throw std::invalid_argument("--n and --ramified are mutually exclusive");
    if (args.n) {
        n = *args.n;
        bound = args.tame ? minimal_tame_log_disc(args.p, n, args.exact, args.prime_cap)
                          : minimal_log_disc(args.p, n, args.exact, args.prime_cap);
    } else if (!args.ramified.empty()) {
        if (args.tame) throw std::invalid_argument("--tame applies only to --n queries");
        std::vector<RamificationDatum> data;
        for (const std::string& spec : args.ramified) {
            auto colon = spec.find(':');
            if (colon == std::string::npos)
                throw std::invalid_argument("ramified datum must look like ell:f1,f2 -- got " + spec);
            RamificationDatum d;
            d.ell = std::stoull(spec.substr(0, colon));
            for (const std::string& tok : split_csv(spec.substr(colon + 1)))
                d.residue_degrees.push_back(static_cast<unsigned>(std::stoul(tok)));
            data.push_back(std::move(d));
        }
        n = data.size();
        bound = relative_tame_log_disc(args.p, data, args.exact);
    } else {
        throw std::invalid_argument("disc needs --n or --ramified");
    }
    json out;
    out["p"] = args.p;
    out["N"] = n;
    out["log_value"] = bound.log_value;
    if (bound.exact_value) out["exact_value"] = bound.exact_value->get_str();
    emit(out);
    return 0;
}

// ----------------------------------------------------------------- constant

struct ConstantArgs {
    std::uint64_t p = 2;
    std::uint64_t d_kappa = 1;
    long long rho = 0;
    unsigned e = 1;
    double epsilon = 1.0;
    unsigned r = 1;
    bool raw_primes = false;
    std::size_t search_cap = default_search_cap;
    std::size_t prime_cap = default_prime_cap;
    double exp_limit = default_exp_limit;
};

json magnitude_or_null(const Magnitude& m) {
    if (m.astronomical) return nullptr;
    return m.value;
}

int run_constant(const ConstantArgs& args) {
    TowerSpec spec{args.p, args.e, args.d_kappa, args.rho,
                   std::vector<TowerStep>(args.e, TowerStep{0}), true};
    ConstantCertificate cert =
        tower_constant(spec, args.epsilon, args.r,
                       args.raw_primes ? SharpVariant::raw_primes : SharpVariant::factorial,
                       args.search_cap, args.prime_cap, args.exp_limit);
    json out;
    out["epsilon"] = cert.epsilon;
    out["r"] = cert.r;
    out["base"] = {{"d_kappa", cert.d_kappa}, {"rho", cert.rho}, {"logC0", cert.log_c0}};
    json levels = json::array();
    for (const LevelCertificate& lev : cert.levels) {
        json l;
        l["i"] = lev.level;
        l["d_k"] = lev.d_k;
        l["N0_log"] = lev.n0.log_value;
        l["log_c_closed"] = magnitude_or_null(lev.closed);
        l["log_c_sharp"] = lev.sharp.astronomical ? json(nullptr) : json(lev.sharp.value);
        l["argmax"] = lev.sharp.argmax;
        l["log_c_used"] = magnitude_or_null(lev.used);
        if (lev.used.astronomical) l["log_log_c_used"] = lev.used.log_value;
        l["flags"] = lev.flags;
        levels.push_back(std::move(l));
    }
    out["levels"] = std::move(levels);
    out["log_C_total"] = magnitude_or_null(cert.log_c_total);
    if (cert.log_c_total.astronomical) out["log_log_C_total"] = cert.log_c_total.log_value;
    emit(out);
    return 0;
}

// ----------------------------------------------------------------- bounds

struct BoundsArgs {
    std::uint64_t p = 2;
    unsigned e = 0;
    std::uint64_t d_kappa = 1;
    long long rho = 0;
    std::string tame;
    std::string r_list;
    std::optional<long long> seed_a, seed_t;
    bool no_leopoldt = false;
};

int run_bounds(const BoundsArgs& args) {
    TowerSpec spec;
    spec.p = args.p;
    spec.e = args.e;
    spec.d_kappa = args.d_kappa;
    spec.rho = args.rho;
    spec.leopoldt_assumed = !args.no_leopoldt;
    if (args.tame.empty()) {
        spec.steps.assign(args.e, TowerStep{0});
    } else {
        for (long long n : parse_ll_list(args.tame)) spec.steps.push_back(TowerStep{n});
    }
    std::vector<unsigned> r_values;
    if (!args.r_list.empty())
        for (long long r : parse_ll_list(args.r_list)) {
            if (r < 1) throw std::invalid_argument("r values must be >= 1");
            r_values.push_back(static_cast<unsigned>(r));
        }
    RankBoundReport report = tower_report(spec, r_values, args.seed_a, args.seed_t);

    json out;
    out["p"] = spec.p;
    out["e"] = spec.e;
    out["d_kappa"] = spec.d_kappa;
    out["rho"] = spec.rho;
    out["leopoldt_assumed"] = spec.leopoldt_assumed;
    out["seeds"] = {{"cl", report.seed_cl},
                    {"a", report.seed_a},
                    {"a_defaulted", report.seed_a_defaulted},
                    {"t", report.seed_t},
                    {"t_defaulted", report.seed_t_defaulted}};
    json levels = json::array();
    for (const RankLevel& lev : report.levels) {
        json l;
        l["i"] = lev.level;
        l["d_k"] = lev.d_k;
        l["N"] = lev.tame_count;
        l["rk_cl_bound"] = lev.rk_cl;
        l["rk_a_bound"] = lev.rk_a;
        l["rk_t_bound"] = lev.rk_t;
        json pr = json::object();
        for (const auto& [r, v] : lev.pr_exponent) pr[std::to_string(r)] = v;
        l["pr_exponents"] = std::move(pr);
        levels.push_back(std::move(l));
    }
    out["levels"] = std::move(levels);
    emit(out);
    return 0;
}

// ----------------------------------------------------------------- check

int run_check(double log_order, double log_disc, double log_c, double epsilon) {
    CertificateCheck check = check_epsilon_certificate(log_order, log_disc, log_c, epsilon);
    emit(json{{"holds", check.holds}, {"margin", check.margin}});
    return 0;
}

// ----------------------------------------------------------------- modlab

struct ModlabArgs {
    std::uint64_t p = 2;
    std::string lengths;
    std::string mode = "both";
    std::optional<unsigned> r;
    unsigned long cap = default_enum_cap;
};

json filtration_json(const Filtration& filt) {
    json levels = json::array();
    for (const FiltrationLevel& lev : filt.levels)
        levels.push_back({{"h", lev.h},
                          {"order", json_mpz(lev.order)},
                          {"p_rank", lev.p_rank},
                          {"quotient_order", json_mpz(lev.quotient_order)}});
    return levels;
}

int run_modlab(const ModlabArgs& args) {
    CyclotomicModule cm;
    cm.p = args.p;
    if (args.lengths.empty()) throw std::invalid_argument("modlab needs --lengths");
    for (long long n : parse_ll_list(args.lengths)) {
        if (n < 1) throw std::invalid_argument("lengths must be >= 1");
        cm.lengths.push_back(static_cast<unsigned>(n));
    }
    ConcreteModule m = build(cm, args.cap);
    json out;
    out["p"] = args.p;
    out["lengths"] = cm.lengths;
    out["mode"] = args.mode;
    out["order"] = json_mpz(m.order);
    if (args.mode == "structural" || args.mode == "both")
        out["levels"] = filtration_json(filtration(m, FiltrationMode::structural));
    if (args.mode == "bruteforce" || args.mode == "both") {
        Filtration brute = filtration(m, FiltrationMode::bruteforce, args.cap);
        if (args.mode == "bruteforce") {
            out["levels"] = filtration_json(brute);
        } else {
            json other = filtration_json(brute);
            bool agree = other == out["levels"];
            out["modes_agree"] = agree;
            if (!agree) out["levels_bruteforce"] = other;
        }
    }
    if (args.r) {
        PrTorsionCheck check = verify_pr_torsion(m, *args.r);
        out["pr_torsion"] = {{"r", *args.r},
                             {"ok", check.ok},
                             {"torsion_order", json_mpz(check.torsion_order)},
                             {"filtration_order", json_mpz(check.filtration_order)},
                             {"bound", json_mpz(check.bound)}};
    }
    emit(out);
    return 0;
}

int run_modlab_exhaustive(std::uint64_t p, unsigned max_len, unsigned max_s, unsigned r_max,
                          unsigned long cap) {
    ExhaustiveSummary summary = exhaustive_check(p, max_len, max_s, r_max, cap);
    json out;
    out["p"] = p;
    out["max_len"] = max_len;
    out["max_s"] = max_s;
    out["r_max"] = r_max;
    out["modules"] = summary.modules;
    out["checks"] = summary.checks;
    out["violations"] = summary.violations;
    emit(out);
    return 0;
}

// ----------------------------------------------------------------- quad

struct QuadArgs {
    std::optional<long long> disc;
    long long cap = default_disc_cap;
};

int run_quad(const QuadArgs& args) {
    if (!args.disc) throw std::invalid_argument("quad needs --disc");
    FormClassGroup group = class_group(*args.disc, args.cap);
    json out;
    out["D"] = group.D;
    out["h"] = group.h;
    json forms = json::array();
    for (const QuadForm& f : group.forms) forms.push_back({f.a, f.b, f.c});
    out["forms"] = std::move(forms);
    out["elementary_divisors"] = group.elementary_divisors;
    out["two_rank"] = group.two_rank;
    emit(out);
    return 0;
}

struct QuadScanArgs {
    long long max = 0;
    long long min = 3;
    std::optional<double> epsilon;
    std::optional<double> log_c;
    std::string fmt = "json";
    unsigned threads = 1;
};

int run_quad_scan(const QuadScanArgs& args) {
    if (args.max < 3) throw std::invalid_argument("--max must be >= 3");
    if (args.min < 3 || args.min > args.max)
        throw std::invalid_argument("--min must lie in [3, max]");
    if (args.fmt == "csv") {
        auto rows = genus_scan(-args.max, -args.min, args.threads);
        std::string out = "D,h,two_rank,t,pass\n";
        for (const GenusScanRow& row : rows) {
            out += std::to_string(row.D) + ',' + std::to_string(row.h) + ',' +
                   std::to_string(row.two_rank) + ',' + std::to_string(row.t) + ',' +
                   (row.pass ? '1' : '0') + std::string("\n");
        }
        std::cout << out;
        return 0;
    }
    if (!args.epsilon || !args.log_c)
        throw std::invalid_argument("quad scan in json mode needs --epsilon and --log-c");
    EpsilonScanResult res =
        epsilon_scan(-args.max, -args.min, *args.epsilon, *args.log_c, args.threads);
    json out;
    out["epsilon"] = *args.epsilon;
    out["log_c"] = *args.log_c;
    out["min_abs_d"] = args.min;
    out["max_abs_d"] = args.max;
    out["fundamental_count"] = res.fundamental_count;
    out["empirical_sup"] = res.empirical_sup;
    out["arg_sup"] = res.arg_sup;
    out["violations"] = res.violations;
    emit(out);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"executable certificates for p-class-group epsilon-inequalities in p-cyclic towers"};
    app.require_subcommand(1);
    unsigned threads = 1;
    app.add_option("--threads", threads, "worker threads for scans")->capture_default_str();

    TableArgs table_args;
    CLI::App* table = app.add_subcommand("table", "prime-log series S, s, t, E, e");
    table->add_option("--n-max", table_args.n_max, "last row index")->required();
    table->add_option("--format", table_args.fmt, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    table->add_option("--prime-cap", table_args.prime_cap, "prime-count cap");
    table->add_flag("--sign-report", table_args.sign_report, "emit the sign report instead");

    DiscArgs disc_args;
    CLI::App* disc = app.add_subcommand("disc", "minimal and relative tame log discriminants");
    disc->add_option("--p", disc_args.p, "the prime p")->required();
    disc->add_option("--n", disc_args.n, "number of tame primes");
    disc->add_flag("--tame", disc_args.tame, "exclude p from the prime list");
    disc->add_flag("--exact", disc_args.exact, "emit the exact integer");
    disc->add_option("--ramified", disc_args.ramified, "ramification data ell:f1,f2 (repeatable)");
    disc->add_option("--prime-cap", disc_args.prime_cap, "prime-count cap");

    ConstantArgs constant_args;
    CLI::App* constant = app.add_subcommand("constant", "tower constant certificate");
    constant->add_option("--p", constant_args.p)->required();
    constant->add_option("--d-kappa", constant_args.d_kappa)->required();
    constant->add_option("--rho", constant_args.rho)->required();
    constant->add_option("--e", constant_args.e)->required();
    constant->add_option("--epsilon", constant_args.epsilon)->required();
    constant->add_option("--r", constant_args.r)->required();
    constant->add_flag("--raw-primes", constant_args.raw_primes,
                       "diagnostic: search with raw prime-log sums");
    constant->add_option("--search-cap", constant_args.search_cap);
    constant->add_option("--exp-limit", constant_args.exp_limit);

    BoundsArgs bounds_args;
    CLI::App* bounds = app.add_subcommand("bounds", "rank-bound recursion report");
    bounds->add_option("--p", bounds_args.p)->required();
    bounds->add_option("--e", bounds_args.e)->required();
    bounds->add_option("--d-kappa", bounds_args.d_kappa)->required();
    bounds->add_option("--rho", bounds_args.rho)->required();
    bounds->add_option("--tame", bounds_args.tame, "per-step tame counts, e.g. 2,0,1");
    bounds->add_option("--r", bounds_args.r_list, "p^r exponents to report, e.g. 1,2");
    bounds->add_option("--seed-a", bounds_args.seed_a);
    bounds->add_option("--seed-t", bounds_args.seed_t);
    bounds->add_flag("--no-leopoldt", bounds_args.no_leopoldt);

    double log_order = 0, log_disc_v = 0, log_c_v = 0, check_eps = 0;
    CLI::App* check = app.add_subcommand("check", "epsilon-inequality margin");
    check->add_option("--log-order", log_order)->required();
    check->add_option("--log-disc", log_disc_v)->required();
    check->add_option("--log-c", log_c_v)->required();
    check->add_option("--epsilon", check_eps)->required();

    ModlabArgs modlab_args;
    CLI::App* modlab = app.add_subcommand("modlab", "cyclotomic module filtration lab");
    modlab->add_option("--p", modlab_args.p);
    modlab->add_option("--lengths", modlab_args.lengths, "summand lengths, e.g. 1,2");
    modlab->add_option("--mode", modlab_args.mode)
        ->check(CLI::IsMember({"structural", "bruteforce", "both"}));
    modlab->add_option("--r", modlab_args.r, "also verify p^r torsion");
    modlab->add_option("--cap", modlab_args.cap, "enumeration cap");

    std::uint64_t ex_p = 2;
    unsigned ex_max_len = 1, ex_max_s = 1, ex_r_max = 1;
    unsigned long ex_cap = default_enum_cap;
    CLI::App* exhaustive = modlab->add_subcommand("exhaustive", "verify all small modules");
    exhaustive->add_option("--p", ex_p)->required();
    exhaustive->add_option("--max-len", ex_max_len)->required();
    exhaustive->add_option("--max-s", ex_max_s)->required();
    exhaustive->add_option("--r-max", ex_r_max);
    exhaustive->add_option("--cap", ex_cap);

    QuadArgs quad_args;
    CLI::App* quad = app.add_subcommand("quad", "form class group oracle");
    quad->add_option("--disc", quad_args.disc, "fundamental discriminant < 0");
    quad->add_option("--cap", quad_args.cap, "|D| cap");

    QuadScanArgs scan_args;
    CLI::App* scan = quad->add_subcommand("scan", "scan fundamental discriminants");
    scan->add_option("--max", scan_args.max, "largest |D|")->required();
    scan->add_option("--min", scan_args.min, "smallest |D|");
    scan->add_option("--epsilon", scan_args.epsilon);
    scan->add_option("--log-c", scan_args.log_c);
    scan->add_option("--format", scan_args.fmt)->check(CLI::IsMember({"csv", "json"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        scan_args.threads = threads;
        if (*table) return run_table(table_args);
        if (*disc) return run_disc(disc_args);
        if (*constant) return run_constant(constant_args);
        if (*bounds) return run_bounds(bounds_args);
        if (*check) return run_check(log_order, log_disc_v, log_c_v, check_eps);
        if (*modlab) {
            if (*exhaustive) return run_modlab_exhaustive(ex_p, ex_max_len, ex_max_s, ex_r_max, ex_cap);
            return run_modlab(modlab_args);
        }
        if (*quad) {
            if (*scan) return run_quad_scan(scan_args);
            return run_quad(quad_args);
        }
        std::cerr << "error: no subcommand\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::length_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::out_of_range& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
}
