#include "epscert/modlab.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "epscert/primes.hpp"

namespace epscert {

namespace {

mpz_class mpz_pow(std::uint64_t base, unsigned long exp) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), base, exp);
    return r;
}

void validate(const CyclotomicModule& cm) {
    if (!is_prime_u64(cm.p)) throw std::invalid_argument("p = " + std::to_string(cm.p) + " is not prime");
    if (cm.lengths.empty()) throw std::invalid_argument("module needs at least one summand");
    for (unsigned n : cm.lengths)
        if (n == 0) throw std::invalid_argument("summand lengths must be >= 1");
    if (!std::is_sorted(cm.lengths.begin(), cm.lengths.end()))
        throw std::invalid_argument("summand lengths must be sorted ascending");
}

// Multiplication by zeta on the basis 1, zeta, ..., zeta^(p-2): companion
// matrix of the p-th cyclotomic polynomial.
ZMat companion(std::uint64_t p) {
    const std::size_t w = static_cast<std::size_t>(p - 1);
    ZMat c(w, w);
    for (std::size_t i = 0; i + 1 < w; ++i) c(i + 1, i) = 1;
    for (std::size_t i = 0; i < w; ++i) c(i, w - 1) = -1;
    return c;
}

// Exact int64 view of small lattice data for the enumeration loops.
struct Int64Lattice {
    std::size_t n = 0;
    std::vector<long long> hnf;    // row-major
    std::vector<long long> diag;
    std::vector<long long> one_minus_sigma;

    static long long to_ll(const mpz_class& v) {
        if (!v.fits_slong_p()) throw std::overflow_error("lattice entry exceeds 64 bits");
        return v.get_si();
    }

    Int64Lattice(const ZMat& h, const ZMat& sigma) : n(h.rows()) {
        hnf.resize(n * n);
        diag.resize(n);
        one_minus_sigma.resize(n * n);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                hnf[i * n + j] = to_ll(h(i, j));
                one_minus_sigma[i * n + j] = to_ll((i == j ? 1 : 0) - sigma(i, j));
            }
            diag[i] = hnf[i * n + i];
        }
    }

    static long long check_range(__int128 v) {
        if (v > static_cast<__int128>(INT64_MAX) / 4 || v < -(static_cast<__int128>(INT64_MAX) / 4))
            throw std::overflow_error("enumeration arithmetic exceeds the safe 64-bit range");
        return static_cast<long long>(v);
    }

    // canonical representative mod the lattice, in place
    void reduce(std::vector<long long>& x) const {
        for (std::size_t i = 0; i < n; ++i) {
            long long d = diag[i];
            long long q = x[i] >= 0 ? x[i] / d : -((-x[i] + d - 1) / d);
            if (q == 0) continue;
            for (std::size_t k = i; k < n; ++k)
                x[k] = check_range(static_cast<__int128>(x[k]) -
                                   static_cast<__int128>(q) * hnf[k * n + i]);
        }
    }

    bool is_origin(const std::vector<long long>& x) const {
        for (long long v : x)
            if (v != 0) return false;
        return true;
    }

    void apply_one_minus_sigma(const std::vector<long long>& x, std::vector<long long>& out) const {
        for (std::size_t i = 0; i < n; ++i) {
            __int128 acc = 0;
            for (std::size_t k = 0; k < n; ++k)
                acc += static_cast<__int128>(one_minus_sigma[i * n + k]) * x[k];
            out[i] = check_range(acc);
        }
    }

    // filtration height: least h with (1-sigma)^h x in the lattice
    unsigned height(std::vector<long long> x, unsigned h_max) const {
        std::vector<long long> y(n);
        reduce(x);
        unsigned h = 0;
        while (!is_origin(x)) {
            apply_one_minus_sigma(x, y);
            reduce(y);
            x.swap(y);
            if (++h > h_max) throw std::logic_error("filtration failed to stabilize");
        }
        return h;
    }

    bool p_torsion(const std::vector<long long>& x, std::uint64_t p) const {
        std::vector<long long> y(n);
        for (std::size_t i = 0; i < n; ++i)
            y[i] = check_range(static_cast<__int128>(x[i]) * static_cast<long long>(p));
        reduce(y);
        return is_origin(y);
    }

    // mixed-radix enumeration of canonical coset representatives
    bool next(std::vector<long long>& x) const {
        for (std::size_t i = 0; i < n; ++i) {
            if (++x[i] < diag[i]) return true;
            x[i] = 0;
        }
        return false;
    }
};

unsigned max_length(const ConcreteModule& m) {
    return *std::max_element(m.lengths.begin(), m.lengths.end());
}

void require_enumerable(const ConcreteModule& m, unsigned long enum_cap) {
    if (m.order > mpz_class(enum_cap))
        throw std::length_error("module order " + m.order.get_str() +
                                " exceeds enumeration cap " + std::to_string(enum_cap));
}

}  // namespace

ConcreteModule build(const CyclotomicModule& cm, unsigned long order_cap) {
    validate(cm);
    const std::size_t w = static_cast<std::size_t>(cm.p - 1);
    const std::size_t s = cm.lengths.size();

    unsigned long total_len = 0;
    for (unsigned n : cm.lengths) total_len += n;
    mpz_class order = mpz_pow(cm.p, total_len);
    if (order > mpz_class(order_cap))
        throw std::length_error("module order p^" + std::to_string(total_len) + " exceeds cap " +
                                std::to_string(order_cap));

    ConcreteModule m;
    m.p = cm.p;
    m.lengths = cm.lengths;
    m.rank = w * s;
    ZMat block_sigma = companion(cm.p);

    m.sigma = ZMat(m.rank, m.rank);
    m.relations = ZMat(m.rank, m.rank);
    for (std::size_t b = 0; b < s; ++b) {
        // ideal power: start from the ring lattice and multiply by
        // (p, zeta - 1) n_b times, re-normalizing to HNF each step
        ZMat basis = ZMat::identity(w);
        ZMat shifted = block_sigma - ZMat::identity(w);
        for (unsigned k = 0; k < cm.lengths[b]; ++k) {
            ZMat scaled(w, w);
            for (std::size_t i = 0; i < w; ++i)
                for (std::size_t j = 0; j < w; ++j) scaled(i, j) = mpz_class(cm.p) * basis(i, j);
            ZMat gens = scaled.hcat(shifted * basis);
            basis = hnf_columns(gens);
            if (basis.cols() != w) throw std::logic_error("ideal power lost rank");
        }
        for (std::size_t i = 0; i < w; ++i)
            for (std::size_t j = 0; j < w; ++j) {
                m.sigma(b * w + i, b * w + j) = block_sigma(i, j);
                m.relations(b * w + i, b * w + j) = basis(i, j);
            }
    }
    m.order = lattice_index(m.relations);
    if (m.order != order) throw std::logic_error("block lattice index != p^(sum n_j)");
    return m;
}

Filtration filtration(const ConcreteModule& m, FiltrationMode mode, unsigned long enum_cap) {
    const unsigned h_cap = max_length(m) + 2;
    Filtration filt;

    if (mode == FiltrationMode::structural) {
        ZMat one_minus_sigma = ZMat::identity(m.rank) - m.sigma;
        std::vector<mpz_class> orders{1};
        std::vector<unsigned> ranks{0};
        ZMat lambda = m.relations;
        while (orders.back() != m.order) {
            lambda = preimage_lattice(one_minus_sigma, lambda);
            mpz_class idx = lattice_index(lambda);
            mpz_class order = m.order / idx;
            if (order * idx != m.order) throw std::logic_error("filtration order not integral");
            unsigned rank = 0;
            for (const mpz_class& d : quotient_invariants(lambda, m.relations))
                if (mpz_divisible_ui_p(d.get_mpz_t(), static_cast<unsigned long>(m.p))) ++rank;
            orders.push_back(order);
            ranks.push_back(rank);
            if (orders.size() > h_cap + 1) throw std::logic_error("filtration failed to stabilize");
        }
        for (unsigned h = 0; h < orders.size(); ++h) {
            FiltrationLevel lev;
            lev.h = h;
            lev.order = orders[h];
            lev.p_rank = ranks[h];
            lev.quotient_order = (h + 1 < orders.size()) ? mpz_class(orders[h + 1] / orders[h])
                                                         : mpz_class(1);
            filt.levels.push_back(std::move(lev));
        }
        return filt;
    }

    require_enumerable(m, enum_cap);
    Int64Lattice lat(m.relations, m.sigma);
    const unsigned long order = m.order.get_ui();
    std::vector<unsigned long> count_by_height(h_cap + 1, 0);
    std::vector<unsigned long> torsion_by_height(h_cap + 1, 0);
    std::vector<long long> x(m.rank, 0);
    unsigned long seen = 0;
    unsigned h_stab = 0;
    do {
        unsigned h = lat.height(x, h_cap);
        h_stab = std::max(h_stab, h);
        ++count_by_height[h];
        if (lat.p_torsion(x, m.p)) ++torsion_by_height[h];
        ++seen;
    } while (lat.next(x));
    if (seen != order) throw std::logic_error("enumeration count mismatch");

    unsigned long cum = 0, cum_torsion = 0;
    std::vector<unsigned long> orders, torsions;
    for (unsigned h = 0; h <= h_stab; ++h) {
        cum += count_by_height[h];
        cum_torsion += torsion_by_height[h];
        orders.push_back(cum);
        torsions.push_back(cum_torsion);
    }
    for (unsigned h = 0; h <= h_stab; ++h) {
        FiltrationLevel lev;
        lev.h = h;
        lev.order = orders[h];
        // #M*_h[p] = p^rank
        unsigned rank = 0;
        unsigned long pk = 1;
        while (pk < torsions[h]) {
            pk *= static_cast<unsigned long>(m.p);
            ++rank;
        }
        if (pk != torsions[h]) throw std::logic_error("p-torsion count is not a power of p");
        lev.p_rank = rank;
        lev.quotient_order = (h < h_stab) ? mpz_class(orders[h + 1] / orders[h]) : mpz_class(1);
        filt.levels.push_back(std::move(lev));
    }
    return filt;
}

OrderDecreaseCheck verify_order_decrease(const ConcreteModule& m) {
    OrderDecreaseCheck check;
    check.filt = filtration(m, FiltrationMode::structural);
    const auto& lv = check.filt.levels;
    mpz_class m1_order = lv.size() > 1 ? lv[1].order : mpz_class(1);
    for (std::size_t h = 0; h < lv.size(); ++h) {
        bool bad = lv[h].quotient_order > m1_order;
        if (h + 1 < lv.size() && lv[h + 1].quotient_order > lv[h].quotient_order) bad = true;
        if (bad) {
            check.ok = false;
            check.violating_h = lv[h].h;
            return check;
        }
    }
    return check;
}

RankBoundCheck verify_rank_bound(const ConcreteModule& m) {
    RankBoundCheck check;
    for (const mpz_class& d : quotient_invariants(ZMat::identity(m.rank), m.relations))
        if (mpz_divisible_ui_p(d.get_mpz_t(), static_cast<unsigned long>(m.p))) ++check.rk_p_m;
    Filtration filt = filtration(m, FiltrationMode::structural);
    check.rk_p_m1 = filt.levels.size() > 1 ? filt.levels[1].p_rank : 0;
    unsigned structural = 0;
    for (unsigned n : m.lengths) structural += std::min<unsigned>(n, static_cast<unsigned>(m.p - 1));
    check.ok = check.rk_p_m <= (m.p - 1) * check.rk_p_m1 && check.rk_p_m == structural;
    return check;
}

PrTorsionCheck verify_pr_torsion(const ConcreteModule& m, unsigned r) {
    if (r == 0) throw std::invalid_argument("r must be >= 1");
    PrTorsionCheck check;
    ZMat pr_scaled(m.rank, m.rank);
    mpz_class pr = mpz_pow(m.p, r);
    for (std::size_t i = 0; i < m.rank; ++i) pr_scaled(i, i) = pr;
    ZMat lambda = preimage_lattice(pr_scaled, m.relations);
    check.torsion_order = m.order / lattice_index(lambda);

    Filtration filt = filtration(m, FiltrationMode::structural);
    const unsigned long target_h = static_cast<unsigned long>(r) * (m.p - 1);
    const auto& lv = filt.levels;
    check.filtration_order = target_h < lv.size() ? lv[target_h].order : lv.back().order;
    mpz_class m1_order = lv.size() > 1 ? lv[1].order : mpz_class(1);
    mpz_class bound;
    mpz_pow_ui(bound.get_mpz_t(), m1_order.get_mpz_t(), target_h);
    check.bound = bound;
    check.ok = check.torsion_order == check.filtration_order && check.torsion_order <= bound;
    return check;
}

InjectivityCheck verify_quotient_injectivity(const ConcreteModule& m, unsigned long enum_cap) {
    require_enumerable(m, enum_cap);
    InjectivityCheck check;
    const unsigned h_cap = max_length(m) + 2;
    Int64Lattice lat(m.relations, m.sigma);
    std::vector<long long> x(m.rank, 0), y(m.rank);
    do {
        unsigned hx = lat.height(x, h_cap);
        if (hx == 0) continue;
        lat.apply_one_minus_sigma(x, y);
        unsigned hy = lat.height(y, h_cap);
        if (hy != hx - 1) {
            check.ok = false;
            check.detail = "element of height " + std::to_string(hx) + " maps to height " +
                           std::to_string(hy);
            return check;
        }
    } while (lat.next(x));
    return check;
}

ExhaustiveSummary exhaustive_check(std::uint64_t p, unsigned max_len, unsigned max_s,
                                   unsigned r_max, unsigned long enum_cap) {
    if (max_len == 0 || max_s == 0 || r_max == 0)
        throw std::invalid_argument("exhaustive_check needs max_len, max_s, r_max >= 1");
    ExhaustiveSummary summary;
    std::vector<unsigned> lengths;

    auto run_module = [&](const std::vector<unsigned>& ls) {
        CyclotomicModule cm{p, ls};
        auto tag = [&]() {
            std::string t = "p=" + std::to_string(p) + " lengths=";
            for (unsigned n : ls) t += std::to_string(n) + ",";
            return t;
        };
        ConcreteModule m = build(cm, enum_cap);
        ++summary.modules;

        Filtration structural = filtration(m, FiltrationMode::structural);
        Filtration brute = filtration(m, FiltrationMode::bruteforce, enum_cap);
        ++summary.checks;
        bool agree = structural.levels.size() == brute.levels.size();
        for (std::size_t i = 0; agree && i < structural.levels.size(); ++i)
            agree = structural.levels[i].order == brute.levels[i].order &&
                    structural.levels[i].p_rank == brute.levels[i].p_rank &&
                    structural.levels[i].quotient_order == brute.levels[i].quotient_order;
        if (!agree) summary.violations.push_back(tag() + " structural/bruteforce disagree");

        ++summary.checks;
        if (auto c = verify_order_decrease(m); !c.ok)
            summary.violations.push_back(tag() + " order decrease fails at h=" +
                                         std::to_string(*c.violating_h));
        ++summary.checks;
        if (auto c = verify_rank_bound(m); !c.ok)
            summary.violations.push_back(tag() + " rank bound fails");
        for (unsigned r = 1; r <= r_max; ++r) {
            ++summary.checks;
            if (auto c = verify_pr_torsion(m, r); !c.ok)
                summary.violations.push_back(tag() + " p^r torsion fails at r=" + std::to_string(r));
        }
        ++summary.checks;
        if (auto c = verify_quotient_injectivity(m, enum_cap); !c.ok)
            summary.violations.push_back(tag() + " quotient injectivity fails: " + c.detail);
    };

    // all nondecreasing length tuples of size 1..max_s
    auto recurse = [&](auto&& self, unsigned min_len) -> void {
        if (!lengths.empty()) run_module(lengths);
        if (lengths.size() == max_s) return;
        for (unsigned n = min_len; n <= max_len; ++n) {
            lengths.push_back(n);
            self(self, n);
            lengths.pop_back();
        }
    };
    recurse(recurse, 1);
    return summary;
}

}  // namespace epscert
