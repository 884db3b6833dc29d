#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "epscert/intmat.hpp"

namespace epscert {

inline constexpr unsigned long default_enum_cap = 10'000'000;

// Finite Z_p[zeta]/p-power module given by the p-adic lengths of its cyclic
// summands, n_1 <= ... <= n_s.
struct CyclotomicModule {
    std::uint64_t p = 2;
    std::vector<unsigned> lengths;
};

// Integer-lattice realization: ambient Z^((p-1)s), sigma acting blockwise as
// the companion matrix of the p-th cyclotomic polynomial, relations the HNF
// basis of the direct sum of the p^(n_j) ideal-power blocks.
struct ConcreteModule {
    std::uint64_t p = 2;
    std::vector<unsigned> lengths;
    std::size_t rank = 0;
    ZMat sigma;
    ZMat relations;
    mpz_class order;  // = p^(sum n_j)
};

ConcreteModule build(const CyclotomicModule& cm, unsigned long order_cap = default_enum_cap);

enum class FiltrationMode { structural, bruteforce };

struct FiltrationLevel {
    unsigned h = 0;
    mpz_class order;           // #M*_h
    unsigned p_rank = 0;       // rk_p(M*_h)
    mpz_class quotient_order;  // #(M*_{h+1}/M*_h), 1 at the stabilized level
};

struct Filtration {
    std::vector<FiltrationLevel> levels;  // h = 0 .. stabilization
};

// Kernel filtration of (1-sigma)^h. Structural mode works on lattices and
// scales with the rank; bruteforce enumerates elements and needs
// order <= enum_cap.
Filtration filtration(const ConcreteModule& m, FiltrationMode mode,
                      unsigned long enum_cap = default_enum_cap);

struct OrderDecreaseCheck {
    bool ok = true;
    std::optional<unsigned> violating_h;
    Filtration filt;
};

// #(M*_{h+1}/M*_h) nonincreasing in h and bounded by #M*_1.
OrderDecreaseCheck verify_order_decrease(const ConcreteModule& m);

struct RankBoundCheck {
    bool ok = true;
    unsigned rk_p_m = 0;
    unsigned rk_p_m1 = 0;
};

// rk_p(M*) <= (p-1) rk_p(M*_1), plus the structural value sum min(n_j, p-1).
RankBoundCheck verify_rank_bound(const ConcreteModule& m);

struct PrTorsionCheck {
    bool ok = true;
    mpz_class torsion_order;     // #M*[p^r]
    mpz_class filtration_order;  // #M*_{r(p-1)}
    mpz_class bound;             // (#M*_1)^(r(p-1))
};

// #M*[p^r] = #M*_{r(p-1)} <= (#M*_1)^(r(p-1)).
PrTorsionCheck verify_pr_torsion(const ConcreteModule& m, unsigned r);

struct InjectivityCheck {
    bool ok = true;
    std::string detail;  // first violation, empty when ok
};

// Element-wise check that (1-sigma) drops filtration height by exactly one,
// the mechanism behind the order decrease. Brute force; needs
// order <= enum_cap.
InjectivityCheck verify_quotient_injectivity(const ConcreteModule& m,
                                             unsigned long enum_cap = default_enum_cap);

struct ExhaustiveSummary {
    unsigned long modules = 0;
    unsigned long checks = 0;
    std::vector<std::string> violations;
};

// Runs every verifier over all length multisets with n_j <= max_len and
// 1 <= s <= max_s, r = 1..r_max, comparing structural and brute filtrations.
ExhaustiveSummary exhaustive_check(std::uint64_t p, unsigned max_len, unsigned max_s,
                                   unsigned r_max, unsigned long enum_cap = default_enum_cap);

}  // namespace epscert
