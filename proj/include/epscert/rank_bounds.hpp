#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "epscert/tower.hpp"

namespace epscert {

// One degree-p cyclic step: rk_p(Cl_K) <= p * rk_k + (p-1)(N+2) d_k.
long long class_rank_step(std::uint64_t p, long long rk_k, long long n, std::uint64_t d_k);

// Bound on the norm-kernel part: (p-1) * (rk_k + (N+2) d_k).
long long class_star_rank_step(std::uint64_t p, long long rk_k, long long n, std::uint64_t d_k);

// Ambiguous-class bound rk_p(Cl_K^G) <= rk_k + t_k + rk(E_k/E_k^p).
long long ambiguous_rank_bound(long long rk_k, long long t_k, long long unit_rank_bound);

// p-ramification step: rk_p(A_K) <= p * rkA_k + (p-1) N d_k.
long long aram_rank_step(std::uint64_t p, long long rk_a_k, long long n, std::uint64_t d_k);

// Torsion step: rk_p(T_K) <= p * rkT_k + (p-1)(N+1) d_k.
long long torsion_rank_step(std::uint64_t p, long long rk_t_k, long long n, std::uint64_t d_k);

// Exponent of the bound on #(Cl_K x Z/p^r): r p rk_k + r (p-1)(N+2) d_k.
long long pr_order_exponent(std::uint64_t p, unsigned r, long long rk_k, long long n,
                            std::uint64_t d_k);

struct RankLevel {
    unsigned level = 0;
    std::uint64_t d_k = 1;     // degree of the base field of this step
    long long tame_count = 0;  // N for this step
    long long rk_cl = 0;
    long long rk_a = 0;
    long long rk_t = 0;
    std::map<unsigned, long long> pr_exponent;  // r -> base-p log of the order bound
};

struct RankBoundReport {
    TowerSpec spec;
    long long seed_cl = 0;
    long long seed_a = 0;
    long long seed_t = 0;
    bool seed_a_defaulted = false;
    bool seed_t_defaulted = false;
    std::vector<RankLevel> levels;  // empty when e = 0, the seeds are the answer
};

// Folds the three step recursions along the tower. The A/T seeds at the base
// field are inputs; defaults are rho + d_kappa + 1 and rho, both flagged.
RankBoundReport tower_report(const TowerSpec& spec, const std::vector<unsigned>& r_values,
                             std::optional<long long> seed_a = std::nullopt,
                             std::optional<long long> seed_t = std::nullopt);

struct CertificateCheck {
    bool holds = false;
    double margin = 0.0;  // log C + (eps/2) log D - log #group
};

CertificateCheck check_epsilon_certificate(double log_group_order, double log_disc, double log_c,
                                           double epsilon);

// D_F = D_kappa^(p^e) for towers inside the p-Hilbert tower of kappa.
double hilbert_tower_log_disc(double log_d_kappa, std::uint64_t p, unsigned e);

}  // namespace epscert
