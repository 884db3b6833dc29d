#include "epscert/rank_bounds.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "epscert/primes.hpp"

namespace epscert {

namespace {

void check_step_args(std::uint64_t p, long long rk, long long n, std::uint64_t d_k) {
    if (!is_prime_u64(p)) throw std::invalid_argument("p = " + std::to_string(p) + " is not prime");
    if (rk < 0) throw std::invalid_argument("rank bound must be >= 0");
    if (n < 0) throw std::invalid_argument("tame count must be >= 0");
    if (d_k == 0) throw std::invalid_argument("d_k must be >= 1");
}

long long checked_mul(long long a, long long b) {
    long long r = 0;
    if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("rank bound overflows 64 bits");
    return r;
}

long long checked_add(long long a, long long b) {
    long long r = 0;
    if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("rank bound overflows 64 bits");
    return r;
}

}  // namespace

long long class_rank_step(std::uint64_t p, long long rk_k, long long n, std::uint64_t d_k) {
    check_step_args(p, rk_k, n, d_k);
    auto pl = static_cast<long long>(p), dl = static_cast<long long>(d_k);
    return checked_add(checked_mul(pl, rk_k), checked_mul(pl - 1, checked_mul(checked_add(n, 2), dl)));
}

long long class_star_rank_step(std::uint64_t p, long long rk_k, long long n, std::uint64_t d_k) {
    check_step_args(p, rk_k, n, d_k);
    auto pl = static_cast<long long>(p), dl = static_cast<long long>(d_k);
    return checked_mul(pl - 1, checked_add(rk_k, checked_mul(checked_add(n, 2), dl)));
}

long long ambiguous_rank_bound(long long rk_k, long long t_k, long long unit_rank_bound) {
    if (rk_k < 0 || t_k < 0 || unit_rank_bound < 0)
        throw std::invalid_argument("ambiguous_rank_bound arguments must be >= 0");
    return checked_add(checked_add(rk_k, t_k), unit_rank_bound);
}

long long aram_rank_step(std::uint64_t p, long long rk_a_k, long long n, std::uint64_t d_k) {
    check_step_args(p, rk_a_k, n, d_k);
    auto pl = static_cast<long long>(p), dl = static_cast<long long>(d_k);
    return checked_add(checked_mul(pl, rk_a_k), checked_mul(pl - 1, checked_mul(n, dl)));
}

long long torsion_rank_step(std::uint64_t p, long long rk_t_k, long long n, std::uint64_t d_k) {
    check_step_args(p, rk_t_k, n, d_k);
    auto pl = static_cast<long long>(p), dl = static_cast<long long>(d_k);
    return checked_add(checked_mul(pl, rk_t_k), checked_mul(pl - 1, checked_mul(checked_add(n, 1), dl)));
}

long long pr_order_exponent(std::uint64_t p, unsigned r, long long rk_k, long long n,
                            std::uint64_t d_k) {
    if (r == 0) throw std::invalid_argument("r must be >= 1");
    return checked_mul(static_cast<long long>(r), class_rank_step(p, rk_k, n, d_k));
}

RankBoundReport tower_report(const TowerSpec& spec, const std::vector<unsigned>& r_values,
                             std::optional<long long> seed_a, std::optional<long long> seed_t) {
    validate(spec);
    RankBoundReport report;
    report.spec = spec;
    report.seed_cl = spec.rho;
    report.seed_a_defaulted = !seed_a.has_value();
    report.seed_t_defaulted = !seed_t.has_value();
    report.seed_a = seed_a.value_or(spec.rho + static_cast<long long>(spec.d_kappa) + 1);
    report.seed_t = seed_t.value_or(spec.rho);
    if (report.seed_a < 0 || report.seed_t < 0)
        throw std::invalid_argument("A/T seeds must be >= 0");

    long long cl = report.seed_cl, a = report.seed_a, t = report.seed_t;
    for (unsigned i = 1; i <= spec.e; ++i) {
        RankLevel lev;
        lev.level = i;
        lev.d_k = base_degree(spec, i);
        lev.tame_count = spec.steps[i - 1].tame_count;
        for (unsigned r : r_values)
            lev.pr_exponent[r] = pr_order_exponent(spec.p, r, cl, lev.tame_count, lev.d_k);
        cl = class_rank_step(spec.p, cl, lev.tame_count, lev.d_k);
        a = aram_rank_step(spec.p, a, lev.tame_count, lev.d_k);
        t = torsion_rank_step(spec.p, t, lev.tame_count, lev.d_k);
        lev.rk_cl = cl;
        lev.rk_a = a;
        lev.rk_t = t;
        report.levels.push_back(std::move(lev));
    }
    return report;
}

CertificateCheck check_epsilon_certificate(double log_group_order, double log_disc, double log_c,
                                           double epsilon) {
    if (!(log_disc >= 0.0)) throw std::domain_error("log discriminant must be >= 0");
    if (!(epsilon > 0.0)) throw std::domain_error("epsilon must be > 0");
    CertificateCheck out;
    out.margin = log_c + epsilon / 2.0 * log_disc - log_group_order;
    out.holds = out.margin >= 0.0;
    return out;
}

double hilbert_tower_log_disc(double log_d_kappa, std::uint64_t p, unsigned e) {
    if (!(log_d_kappa >= 0.0)) throw std::domain_error("log discriminant must be >= 0");
    if (!is_prime_u64(p)) throw std::invalid_argument("p = " + std::to_string(p) + " is not prime");
    if (log_d_kappa == 0.0) return 0.0;
    return std::pow(static_cast<double>(p), static_cast<double>(e)) * log_d_kappa;
}

}  // namespace epscert
