#include "epscert/discriminant.hpp"

#include <cmath>
#include <set>
#include <stdexcept>
#include <string>

#include "epscert/series.hpp"

namespace epscert {

namespace {

void require_prime(std::uint64_t p) {
    if (!is_prime_u64(p)) throw std::invalid_argument("p = " + std::to_string(p) + " is not prime");
}

void check_exact_feasible(std::size_t n) {
    if (n > exact_disc_limit)
        throw std::length_error("exact discriminant limited to n <= " + std::to_string(exact_disc_limit));
}

mpz_class pow_mpz(std::uint64_t base, unsigned long exp) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), base, exp);
    return r;
}

}  // namespace

DiscriminantBound minimal_tame_log_disc(std::uint64_t p, std::size_t n, bool exact,
                                        std::size_t prime_cap) {
    require_prime(p);
    if (exact) check_exact_feasible(n);
    // The first n primes != p sit within the first n+1 primes.
    PrimeTable table = first_primes(n + 1, prime_cap);
    CompensatedSum sum;
    DiscriminantBound out;
    mpz_class product = 1;
    std::size_t taken = 0;
    for (std::size_t j = 1; taken < n; ++j) {
        std::uint64_t q = table.nth(j);
        if (q == p) continue;
        sum.add(std::log(static_cast<double>(q)));
        if (exact) product *= pow_mpz(q, static_cast<unsigned long>(p - 1));
        ++taken;
    }
    out.log_value = static_cast<double>(p - 1) * sum.value();
    if (exact) out.exact_value = product;
    return out;
}

DiscriminantBound minimal_log_disc(std::uint64_t p, std::size_t n, bool exact,
                                   std::size_t prime_cap) {
    require_prime(p);
    if (exact) check_exact_feasible(n);
    PrimeTable table = first_primes(n, prime_cap);
    CompensatedSum sum;
    mpz_class product = 1;
    for (std::size_t j = 1; j <= n; ++j) {
        sum.add(std::log(static_cast<double>(table.nth(j))));
        if (exact) product *= pow_mpz(table.nth(j), static_cast<unsigned long>(p - 1));
    }
    DiscriminantBound out;
    out.log_value = static_cast<double>(p - 1) * sum.value();
    if (exact) out.exact_value = product;
    return out;
}

DiscriminantBound relative_tame_log_disc(std::uint64_t p, const std::vector<RamificationDatum>& data,
                                         bool exact) {
    require_prime(p);
    std::set<std::uint64_t> seen;
    CompensatedSum sum;
    mpz_class product = 1;
    for (const RamificationDatum& d : data) {
        if (d.ell == p)
            throw std::invalid_argument("ell = p = " + std::to_string(p) +
                                        " is wild ramification, excluded from the tame discriminant");
        if (!is_prime_u64(d.ell))
            throw std::invalid_argument("ell = " + std::to_string(d.ell) + " is not prime");
        if (!seen.insert(d.ell).second)
            throw std::invalid_argument("duplicate tame prime ell = " + std::to_string(d.ell));
        if (d.residue_degrees.empty())
            throw std::invalid_argument("residue degree list for ell = " + std::to_string(d.ell) +
                                        " is empty");
        std::uint64_t fsum = 0;
        for (unsigned f : d.residue_degrees) {
            if (f == 0) throw std::invalid_argument("residue degrees must be >= 1");
            fsum += f;
        }
        sum.add(static_cast<double>((p - 1) * fsum) * std::log(static_cast<double>(d.ell)));
        if (exact) product *= pow_mpz(d.ell, static_cast<unsigned long>((p - 1) * fsum));
    }
    DiscriminantBound out;
    out.log_value = sum.value();
    if (exact) out.exact_value = product;
    return out;
}

double tower_log_disc(double log_dk, std::uint64_t p, double log_drel) {
    if (!(log_dk >= 0.0) || !(log_drel >= 0.0))
        throw std::domain_error("log discriminants must be >= 0");
    require_prime(p);
    return static_cast<double>(p) * log_dk + log_drel;
}

}  // namespace epscert
