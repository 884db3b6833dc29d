#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <vector>

#include "epscert/primes.hpp"

namespace epscert {

// Discriminant bounds are carried in natural-log space; the exact integer is
// materialized on request while it stays reasonably sized.
inline constexpr std::size_t exact_disc_limit = 2000;

struct DiscriminantBound {
    double log_value = 0.0;
    std::optional<mpz_class> exact_value;
};

// One tame prime ell != p with the residue degrees of the ramified ideals
// above it (one entry per ideal).
struct RamificationDatum {
    std::uint64_t ell = 0;
    std::vector<unsigned> residue_degrees;
};

// (p-1) * sum of logs of the first n primes excluding p.
DiscriminantBound minimal_tame_log_disc(std::uint64_t p, std::size_t n, bool exact = false,
                                        std::size_t prime_cap = default_prime_cap);

// (p-1) * sum of logs of the first n primes, p included.
DiscriminantBound minimal_log_disc(std::uint64_t p, std::size_t n, bool exact = false,
                                   std::size_t prime_cap = default_prime_cap);

// sum over the data of (p-1) * (sum of residue degrees) * log ell.
DiscriminantBound relative_tame_log_disc(std::uint64_t p, const std::vector<RamificationDatum>& data,
                                         bool exact = false);

// log of D_K = D_k^p * D_{K/k}.
double tower_log_disc(double log_dk, std::uint64_t p, double log_drel);

}  // namespace epscert
