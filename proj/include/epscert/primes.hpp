#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace epscert {

inline constexpr std::size_t default_prime_cap = 10'000'000;

// Ascending table of the first count() primes, q_1 = 2, q_2 = 3, ...
class PrimeTable {
  public:
    PrimeTable() = default;
    explicit PrimeTable(std::vector<std::uint64_t> primes) : primes_(std::move(primes)) {}

    std::size_t count() const { return primes_.size(); }
    // 1-indexed access: nth(1) == 2.
    std::uint64_t nth(std::size_t j) const;
    const std::vector<std::uint64_t>& primes() const { return primes_; }

  private:
    std::vector<std::uint64_t> primes_;
};

// First n primes by segmented sieve of Eratosthenes.
// Throws std::length_error when n exceeds cap.
PrimeTable first_primes(std::size_t n, std::size_t cap = default_prime_cap);

// Deterministic Miller-Rabin, valid for the full 64-bit range.
bool is_prime_u64(std::uint64_t n);

}  // namespace epscert
