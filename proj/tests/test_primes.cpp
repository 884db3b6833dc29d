#include <doctest.h>

#include <stdexcept>
#include <vector>

#include "epscert/primes.hpp"

using namespace epscert;

namespace {

// Independent oracle: first n primes by pure trial division.
std::vector<std::uint64_t> trial_division_primes(std::size_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t v = 2; out.size() < n; ++v) {
        bool prime = true;
        for (std::uint64_t d = 2; d * d <= v; ++d)
            if (v % d == 0) {
                prime = false;
                break;
            }
        if (prime) out.push_back(v);
    }
    return out;
}

}  // namespace

TEST_CASE("first_primes basics") {
    CHECK(first_primes(0).count() == 0);
    PrimeTable t = first_primes(5);
    CHECK(t.primes() == std::vector<std::uint64_t>{2, 3, 5, 7, 11});
    CHECK(t.nth(1) == 2);
    CHECK(t.nth(5) == 11);
    CHECK_THROWS_AS(t.nth(0), std::out_of_range);
    CHECK_THROWS_AS(t.nth(6), std::out_of_range);
}

TEST_CASE("sieve agrees with trial division through the 10001st prime") {
    const auto oracle = trial_division_primes(10001);
    PrimeTable t = first_primes(10001);
    REQUIRE(t.count() == 10001);
    CHECK(t.primes() == oracle);
    CHECK(t.nth(10001) == 104743);
}

TEST_CASE("every table entry passes deterministic primality") {
    PrimeTable t = first_primes(50000);
    for (std::uint64_t p : t.primes()) REQUIRE(is_prime_u64(p));
    CHECK(t.nth(50000) == 611953);
}

TEST_CASE("prime cap is a hard error") {
    CHECK_THROWS_AS(first_primes(11, 10), std::length_error);
    CHECK_NOTHROW(first_primes(10, 10));
}

TEST_CASE("miller-rabin spot checks") {
    CHECK(is_prime_u64(2));
    CHECK(is_prime_u64(3));
    CHECK_FALSE(is_prime_u64(0));
    CHECK_FALSE(is_prime_u64(1));
    CHECK_FALSE(is_prime_u64(561));        // Carmichael
    CHECK_FALSE(is_prime_u64(3215031751)); // strong pseudoprime to 2,3,5,7
    CHECK(is_prime_u64(104743));
    CHECK(is_prime_u64(1299709));
    CHECK(is_prime_u64(18446744073709551557ull));  // largest 64-bit prime
    CHECK_FALSE(is_prime_u64(18446744073709551615ull));
}
