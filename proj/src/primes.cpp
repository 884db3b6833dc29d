#include "epscert/primes.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace epscert {

std::uint64_t PrimeTable::nth(std::size_t j) const {
    if (j == 0 || j > primes_.size())
        throw std::out_of_range("prime index " + std::to_string(j) + " out of range 1.." +
                                std::to_string(primes_.size()));
    return primes_[j - 1];
}

namespace {

// Upper bound for the nth prime (Rosser-style n(log n + log log n) with slack).
std::uint64_t nth_prime_bound(std::size_t n) {
    if (n < 6) return 13;
    double nd = static_cast<double>(n);
    double b = nd * (std::log(nd) + std::log(std::log(nd)));
    return static_cast<std::uint64_t>(b) + 16;
}

std::vector<std::uint32_t> small_primes_upto(std::uint32_t limit) {
    std::vector<bool> composite(limit + 1, false);
    std::vector<std::uint32_t> primes;
    for (std::uint32_t i = 2; i <= limit; ++i) {
        if (composite[i]) continue;
        primes.push_back(i);
        for (std::uint64_t j = static_cast<std::uint64_t>(i) * i; j <= limit; j += i)
            composite[j] = true;
    }
    return primes;
}

}  // namespace

PrimeTable first_primes(std::size_t n, std::size_t cap) {
    if (n > cap)
        throw std::length_error("prime count " + std::to_string(n) + " exceeds cap " +
                                std::to_string(cap));
    std::vector<std::uint64_t> out;
    if (n == 0) return PrimeTable(out);
    out.reserve(n);

    const std::uint64_t bound = nth_prime_bound(n);
    const auto root = static_cast<std::uint32_t>(std::sqrt(static_cast<double>(bound))) + 2;
    const auto base = small_primes_upto(root);

    constexpr std::uint64_t segment = 1u << 20;
    std::vector<bool> composite;
    for (std::uint64_t lo = 2; lo <= bound && out.size() < n; lo += segment) {
        const std::uint64_t hi = std::min(bound + 1, lo + segment);
        composite.assign(hi - lo, false);
        for (std::uint32_t p : base) {
            std::uint64_t p2 = static_cast<std::uint64_t>(p) * p;
            if (p2 >= hi) break;
            std::uint64_t start = std::max(p2, ((lo + p - 1) / p) * p);
            for (std::uint64_t j = start; j < hi; j += p) composite[j - lo] = true;
        }
        for (std::uint64_t v = lo; v < hi && out.size() < n; ++v)
            if (!composite[v - lo]) out.push_back(v);
    }
    if (out.size() < n) throw std::runtime_error("sieve bound underestimated");  // unreachable
    return PrimeTable(std::move(out));
}

namespace {

std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod_u64(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod_u64(r, a, m);
        a = mulmod_u64(a, a, m);
        e >>= 1;
    }
    return r;
}

}  // namespace

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // This base set is deterministic for all n < 3.3 * 10^24.
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        std::uint64_t x = powmod_u64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod_u64(x, x, n);
            if (x == n - 1) {
                witness = false;
                break;
            }
        }
        if (witness) return false;
    }
    return true;
}

}  // namespace epscert
