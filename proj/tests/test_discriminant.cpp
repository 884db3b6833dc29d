#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "epscert/discriminant.hpp"
#include "epscert/series.hpp"

using namespace epscert;

namespace {

void check_rel(double actual, double expected, double rel = 1e-12) {
    double scale = std::max(1e-30, std::abs(expected));
    CHECK(std::abs(actual - expected) <= rel * scale);
}

double mpz_log(const mpz_class& v) {
    signed long exp = 0;
    double d = mpz_get_d_2exp(&exp, v.get_mpz_t());
    return std::log(d) + static_cast<double>(exp) * std::log(2.0);
}

}  // namespace

TEST_CASE("minimal tame discriminant") {
    check_rel(minimal_tame_log_disc(2, 3).log_value, std::log(105.0));
    CHECK(minimal_tame_log_disc(2, 0).log_value == 0.0);
    CHECK(minimal_tame_log_disc(7, 0, true).exact_value.value() == 1);
    check_rel(minimal_tame_log_disc(3, 2).log_value, std::log(100.0));  // (2*5)^2
    CHECK(minimal_tame_log_disc(2, 3, true).exact_value.value() == 105);
    CHECK(minimal_tame_log_disc(3, 2, true).exact_value.value() == 100);
}

TEST_CASE("minimal discriminant includes p") {
    check_rel(minimal_log_disc(2, 3).log_value, std::log(30.0));
    check_rel(minimal_log_disc(3, 2).log_value, std::log(36.0));
    DiscriminantBound b = minimal_log_disc(2, 10, true);
    check_rel(b.log_value, 22.590394530115656220);
    CHECK(b.exact_value.value() == mpz_class("6469693230"));
    check_rel(b.log_value, mpz_log(*b.exact_value), 1e-12);
}

TEST_CASE("minimal discriminant equals (p-1) * S(N)") {
    PrimeTable table = first_primes(2000);
    for (std::uint64_t p : {2ull, 3ull, 5ull, 13ull})
        for (std::size_t n : {1ul, 7ul, 100ul, 2000ul})
            check_rel(minimal_log_disc(p, n).log_value,
                      static_cast<double>(p - 1) * series_row(n, table).S);
}

TEST_CASE("exact value is consistent with the log") {
    for (std::size_t n : {1ul, 10ul, 100ul, 2000ul}) {
        DiscriminantBound b = minimal_log_disc(3, n, true);
        check_rel(b.log_value, mpz_log(*b.exact_value), 1e-9);
    }
    CHECK_THROWS_AS(minimal_log_disc(2, 2001, true), std::length_error);
    CHECK_NOTHROW(minimal_log_disc(2, 2001, false));
}

TEST_CASE("relative tame discriminant") {
    check_rel(relative_tame_log_disc(2, {{5, {1}}}).log_value, std::log(5.0));
    check_rel(relative_tame_log_disc(3, {{7, {1}}, {13, {1}}}).log_value,
              2.0 * (std::log(7.0) + std::log(13.0)));
    CHECK(relative_tame_log_disc(3, {{7, {1}}, {13, {1}}}, true).exact_value.value() == 8281);
    check_rel(relative_tame_log_disc(2, {{3, {1, 2}}}).log_value, std::log(27.0));
    CHECK(relative_tame_log_disc(2, {{3, {1, 2}}}, true).exact_value.value() == 27);
    CHECK(relative_tame_log_disc(2, {}).log_value == 0.0);
}

TEST_CASE("relative tame discriminant rejects bad data") {
    CHECK_THROWS_AS(relative_tame_log_disc(3, {{3, {1}}}), std::invalid_argument);  // ell = p
    CHECK_THROWS_AS(relative_tame_log_disc(2, {{9, {1}}}), std::invalid_argument);  // composite
    CHECK_THROWS_AS(relative_tame_log_disc(2, {{5, {1}}, {5, {1}}}), std::invalid_argument);
    CHECK_THROWS_AS(relative_tame_log_disc(2, {{5, {}}}), std::invalid_argument);
    CHECK_THROWS_AS(relative_tame_log_disc(2, {{5, {0}}}), std::invalid_argument);
    CHECK_THROWS_AS(relative_tame_log_disc(4, {{5, {1}}}), std::invalid_argument);  // p not prime
}

TEST_CASE("relative dominates the minimal tame bound") {
    // with every ell_j at least the j-th admissible prime
    PrimeTable table = first_primes(30);
    for (std::uint64_t p : {2ull, 3ull, 5ull}) {
        std::vector<RamificationDatum> data;
        std::size_t taken = 0;
        for (std::size_t j = 1; taken < 6; ++j) {
            std::uint64_t q = table.nth(j + 2);  // shifted upward, so q >= j-th admissible
            if (q == p) continue;
            data.push_back({q, {1}});
            ++taken;
            double lhs = relative_tame_log_disc(p, data).log_value;
            double rhs = minimal_tame_log_disc(p, taken).log_value;
            CHECK(lhs >= rhs - 1e-12);
        }
    }
}

TEST_CASE("tower discriminant relation") {
    CHECK(tower_log_disc(0.0, 5, 0.0) == 0.0);
    check_rel(tower_log_disc(std::log(5.0), 2, std::log(3.0)), std::log(75.0));
    mpz_class exact = mpz_class(229) * 229 * 229 * 49;
    check_rel(tower_log_disc(std::log(229.0), 3, 2.0 * std::log(7.0)), mpz_log(exact));
    CHECK_THROWS_AS(tower_log_disc(-1.0, 2, 0.0), std::domain_error);
    CHECK_THROWS_AS(tower_log_disc(0.0, 2, -0.5), std::domain_error);
}

TEST_CASE("wild-part branches of the minimal-bound argument") {
    // Any true relative discriminant with n tame primes and wild part w:
    // w >= (p-1) log p forces total >= minimal_log_disc(p, n); with w = 0 a
    // tame prime beyond q_n forces strict excess. Enumerated over small sets.
    PrimeTable table = first_primes(12);
    for (std::uint64_t p : {2ull, 3ull, 5ull}) {
        const double wild = static_cast<double>(p - 1) * std::log(static_cast<double>(p));
        for (std::size_t n = 1; n <= 4; ++n) {
            const double min_log = minimal_log_disc(p, n).log_value;
            // minimal admissible tame set: first n primes != p
            std::vector<RamificationDatum> data;
            for (std::size_t j = 1; data.size() < n; ++j)
                if (table.nth(j) != p) data.push_back({table.nth(j), {1}});
            double tame = relative_tame_log_disc(p, data).log_value;
            CHECK(tame + wild >= min_log - 1e-12);

            // swap the largest entry for a prime beyond q_n: strict excess at w = 0
            data.back() = {table.nth(n + 3), {1}};
            bool has_large = false;
            for (const auto& d : data) has_large = has_large || d.ell > table.nth(n);
            REQUIRE(has_large);
            CHECK(relative_tame_log_disc(p, data).log_value > min_log);
        }
    }
}
