#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "epscert/format.hpp"
#include "epscert/series.hpp"
#include "reference_series.hpp"

using namespace epscert;

namespace {

void check_rel(double actual, double expected, double rel = 1e-12) {
    double scale = std::max(1e-30, std::abs(expected));
    CHECK(std::abs(actual - expected) <= rel * scale);
}

}  // namespace

TEST_CASE("mv lower-bound term") {
    // log(j/2) + log(log(q_j/2))
    check_rel(mv_log_term(2, 3), -0.902720455717879982, 1e-15);
    check_rel(std::log(2.0) + mv_log_term(2, 3), -0.20957327515793467, 1e-14);
    check_rel(mv_log_term(3, 5), 0.3180435363174092864, 1e-15);  // s(3) - s(2)
    check_rel(mv_log_term(2, 4), -0.36651292058166432701, 1e-15);
    CHECK_THROWS_AS(mv_log_term(1, 3), std::domain_error);
    CHECK_THROWS_AS(mv_log_term(2, 2), std::domain_error);
    CHECK_THROWS_AS(mv_log_term(5, 1), std::domain_error);
}

TEST_CASE("series rows reproduce the 19-digit reference table") {
    PrimeTable table = first_primes(10001);
    for (std::size_t i = 0; i < reference_series_count; ++i) {
        const ReferenceSeriesRow& ref = reference_series[i];
        SeriesRow row = series_row(ref.n, table);
        CAPTURE(ref.n);
        check_rel(row.E, parse_double(ref.E));
        check_rel(row.e, parse_double(ref.e));
        check_rel(row.S, parse_double(ref.S));
        check_rel(row.s, parse_double(ref.s));
        if (ref.n == 1)
            CHECK(row.t == 0.0);
        else
            check_rel(row.t, parse_double(ref.t));
    }
}

TEST_CASE("row 1 is the degenerate case") {
    PrimeTable table = first_primes(1);
    SeriesRow row = series_row(1, table);
    CHECK(row.S == std::log(2.0));
    CHECK(row.s == std::log(2.0));
    CHECK(row.t == 0.0);
    CHECK(row.E == row.S);
    CHECK(row.e == row.s);
}

TEST_CASE("difference identities hold exactly in the arithmetic model") {
    SeriesScan scan = series_scan(500);
    for (const SeriesRow& row : scan.rows) {
        CHECK(row.E == row.S - row.t);
        CHECK(row.e == row.s - row.t);
    }
}

TEST_CASE("monotone recurrence between consecutive rows") {
    PrimeTable table = first_primes(300);
    SeriesScan scan = series_scan(300);
    for (std::size_t n = 1; n < 300; ++n) {
        const SeriesRow& a = scan.rows[n - 1];
        const SeriesRow& b = scan.rows[n];
        check_rel(b.S - a.S, std::log(static_cast<double>(table.nth(n + 1))), 1e-11);
        check_rel(b.s - a.s, mv_log_term(n + 1, table.nth(n + 1)), 1e-9);
        check_rel(b.t - a.t, std::log(static_cast<double>(n + 1)), 1e-11);
        CHECK(b.S > a.S);  // S strictly increasing
    }
}

TEST_CASE("scan row recomputation matches the incremental path") {
    PrimeTable table = first_primes(2000);
    SeriesScan scan = series_scan(2000);
    for (std::size_t n : {1ul, 2ul, 17ul, 100ul, 999ul, 2000ul}) {
        SeriesRow direct = series_row(n, table);
        const SeriesRow& scanned = scan.rows[n - 1];
        check_rel(direct.S, scanned.S, 1e-14);
        check_rel(direct.s, scanned.s, 1e-13);
        CHECK(direct.n == scanned.n);
    }
}

TEST_CASE("reversed-order summation agrees to 1e-12 relative") {
    const std::size_t n = 5000;
    PrimeTable table = first_primes(n);
    SeriesRow row = series_row(n, table);
    double S = 0, s = 0, t = 0;
    for (std::size_t j = n; j >= 2; --j) {
        S += std::log(static_cast<double>(table.nth(j)));
        s += mv_log_term(j, table.nth(j));
        t += std::log(static_cast<double>(j));
    }
    S += std::log(2.0);
    s += std::log(2.0);
    check_rel(row.S, S, 1e-12);
    check_rel(row.s, s, 1e-12);
    check_rel(row.t, t, 1e-12);
}

TEST_CASE("t(n) equals lgamma(n+1)") {
    PrimeTable table = first_primes(10000);
    for (std::size_t n : {2ul, 10ul, 100ul, 1234ul, 10000ul})
        check_rel(series_row(n, table).t, std::lgamma(static_cast<double>(n) + 1.0), 1e-12);
}

TEST_CASE("sign report matches the tabulated pattern") {
    SeriesScan scan = series_scan(24);
    CHECK(scan.report.E_nonpositive.empty());
    std::vector<std::size_t> expected;
    for (std::size_t n = 2; n <= 14; ++n) expected.push_back(n);
    CHECK(scan.report.e_negative == expected);
    check_rel(scan.rows[14].e, 0.2886939587134154542, 1e-12);  // first positive e

    SeriesScan one = series_scan(1);
    CHECK(one.report.e_negative.empty());
    CHECK(one.report.E_nonpositive.empty());
}

TEST_CASE("index errors") {
    PrimeTable table = first_primes(10);
    CHECK_THROWS_AS(series_row(0, table), std::out_of_range);
    CHECK_THROWS_AS(series_row(11, table), std::out_of_range);
    CHECK_THROWS_AS(series_scan(0), std::out_of_range);
}
