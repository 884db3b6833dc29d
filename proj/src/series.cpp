#include "epscert/series.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace epscert {

double mv_log_term(std::size_t j, std::uint64_t q_j) {
    if (j < 2) throw std::domain_error("mv_log_term requires j >= 2, the j = 1 term is log 2 by definition");
    if (q_j <= 2)
        throw std::domain_error("mv_log_term requires q_j >= 3, got " + std::to_string(q_j) +
                                " (log of non-positive argument)");
    return std::log(static_cast<double>(j) / 2.0) + std::log(std::log(static_cast<double>(q_j) / 2.0));
}

namespace {

SeriesRow finish(std::size_t n, const CompensatedSum& S, const CompensatedSum& s,
                 const CompensatedSum& t) {
    SeriesRow row;
    row.n = n;
    row.S = S.value();
    row.s = s.value();
    row.t = t.value();
    row.E = row.S - row.t;
    row.e = row.s - row.t;
    return row;
}

}  // namespace

SeriesRow series_row(std::size_t n, const PrimeTable& table) {
    if (n == 0) throw std::out_of_range("series index must be >= 1");
    if (n > table.count())
        throw std::out_of_range("series index " + std::to_string(n) + " exceeds table size " +
                                std::to_string(table.count()));
    CompensatedSum S, s, t;
    S.add(std::log(2.0));
    s.add(std::log(2.0));  // q'_1 = 2
    for (std::size_t j = 2; j <= n; ++j) {
        S.add(std::log(static_cast<double>(table.nth(j))));
        s.add(mv_log_term(j, table.nth(j)));
        t.add(std::log(static_cast<double>(j)));
    }
    return finish(n, S, s, t);
}

SeriesScan series_scan(std::size_t n_max, std::size_t cap) {
    if (n_max == 0) throw std::out_of_range("series scan needs n_max >= 1");
    PrimeTable table = first_primes(n_max, cap);
    SeriesScan scan;
    scan.rows.reserve(n_max);
    CompensatedSum S, s, t;
    S.add(std::log(2.0));
    s.add(std::log(2.0));
    scan.rows.push_back(finish(1, S, s, t));
    for (std::size_t j = 2; j <= n_max; ++j) {
        S.add(std::log(static_cast<double>(table.nth(j))));
        s.add(mv_log_term(j, table.nth(j)));
        t.add(std::log(static_cast<double>(j)));
        scan.rows.push_back(finish(j, S, s, t));
    }
    for (const SeriesRow& row : scan.rows) {
        if (row.e < 0) scan.report.e_negative.push_back(row.n);
        if (row.E <= 0) scan.report.E_nonpositive.push_back(row.n);
    }
    return scan;
}

}  // namespace epscert
