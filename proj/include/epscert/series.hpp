#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "epscert/primes.hpp"

namespace epscert {

// Neumaier-compensated accumulator; keeps log-series sums accurate to ~1 ulp
// of the total regardless of term count.
class CompensatedSum {
  public:
    void add(double x) {
        double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

  private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

// One row of the prime-log series: S = sum log q_j, s the lower-bound sum,
// t = sum log j, and the differences E = S - t, e = s - t.
struct SeriesRow {
    std::size_t n = 0;
    double S = 0, s = 0, t = 0, E = 0, e = 0;
};

// log q'_j without the j = 1 special case: log(j/2) + log(log(q_j/2)).
// Requires j >= 2 and q_j >= 3.
double mv_log_term(std::size_t j, std::uint64_t q_j);

// Row at index n computed from scratch against the table (1-indexed primes).
SeriesRow series_row(std::size_t n, const PrimeTable& table);

struct SignReport {
    std::vector<std::size_t> e_negative;     // all n with e(n) < 0
    std::vector<std::size_t> E_nonpositive;  // all n with E(n) <= 0 (expected empty)
};

struct SeriesScan {
    std::vector<SeriesRow> rows;  // rows 1..n_max
    SignReport report;
};

SeriesScan series_scan(std::size_t n_max, std::size_t cap = default_prime_cap);

}  // namespace epscert
