#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace epscert {

inline constexpr long long default_disc_cap = 10'000'000;

// Positive definite integral binary quadratic form a x^2 + b xy + c y^2.
struct QuadForm {
    long long a = 1, b = 0, c = 0;
    long long disc() const { return b * b - 4 * a * c; }
    bool operator==(const QuadForm&) const = default;
    auto operator<=>(const QuadForm&) const = default;
};

// Gauss reduction; idempotent on reduced forms. Requires a > 0, disc < 0.
QuadForm reduce(QuadForm f);

bool is_reduced(const QuadForm& f);

// Identity of the class group of discriminant D.
QuadForm principal_form(long long D);

// Dirichlet composition of two forms of the same discriminant, reduced.
QuadForm compose(const QuadForm& f, const QuadForm& g);

QuadForm form_pow(QuadForm f, unsigned long long e);

inline QuadForm form_inverse(const QuadForm& f) { return reduce({f.a, -f.b, f.c}); }

// Reason string when D is not a fundamental discriminant, std::nullopt when
// it is one.
std::optional<std::string> fundamental_defect(long long D);

// Prime factorization of |n| by trial division, ascending.
std::vector<std::pair<long long, unsigned>> factorize(long long n);

// t = number of distinct primes dividing D.
unsigned ramified_count(long long D);

struct FormClassGroup {
    long long D = 0;
    std::vector<QuadForm> forms;                    // all reduced forms, sorted
    unsigned long h = 0;                            // class number
    std::vector<unsigned long> elementary_divisors; // d_1 | d_2 | ..., ascending
    unsigned two_rank = 0;
};

// Complete reduced-form enumeration with the group structure derived from
// composition; rejects non-fundamental D.
FormClassGroup class_group(long long D, long long cap = default_disc_cap);

struct GenusCheck {
    unsigned predicted = 0;  // t - 1
    unsigned observed = 0;   // two_rank
    bool pass = false;
};

GenusCheck genus_check(long long D, long long cap = default_disc_cap);

struct Rational {
    long long num = 0;
    long long den = 1;  // reduced, positive
    bool integral() const { return den == 1; }
};

// Chevalley ambiguous-class count h_k p^(t-1) / (E_k : E_k n N(K*)); a
// non-integral result signals inconsistent inputs and is returned reduced.
Rational chevalley_ambiguous(unsigned long long h_k, std::uint64_t p, unsigned t,
                             unsigned long long unit_norm_index);

struct EpsilonScanResult {
    double empirical_sup = 0.0;
    long long arg_sup = 0;             // D attaining the sup, smallest |D| on ties
    std::vector<long long> violations; // D with value > log_c, ascending |D|
    unsigned long fundamental_count = 0;
};

// max over fundamental d_min <= D <= d_max of two_rank log 2 - eps/2 log|D|,
// with the violation list against log_c. Partitioned by |D| blocks; the result
// does not depend on threads.
EpsilonScanResult epsilon_scan(long long d_min, long long d_max, double epsilon, double log_c,
                               unsigned threads = 1);

struct GenusScanRow {
    long long D = 0;
    unsigned long h = 0;
    unsigned two_rank = 0;
    unsigned t = 0;
    bool pass = false;
};

// Per-discriminant enumeration over all fundamental D in the range,
// ascending |D|.
std::vector<GenusScanRow> genus_scan(long long d_min, long long d_max, unsigned threads = 1);

}  // namespace epscert
