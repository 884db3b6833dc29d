#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "epscert/primes.hpp"
#include "epscert/tower.hpp"

namespace epscert {

// Parameters of one degree-p step: base degree d_k, target epsilon, and the
// exponent r of the Z/p^r coefficient ring (r = 1 is the F_p case).
struct EpsilonParams {
    std::uint64_t p = 2;
    std::uint64_t d_k = 1;
    double epsilon = 1.0;
    unsigned r = 1;
};

void validate(const EpsilonParams& params);

inline constexpr double default_exp_limit = 700.0;
inline constexpr std::size_t default_search_cap = 100'000'000;

// A positive quantity that may only be representable through its logarithm.
// value is meaningful iff !astronomical; log_value always is.
struct Magnitude {
    double value = 0.0;
    double log_value = 0.0;
    bool astronomical = false;
};

// X^(r)(N) = r (p-1)(N+2) d_k log p - eps (p-1)/2 * t_N with t_N = log N!.
double x_of_n(const EpsilonParams& params, std::size_t n, double t_n);

// Y(N), the closed-form majorant obtained from the Stirling dominant term,
// with the r-scaled degree bracket. Requires n >= 1.
double y_of_n(const EpsilonParams& params, std::size_t n);

// N_0 = p^(2 r d_k / eps), the stationary point of Y.
Magnitude n0(const EpsilonParams& params, double exp_limit = default_exp_limit);

// (p-1)/2 * eps * N_0 = Y(N_0), the closed-form constant.
Magnitude log_c_closed(const EpsilonParams& params, double exp_limit = default_exp_limit);

enum class SharpVariant {
    factorial,   // t(N) = log N!, the certified reduction
    raw_primes,  // t-source = sum of log q_j, diagnostic only
};

struct SharpResult {
    double value = 0.0;                // max of X over the certified range
    double log_value = 0.0;            // log of value (valid when astronomical)
    bool astronomical = false;
    bool bound_only = false;           // true when the search was skipped and
                                       // the closed form is reported instead
    std::vector<std::size_t> argmax;   // all maximizing N (empty when bound_only)
    std::size_t search_hi = 0;         // inclusive upper end of the scanned range
};

// Finite search of X over [0, ceil(N_0) + 1]; past that point consecutive
// differences are negative, so the integer supremum lives in the range.
SharpResult log_c_sharp(const EpsilonParams& params, SharpVariant variant = SharpVariant::factorial,
                        std::size_t search_cap = default_search_cap,
                        std::size_t prime_cap = default_prime_cap,
                        double exp_limit = default_exp_limit);

// log C_K = p * log C_k + log c_k.
double compose_constant(double log_c_k, std::uint64_t p, double log_c);

struct LevelCertificate {
    unsigned level = 0;                // i in 1..e
    std::uint64_t d_k = 1;             // p^(i-1) * d_kappa
    Magnitude n0;
    Magnitude closed;
    SharpResult sharp;
    Magnitude used;                    // max(sharp, closed), the composed constant
    std::vector<std::string> flags;    // "sharp_gt_closed", "bound_only", "astronomical"
};

struct ConstantCertificate {
    double epsilon = 0.0;
    unsigned r = 1;
    std::uint64_t p = 2;
    std::uint64_t d_kappa = 1;
    long long rho = 0;
    double log_c0 = 0.0;               // rho * log p
    std::vector<LevelCertificate> levels;
    Magnitude log_c_total;
};

// Composes the per-level constants along the tower, base case C = p^rho.
ConstantCertificate tower_constant(const TowerSpec& spec, double epsilon, unsigned r,
                                   SharpVariant variant = SharpVariant::factorial,
                                   std::size_t search_cap = default_search_cap,
                                   std::size_t prime_cap = default_prime_cap,
                                   double exp_limit = default_exp_limit);

}  // namespace epscert
