#include "epscert/constants.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "epscert/series.hpp"

namespace epscert {

namespace {

constexpr double neg_inf = -std::numeric_limits<double>::infinity();

double logaddexp(double a, double b) {
    if (a == neg_inf) return b;
    if (b == neg_inf) return a;
    double hi = std::max(a, b), lo = std::min(a, b);
    return hi + std::log1p(std::exp(lo - hi));
}

double x_val(const EpsilonParams& params, std::size_t n, double t_n) {
    double p = static_cast<double>(params.p);
    double lead = static_cast<double>(params.r) * (p - 1.0) * static_cast<double>(n + 2) *
                  static_cast<double>(params.d_k) * std::log(p);
    return lead - params.epsilon * (p - 1.0) / 2.0 * t_n;
}

}  // namespace

void validate(const EpsilonParams& params) {
    if (!is_prime_u64(params.p))
        throw std::invalid_argument("p = " + std::to_string(params.p) + " is not prime");
    if (params.d_k == 0) throw std::invalid_argument("d_k must be >= 1");
    if (!(params.epsilon > 0.0) || !std::isfinite(params.epsilon))
        throw std::invalid_argument("epsilon must be a positive finite real");
    if (params.r == 0) throw std::invalid_argument("r must be >= 1");
}

double x_of_n(const EpsilonParams& params, std::size_t n, double t_n) {
    validate(params);
    if (t_n < 0.0) throw std::domain_error("t_n = log(n!) cannot be negative");
    return x_val(params, n, t_n);
}

double y_of_n(const EpsilonParams& params, std::size_t n) {
    validate(params);
    if (n == 0) throw std::domain_error("Y(N) requires N >= 1");
    double p = static_cast<double>(params.p);
    double nd = static_cast<double>(n);
    double bracket = static_cast<double>(params.r) * (p - 1.0) * static_cast<double>(params.d_k) *
                         std::log(p) +
                     params.epsilon * (p - 1.0) / 2.0;
    return -params.epsilon * (p - 1.0) / 2.0 * nd * std::log(nd) + nd * bracket;
}

Magnitude n0(const EpsilonParams& params, double exp_limit) {
    validate(params);
    Magnitude out;
    double exponent = 2.0 * static_cast<double>(params.r) * static_cast<double>(params.d_k) *
                      std::log(static_cast<double>(params.p)) / params.epsilon;
    out.log_value = exponent;
    if (exponent > exp_limit) {
        out.astronomical = true;
        out.value = std::numeric_limits<double>::infinity();
        return out;
    }
    // p^(2 r d / eps); exact when the exponent is a small integer.
    out.value = std::pow(static_cast<double>(params.p),
                         2.0 * static_cast<double>(params.r) * static_cast<double>(params.d_k) /
                             params.epsilon);
    return out;
}

Magnitude log_c_closed(const EpsilonParams& params, double exp_limit) {
    Magnitude m = n0(params, exp_limit);
    double factor = (static_cast<double>(params.p) - 1.0) / 2.0 * params.epsilon;
    Magnitude out;
    out.log_value = std::log(factor) + m.log_value;
    out.astronomical = m.astronomical;
    out.value = m.astronomical ? std::numeric_limits<double>::infinity() : factor * m.value;
    if (!std::isfinite(out.value)) {
        out.astronomical = true;
        out.value = std::numeric_limits<double>::infinity();
    }
    return out;
}

SharpResult log_c_sharp(const EpsilonParams& params, SharpVariant variant, std::size_t search_cap,
                        std::size_t prime_cap, double exp_limit) {
    validate(params);
    Magnitude m = n0(params, exp_limit);
    SharpResult res;
    if (m.astronomical || m.value > static_cast<double>(search_cap)) {
        Magnitude closed = log_c_closed(params, exp_limit);
        res.value = closed.value;
        res.log_value = closed.log_value;
        res.astronomical = closed.astronomical;
        res.bound_only = true;
        return res;
    }
    const std::size_t hi = static_cast<std::size_t>(std::ceil(m.value)) + 1;
    res.search_hi = hi;

    PrimeTable table;
    if (variant == SharpVariant::raw_primes) table = first_primes(hi, prime_cap);
    auto term = [&](std::size_t j) {
        return variant == SharpVariant::factorial ? std::log(static_cast<double>(j))
                                                  : std::log(static_cast<double>(table.nth(j)));
    };

    double best = x_val(params, 0, 0.0);
    {
        CompensatedSum t;
        for (std::size_t j = 1; j <= hi; ++j) {
            t.add(term(j));
            best = std::max(best, x_val(params, j, t.value()));
        }
    }
    // The increment X(N+1) - X(N) is eps (p-1)/2 (log N0 - term(N+1)) with a
    // strictly increasing term, so the integer supremum sits at the sign
    // change: argmax = {k} with term(k) the last one below N0, plus k+1 on the
    // exact tie term(k+1) = N0.
    std::size_t k = 0;
    bool tie = false;
    if (variant == SharpVariant::factorial) {
        k = static_cast<std::size_t>(std::ceil(m.value)) - 1;
        tie = static_cast<double>(k + 1) == m.value;
    } else {
        while (k + 1 <= hi && static_cast<double>(table.nth(k + 1)) < m.value) ++k;
        tie = k + 1 <= hi && static_cast<double>(table.nth(k + 1)) == m.value;
    }
    res.argmax.push_back(k);
    if (tie) res.argmax.push_back(k + 1);
    res.value = best;
    res.log_value = std::log(best);
    return res;
}

double compose_constant(double log_c_k, std::uint64_t p, double log_c) {
    if (!std::isfinite(log_c_k) || !std::isfinite(log_c))
        throw std::domain_error("compose_constant needs finite inputs");
    if (!is_prime_u64(p)) throw std::invalid_argument("p = " + std::to_string(p) + " is not prime");
    return static_cast<double>(p) * log_c_k + log_c;
}

ConstantCertificate tower_constant(const TowerSpec& spec, double epsilon, unsigned r,
                                   SharpVariant variant, std::size_t search_cap,
                                   std::size_t prime_cap, double exp_limit) {
    validate(spec);
    ConstantCertificate cert;
    cert.epsilon = epsilon;
    cert.r = r;
    cert.p = spec.p;
    cert.d_kappa = spec.d_kappa;
    cert.rho = spec.rho;
    cert.log_c0 = static_cast<double>(spec.rho) * std::log(static_cast<double>(spec.p));

    double total = cert.log_c0;
    double total_log = spec.rho > 0 ? std::log(cert.log_c0) : neg_inf;
    bool astronomical = false;
    const double logp = std::log(static_cast<double>(spec.p));

    for (unsigned i = 1; i <= spec.e; ++i) {
        LevelCertificate lev;
        lev.level = i;
        lev.d_k = base_degree(spec, i);
        EpsilonParams params{spec.p, lev.d_k, epsilon, r};
        lev.n0 = n0(params, exp_limit);
        lev.closed = log_c_closed(params, exp_limit);
        lev.sharp = log_c_sharp(params, variant, search_cap, prime_cap, exp_limit);

        lev.used.log_value = std::max(lev.sharp.log_value, lev.closed.log_value);
        lev.used.astronomical = lev.sharp.astronomical || lev.closed.astronomical;
        lev.used.value = lev.used.astronomical ? std::numeric_limits<double>::infinity()
                                               : std::max(lev.sharp.value, lev.closed.value);
        if (lev.sharp.bound_only) lev.flags.push_back("bound_only");
        if (lev.used.astronomical) lev.flags.push_back("astronomical");
        if (!lev.used.astronomical && !lev.sharp.bound_only && lev.sharp.value > lev.closed.value)
            lev.flags.push_back("sharp_gt_closed");

        astronomical = astronomical || lev.used.astronomical;
        if (!astronomical) total = compose_constant(total, spec.p, lev.used.value);
        total_log = logaddexp(logp + total_log, lev.used.log_value);
        cert.levels.push_back(std::move(lev));
    }
    cert.log_c_total.astronomical = astronomical || !std::isfinite(total);
    cert.log_c_total.value =
        cert.log_c_total.astronomical ? std::numeric_limits<double>::infinity() : total;
    cert.log_c_total.log_value = total_log;
    return cert;
}

}  // namespace epscert
