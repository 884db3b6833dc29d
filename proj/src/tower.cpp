#include "epscert/tower.hpp"

#include <stdexcept>
#include <string>

#include "epscert/primes.hpp"

namespace epscert {

void validate(const TowerSpec& spec) {
    if (!is_prime_u64(spec.p))
        throw std::invalid_argument("tower p = " + std::to_string(spec.p) + " is not prime");
    if (spec.d_kappa == 0) throw std::invalid_argument("d_kappa must be >= 1");
    if (spec.rho < 0) throw std::invalid_argument("rho must be >= 0");
    if (spec.steps.size() != spec.e)
        throw std::invalid_argument("tower has " + std::to_string(spec.steps.size()) +
                                    " steps, expected e = " + std::to_string(spec.e));
    for (const TowerStep& s : spec.steps)
        if (s.tame_count < 0) throw std::invalid_argument("tame counts must be >= 0");
}

std::uint64_t base_degree(const TowerSpec& spec, unsigned i) {
    if (i == 0 || i > spec.e) throw std::out_of_range("tower level out of range");
    std::uint64_t d = spec.d_kappa;
    for (unsigned k = 1; k < i; ++k) {
        if (d > UINT64_MAX / spec.p) throw std::overflow_error("tower degree exceeds 64 bits");
        d *= spec.p;
    }
    return d;
}

}  // namespace epscert
