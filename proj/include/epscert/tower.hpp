#pragma once

#include <cstdint>
#include <vector>

namespace epscert {

// A p-cyclic tower kappa = F_0 c ... c F_e with per-step tame ramification
// counts; the base field enters only through its degree and the class-rank
// bound rho.
struct TowerStep {
    long long tame_count = 0;  // N_i for the step F_i / F_{i-1}
};

struct TowerSpec {
    std::uint64_t p = 2;
    unsigned e = 0;
    std::uint64_t d_kappa = 1;
    long long rho = 0;
    std::vector<TowerStep> steps;   // length e
    bool leopoldt_assumed = true;   // reporting flag only
};

// Throws std::invalid_argument on malformed specs.
void validate(const TowerSpec& spec);

// p^(i-1) * d_kappa, the degree of the base field of step i (1-indexed).
// Throws std::overflow_error when the degree leaves the 64-bit range.
std::uint64_t base_degree(const TowerSpec& spec, unsigned i);

}  // namespace epscert
