#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "epscert/rank_bounds.hpp"

using namespace epscert;

namespace {

void check_rel(double actual, double expected, double rel = 1e-12) {
    double scale = std::max(1e-30, std::abs(expected));
    CHECK(std::abs(actual - expected) <= rel * scale);
}

}  // namespace

TEST_CASE("step formulas") {
    CHECK(class_rank_step(2, 0, 5, 1) == 7);  // N + 2 over Q
    CHECK(class_rank_step(2, 0, 2, 1) == 4);
    CHECK(class_rank_step(3, 1, 1, 3) == 21);
    CHECK(class_star_rank_step(2, 0, 0, 1) == 2);
    CHECK(class_star_rank_step(3, 2, 1, 1) == 10);
    CHECK(ambiguous_rank_bound(0, 3, 1) == 4);
    CHECK(ambiguous_rank_bound(2, 0, 5) == 7);
    CHECK(aram_rank_step(2, 2, 0, 1) == 4);
    CHECK(aram_rank_step(3, 1, 2, 2) == 11);
    CHECK(torsion_rank_step(2, 0, 0, 1) == 1);
    CHECK(torsion_rank_step(3, 1, 1, 1) == 7);
    CHECK(pr_order_exponent(2, 3, 0, 1, 1) == 9);
    CHECK(pr_order_exponent(3, 2, 1, 0, 1) == 14);
}

TEST_CASE("reduction identities and coefficient ordering") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<long long> rk(0, 40), n(0, 30);
    std::uniform_int_distribution<std::uint64_t> dk(1, 12);
    const std::uint64_t ps[] = {2, 3, 5, 7, 11};
    std::uniform_int_distribution<std::size_t> pi(0, 4);
    for (int i = 0; i < 100; ++i) {
        std::uint64_t p = ps[pi(rng)];
        long long r = rk(rng), nn = n(rng);
        std::uint64_t d = dk(rng);
        CHECK(class_rank_step(p, r, nn, d) == r + class_star_rank_step(p, r, nn, d));
        CHECK(pr_order_exponent(p, 1, r, nn, d) == class_rank_step(p, r, nn, d));
        CHECK(aram_rank_step(p, r, nn, d) <= torsion_rank_step(p, r, nn, d));
        CHECK(torsion_rank_step(p, r, nn, d) <= class_rank_step(p, r, nn, d));
    }
}

TEST_CASE("monotonicity in every argument") {
    std::mt19937 rng(13);
    std::uniform_int_distribution<long long> rk(0, 40), n(0, 30);
    std::uniform_int_distribution<std::uint64_t> dk(1, 12);
    std::uniform_int_distribution<unsigned> rr(1, 4);
    const std::uint64_t ps[] = {2, 3, 5};
    std::uniform_int_distribution<std::size_t> pi(0, 2);
    auto steps = {class_rank_step, aram_rank_step, torsion_rank_step};
    for (int i = 0; i < 200; ++i) {
        std::uint64_t p = ps[pi(rng)];
        long long r = rk(rng), nn = n(rng);
        std::uint64_t d = dk(rng);
        for (auto f : steps) {
            CHECK(f(p, r, nn, d) <= f(p, r + 1, nn, d));
            CHECK(f(p, r, nn, d) <= f(p, r, nn + 1, d));
            CHECK(f(p, r, nn, d) <= f(p, r, nn, d + 1));
        }
        unsigned rv = rr(rng);
        CHECK(pr_order_exponent(p, rv, r, nn, d) <= pr_order_exponent(p, rv + 1, r, nn, d));
    }
}

TEST_CASE("argument validation and overflow") {
    CHECK_THROWS_AS(class_rank_step(4, 0, 0, 1), std::invalid_argument);
    CHECK_THROWS_AS(class_rank_step(2, -1, 0, 1), std::invalid_argument);
    CHECK_THROWS_AS(class_rank_step(2, 0, -1, 1), std::invalid_argument);
    CHECK_THROWS_AS(class_rank_step(2, 0, 0, 0), std::invalid_argument);
    CHECK_THROWS_AS(pr_order_exponent(2, 0, 0, 0, 1), std::invalid_argument);
    CHECK_THROWS_AS(class_rank_step(2, INT64_MAX / 2 + 1, 0, 1), std::overflow_error);
}

TEST_CASE("tower report folds the recursions") {
    TowerSpec one{2, 1, 1, 0, {{2}}, true};
    RankBoundReport rep = tower_report(one, {1, 2});
    REQUIRE(rep.levels.size() == 1);
    CHECK(rep.levels[0].rk_cl == 4);
    CHECK(rep.levels[0].pr_exponent.at(1) == 4);
    CHECK(rep.levels[0].pr_exponent.at(2) == 8);
    CHECK(rep.seed_a == 2);  // rho + d_kappa + 1, defaulted
    CHECK(rep.seed_a_defaulted);
    CHECK(rep.seed_t_defaulted);

    TowerSpec two{2, 2, 1, 0, {{0}, {0}}, true};
    RankBoundReport rep2 = tower_report(two, {});
    REQUIRE(rep2.levels.size() == 2);
    CHECK(rep2.levels[0].rk_cl == 2);
    CHECK(rep2.levels[1].rk_cl == 8);  // 2*2 + 1*2*2
    CHECK(rep2.levels[0].d_k == 1);
    CHECK(rep2.levels[1].d_k == 2);

    TowerSpec zero{5, 0, 3, 2, {}, false};
    RankBoundReport rep3 = tower_report(zero, {1});
    CHECK(rep3.levels.empty());
    CHECK(rep3.seed_cl == 2);
    CHECK(rep3.seed_a == 6);
    CHECK(rep3.seed_t == 2);
    CHECK_FALSE(rep3.spec.leopoldt_assumed);

    RankBoundReport rep4 = tower_report(one, {}, 7, 5);
    CHECK(rep4.seed_a == 7);
    CHECK(rep4.seed_t == 5);
    CHECK_FALSE(rep4.seed_a_defaulted);
    CHECK_FALSE(rep4.seed_t_defaulted);

    // bounds nondecreasing when any tame count or rho grows
    TowerSpec bigger = two;
    bigger.steps[0].tame_count = 3;
    CHECK(tower_report(bigger, {}).levels[1].rk_cl >= rep2.levels[1].rk_cl);
    TowerSpec richer = two;
    richer.rho = 1;
    CHECK(tower_report(richer, {}).levels[1].rk_cl >= rep2.levels[1].rk_cl);

    TowerSpec bad{2, 2, 1, 0, {{0}}, true};
    CHECK_THROWS_AS(tower_report(bad, {}), std::invalid_argument);
}

TEST_CASE("epsilon certificate check") {
    CertificateCheck triv = check_epsilon_certificate(0.0, 84.0, 0.0, 0.5);
    CHECK(triv.holds);
    check_rel(triv.margin, 0.25 * 84.0);

    // the -84 example: margin = log_c + log(84)/2 - 2 log 2
    CertificateCheck d84 = check_epsilon_certificate(2.0 * std::log(2.0), std::log(84.0),
                                                     2.5698561681856990467, 1.0);
    CHECK(d84.holds);
    check_rel(d84.margin, 3.3989702064874652355);

    CertificateCheck boundary = check_epsilon_certificate(1.5, 0.0, 1.5, 1.0);
    CHECK(boundary.holds);
    CHECK(boundary.margin == 0.0);

    CHECK_FALSE(check_epsilon_certificate(10.0, 1.0, 0.5, 0.1).holds);
    CHECK_THROWS_AS(check_epsilon_certificate(0.0, -1.0, 0.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(check_epsilon_certificate(0.0, 1.0, 0.0, 0.0), std::domain_error);
}

TEST_CASE("hilbert tower discriminant") {
    check_rel(hilbert_tower_log_disc(std::log(5.0), 2, 3), 8.0 * std::log(5.0));
    CHECK(hilbert_tower_log_disc(0.0, 3, 7) == 0.0);
    check_rel(hilbert_tower_log_disc(std::log(229.0), 3, 2), 9.0 * std::log(229.0));
}
