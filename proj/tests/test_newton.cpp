#include "doctest.h"

#include <random>

#include "tubemc/newton_identities.hpp"
#include "tubemc/rational.hpp"

using namespace tubemc;

TEST_CASE("newton conversion examples") {
    using V = std::vector<Rat>;
    CHECK(power_sums_to_elementary<Rat>({Rat(0), Rat(2)}) == V{Rat(0), Rat(-1)});
    CHECK(power_sums_to_elementary<Rat>({Rat(3), Rat(3), Rat(3)}) == V{Rat(3), Rat(3), Rat(1)});
    // roots {1/sqrt3, -1/sqrt3}: rho = (0, 2/3), sigma = (0, -1/3)
    CHECK(power_sums_to_elementary<Rat>({Rat(0), Rat(2, 3)}) == V{Rat(0), Rat(-1, 3)});
    CHECK(elementary_to_power_sums<Rat>({Rat(0), Rat(-1)}) == V{Rat(0), Rat(2)});
    CHECK(elementary_to_power_sums<Rat>({Rat(3), Rat(3), Rat(1)}) == V{Rat(3), Rat(3), Rat(3)});
}

TEST_CASE("newton conversion round-trips exactly for n <= 8") {
    std::mt19937 rng(3);
    std::uniform_int_distribution<long long> num(-9, 9);
    std::uniform_int_distribution<long long> den(1, 4);
    for (int n = 1; n <= 8; ++n) {
        for (int trial = 0; trial < 40; ++trial) {
            std::vector<Rat> rho;
            for (int k = 0; k < n; ++k) rho.emplace_back(num(rng), den(rng));
            auto sigma = power_sums_to_elementary(rho);
            CHECK(elementary_to_power_sums(sigma) == rho);
        }
    }
}

TEST_CASE("symmetric function values satisfy the identities") {
    SymmetricFunctionValues<Rat> v{{Rat(1), Rat(-1), Rat(1, 2)}};
    std::vector<Rat> rho{v.power_sum(1), v.power_sum(2), v.power_sum(3)};
    auto sigma = power_sums_to_elementary(rho);
    CHECK(sigma[0] == v.elementary(1));
    CHECK(sigma[1] == v.elementary(2));
    CHECK(sigma[2] == v.elementary(3));
}
