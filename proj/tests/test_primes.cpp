#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "delcode/primes.hpp"

using namespace delcode;

TEST_CASE("primality on small inputs") {
    CHECK_FALSE(is_prime(0));
    CHECK_FALSE(is_prime(1));
    CHECK(is_prime(2));
    CHECK(is_prime(3));
    CHECK_FALSE(is_prime(4));
    CHECK(is_prime(17));
    CHECK_FALSE(is_prime(561));   // Carmichael
    CHECK_FALSE(is_prime(25326001));
}

TEST_CASE("primality on large inputs") {
    CHECK(is_prime((uint64_t(1) << 61) - 1)); // Mersenne
    CHECK_FALSE(is_prime((uint64_t(1) << 61) - 3));
    CHECK(is_prime(18446744073709551557ULL)); // largest 64-bit prime
    CHECK_FALSE(is_prime(18446744073709551615ULL));
}

TEST_CASE("next-prime searches") {
    CHECK(next_prime_geq(14) == 17);
    CHECK(next_prime_geq(17) == 17);
    CHECK(next_prime_gt(17) == 19);
    CHECK(next_prime_gt(288) == 293);
    CHECK(next_odd_prime_gt(1) == 3); // skips 2
    CHECK(next_odd_prime_gt(4) == 5);
    CHECK(next_odd_prime_gt(256) == 257);
}

TEST_CASE("distinct prime factors in increasing order") {
    CHECK(prime_factors(12) == std::vector<uint64_t>{2, 3});
    CHECK(prime_factors(97) == std::vector<uint64_t>{97});
    CHECK(prime_factors(1).empty());
    CHECK(prime_factors(124) == std::vector<uint64_t>{2, 31});
    CHECK_THROWS_AS(prime_factors(0), std::invalid_argument);
}
