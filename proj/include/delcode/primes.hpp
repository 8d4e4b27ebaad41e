#ifndef DELCODE_PRIMES_HPP
#define DELCODE_PRIMES_HPP

#include <cstdint>
#include <vector>

namespace delcode {

// Deterministic Miller-Rabin, exact for all 64-bit inputs.
bool is_prime(uint64_t n);

uint64_t next_prime_geq(uint64_t n);
uint64_t next_prime_gt(uint64_t n);
uint64_t next_odd_prime_gt(uint64_t n);

// Distinct prime factors in increasing order.
std::vector<uint64_t> prime_factors(uint64_t n);

} // namespace delcode

#endif
