#ifndef DELCODE_ANALYSIS_HPP
#define DELCODE_ANALYSIS_HPP

#include <cstddef>
#include <cstdint>
#include <string>

namespace delcode {

// Redundancy accounting at length n, with the segment bound the asymptotic
// analysis assumes (s = 1065 log2 n).
struct RedundancyReport {
    std::size_t n = 0;
    uint64_t s = 0;
    double bits_counters = 0; // six counters mod 7
    double bits_q1 = 0;       // three segment-color codes
    double bits_q2 = 0;       // run-structure code
    double bits_balance = 0;  // balance residue
    double eq2 = 0;           // closed form for one segment-color code
    double eq3 = 0;           // closed form for the run-structure code
    double total = 0;         // analytical total
    double total_impl = 0;    // total with the implemented code sizes
    double bgz_total = 0;     // 128 log2 n reference redundancy
    double rate = 0;
    double bgz_rate = 0;
};

RedundancyReport redundancy_report(std::size_t n);

// CSV with one row per power of two inside [n_min, n_max].
std::string redundancy_csv(std::size_t n_min, std::size_t n_max);

// Redundancy in bits of a single segment-color code at length n:
// 7/3 log2(n+1) + 28/3 log2(1065 log2 n).
double single_code_redundancy_bits(std::size_t n);

// Redundancy in bits of the run-structure code at length n:
// log2(n+2) + log2(2130 log2 n + 2).
double run_code_redundancy_bits(std::size_t n);

// Lower bound on the probability that a uniform random length-N string
// contains a fixed pattern of length l: 1 - exp(-(N/l) 2^(-l-1)).
double gap_probability_bound(double N, unsigned l);

// Lower bound on the probability that a uniform random length-n string
// satisfies all four marker gap bounds and the run bound for segment
// parameter s.  Chops the string into 2n/s windows of length s/2 and takes a
// union bound over the six pattern lengths {4, 4, 5, 6, 1, 1}.  Requires s
// even and s <= 2n.
double whole_string_bound(std::size_t n, unsigned s);

// Smallest integer c exceeding l 2^(l+2) ln 2.  With s = c log2 n the
// per-window failure probability for a length-l pattern decays faster than
// 1/n, so the union bound over all windows vanishes as n grows.
uint64_t min_constant_for_convergence(unsigned l);

struct MembershipEstimate {
    std::size_t samples = 0;
    std::size_t hits = 0;
    double estimate = 0;
    double ci_low = 0;  // 95% Wilson interval
    double ci_high = 0;
};

// Monte Carlo estimate of the density of the gap-and-run constrained space
// inside {0,1}^n.  Deterministic for a fixed (n, s, samples, seed).
MembershipEstimate monte_carlo_membership(std::size_t n, unsigned s, std::size_t samples,
                                          uint64_t seed);

// Exact density of the gap-and-run constrained space.  Refuses n > 24.
double exhaustive_membership_density(std::size_t n, unsigned s);

} // namespace delcode

#endif
