#include "delcode/analysis.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include "delcode/bitseq.hpp"
#include "delcode/construction.hpp"
#include "delcode/primes.hpp"

namespace delcode {

namespace {

uint64_t splitmix_mix(uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ULL;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return z;
}

// counter-based generator: stateless, so sample k is reproducible on its own
uint64_t cb_rand(uint64_t seed, uint64_t ctr) {
    return splitmix_mix(seed + ctr * 0x9E3779B97F4A7C15ULL);
}

BitString nth_word(uint64_t v, std::size_t n) {
    BitString x;
    for (std::size_t i = 0; i < n; ++i) {
        x.push_back(static_cast<int>((v >> (n - 1 - i)) & 1));
    }
    return x;
}

} // namespace

double single_code_redundancy_bits(std::size_t n) {
    double l = std::log2(static_cast<double>(n));
    return 7.0 / 3.0 * std::log2(static_cast<double>(n) + 1.0) +
           28.0 / 3.0 * std::log2(1065.0 * l);
}

double run_code_redundancy_bits(std::size_t n) {
    double l = std::log2(static_cast<double>(n));
    return std::log2(static_cast<double>(n) + 2.0) + std::log2(2130.0 * l + 2.0);
}

RedundancyReport redundancy_report(std::size_t n) {
    if (n < 2) throw std::invalid_argument("redundancy_report: n must be at least 2");
    RedundancyReport r;
    r.n = n;
    double l = std::log2(static_cast<double>(n));
    double s_real = 1065.0 * l;
    uint64_t s = static_cast<uint64_t>(std::llround(s_real));
    if (s > 65535) throw std::invalid_argument("redundancy_report: n too large for the prime search");
    r.s = s;
    r.bits_counters = 6.0 * std::log2(7.0);
    r.eq2 = single_code_redundancy_bits(n);
    r.eq3 = run_code_redundancy_bits(n);
    r.bits_q1 = 3.0 * r.eq2;
    r.bits_q2 = r.eq3;
    r.bits_balance = std::log2(s_real + 1.0);
    r.total = r.bits_counters + r.bits_q1 + r.bits_q2 + r.bits_balance;

    // implemented sizes: distance-doubled checks over actual prime fields
    uint64_t q1 = next_odd_prime_gt(s * s * s * s);
    unsigned N1 = 1;
    __uint128_t pw = 1;
    while (pw <= n) {
        pw *= q1;
        ++N1;
    }
    uint64_t Q = next_prime_geq(s + 2);
    uint64_t q2 = next_prime_gt(Q * Q);
    unsigned N2 = 1;
    __uint128_t pw2 = q2;
    while (pw2 - 1 <= n) {
        pw2 *= q2;
        ++N2;
    }
    r.total_impl = r.bits_counters + 3.0 * (4.0 * N1) * std::log2(static_cast<double>(q1)) +
                   2.0 * N2 * std::log2(static_cast<double>(q2)) +
                   std::log2(static_cast<double>(s) + 1.0);

    r.bgz_total = 128.0 * l;
    r.rate = 1.0 - r.total / static_cast<double>(n);
    r.bgz_rate = 1.0 - r.bgz_total / static_cast<double>(n);
    return r;
}

std::string redundancy_csv(std::size_t n_min, std::size_t n_max) {
    if (n_min < 2 || n_min > n_max) {
        throw std::invalid_argument("redundancy_csv: need 2 <= n-min <= n-max");
    }
    std::ostringstream out;
    out << "n,redundancy_ours_paperformula,redundancy_ours_implemented,redundancy_bgz,"
           "rate_ours,rate_bgz\n";
    out << std::fixed << std::setprecision(6);
    for (std::size_t n = 2; n <= n_max; n *= 2) {
        if (n >= n_min) {
            RedundancyReport r = redundancy_report(n);
            out << n << ',' << r.total << ',' << r.total_impl << ',' << r.bgz_total << ','
                << r.rate << ',' << r.bgz_rate << '\n';
        }
        if (n > n_max / 2) break;
    }
    return out.str();
}

double gap_probability_bound(double N, unsigned l) {
    if (l < 1) throw std::invalid_argument("gap_probability_bound: pattern length must be positive");
    if (N < 0.0) throw std::invalid_argument("gap_probability_bound: window length must be nonnegative");
    return 1.0 - std::exp(-(N / l) * std::pow(2.0, -static_cast<double>(l) - 1.0));
}

double whole_string_bound(std::size_t n, unsigned s) {
    if (s < 2 || s % 2 != 0) {
        throw std::invalid_argument("whole_string_bound: s must be even and positive");
    }
    if (static_cast<std::size_t>(s) > 2 * n) {
        throw std::invalid_argument("whole_string_bound: s must not exceed 2n");
    }
    const unsigned lens[] = {4, 4, 5, 6, 1, 1};
    double windows = 2.0 * static_cast<double>(n) / s;
    double fail = 0.0;
    for (unsigned l : lens) {
        double a = gap_probability_bound(s / 2.0, l);
        fail += 1.0 - std::pow(a, windows);
    }
    return std::max(0.0, 1.0 - fail);
}

uint64_t min_constant_for_convergence(unsigned l) {
    if (l < 1 || l > 32) {
        throw std::invalid_argument("min_constant_for_convergence: pattern length out of range");
    }
    double v = static_cast<double>(l) * std::pow(2.0, static_cast<double>(l) + 2.0) * std::log(2.0);
    return static_cast<uint64_t>(std::floor(v)) + 1;
}

MembershipEstimate monte_carlo_membership(std::size_t n, unsigned s, std::size_t samples,
                                          uint64_t seed) {
    if (n < 1) throw std::invalid_argument("monte_carlo_membership: n must be positive");
    if (samples < 1) throw std::invalid_argument("monte_carlo_membership: need at least one sample");
    std::size_t words = (n + 63) / 64;
    std::size_t hits = 0;
    for (std::size_t k = 0; k < samples; ++k) {
        BitString x;
        uint64_t word = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (i % 64 == 0) word = cb_rand(seed, static_cast<uint64_t>(k) * words + i / 64);
            x.push_back(static_cast<int>((word >> (i % 64)) & 1));
        }
        if (in_gap_constrained_space(x, s, Construction::run_bounded)) ++hits;
    }
    MembershipEstimate e;
    e.samples = samples;
    e.hits = hits;
    double N = static_cast<double>(samples);
    double ph = static_cast<double>(hits) / N;
    e.estimate = ph;
    const double z = 1.959963984540054;
    double z2 = z * z;
    double denom = 1.0 + z2 / N;
    double center = (ph + z2 / (2.0 * N)) / denom;
    double half = z * std::sqrt(ph * (1.0 - ph) / N + z2 / (4.0 * N * N)) / denom;
    // rounding must not push the interval past the point estimate
    e.ci_low = std::min(std::max(0.0, center - half), ph);
    e.ci_high = std::max(std::min(1.0, center + half), ph);
    return e;
}

double exhaustive_membership_density(std::size_t n, unsigned s) {
    if (n < 1 || n > 24) {
        throw std::invalid_argument("exhaustive_membership_density: n must be in [1, 24]");
    }
    uint64_t total = uint64_t{1} << n;
    uint64_t count = 0;
    for (uint64_t v = 0; v < total; ++v) {
        if (in_gap_constrained_space(nth_word(v, n), s, Construction::run_bounded)) ++count;
    }
    return static_cast<double>(count) / static_cast<double>(total);
}

} // namespace delcode
