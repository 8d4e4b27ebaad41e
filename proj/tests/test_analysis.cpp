#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>

#include "delcode/analysis.hpp"

using namespace delcode;
using doctest::Approx;

TEST_CASE("closed-form redundancy of one segment-color code") {
    CHECK(single_code_redundancy_bits(1 << 10) == Approx(148.20323334692182).epsilon(1e-9));
    CHECK(single_code_redundancy_bits(1 << 20) == Approx(180.86661743701322).epsilon(1e-9));
    CHECK(single_code_redundancy_bits(std::size_t(1) << 30) ==
          Approx(209.65959756987115).epsilon(1e-9));
}

TEST_CASE("closed-form redundancy of the run-structure code") {
    CHECK(run_code_redundancy_bits(1 << 10) == Approx(24.381516283571273).epsilon(1e-9));
    CHECK(run_code_redundancy_bits(1 << 20) == Approx(35.378636292291986).epsilon(1e-9));
    CHECK(run_code_redundancy_bits(std::size_t(1) << 30) ==
          Approx(45.96357346747668).epsilon(1e-9));
}

TEST_CASE("redundancy report accounting") {
    RedundancyReport r = redundancy_report(1 << 20);
    CHECK(r.s == 21300);
    CHECK(r.bits_counters == Approx(6.0 * std::log2(7.0)).epsilon(1e-12));
    CHECK(r.bits_q1 == Approx(3.0 * r.eq2).epsilon(1e-12));
    CHECK(r.bits_q2 == Approx(r.eq3).epsilon(1e-12));
    CHECK(r.total ==
          Approx(r.bits_counters + r.bits_q1 + r.bits_q2 + r.bits_balance).epsilon(1e-12));
    CHECK(r.total == Approx(609.2012516762494).epsilon(1e-9));
    CHECK(r.bgz_total == Approx(2560.0).epsilon(1e-12));
    CHECK(r.rate == Approx(1.0 - r.total / double(1 << 20)).epsilon(1e-12));

    // the implemented parameters round fields up to primes, never down
    CHECK(r.total_impl > r.total);
    CHECK_THROWS_AS(redundancy_report(1), std::invalid_argument);
}

TEST_CASE("redundancy advantage grows with the block length") {
    double r10 = redundancy_report(1 << 10).total / redundancy_report(1 << 10).bgz_total;
    double r20 = redundancy_report(1 << 20).total / redundancy_report(1 << 20).bgz_total;
    double r30 = redundancy_report(std::size_t(1) << 30).total /
                 redundancy_report(std::size_t(1) << 30).bgz_total;
    CHECK(r10 == Approx(0.39001097431613013).epsilon(1e-9));
    CHECK(r20 == Approx(0.23796923893603492).epsilon(1e-9));
    CHECK(r30 == Approx(0.1840494971807878).epsilon(1e-9));
    CHECK(r10 > r20);
    CHECK(r20 > r30);
}

TEST_CASE("redundancy table walks powers of two") {
    std::string csv = redundancy_csv(1 << 10, 1 << 12);
    std::istringstream in(csv);
    std::string line;
    REQUIRE(std::getline(in, line));
    CHECK(line ==
          "n,redundancy_ours_paperformula,redundancy_ours_implemented,redundancy_bgz,"
          "rate_ours,rate_bgz");
    std::size_t rows = 0;
    while (std::getline(in, line)) {
        ++rows;
        CHECK(line.find(',') != std::string::npos);
    }
    CHECK(rows == 3); // 1024, 2048, 4096
    CHECK(csv.substr(csv.find('\n') + 1, 5) == "1024,");
    CHECK_THROWS_AS(redundancy_csv(8, 4), std::invalid_argument);
}

TEST_CASE("pattern probability bound hits the calibration point") {
    // N = l 2^(l+1) makes the exponent exactly -1
    CHECK(gap_probability_bound(4.0, 1) == Approx(1.0 - std::exp(-1.0)).epsilon(1e-12));
    CHECK(gap_probability_bound(6 * 128.0, 6) == Approx(1.0 - std::exp(-1.0)).epsilon(1e-12));
    CHECK(gap_probability_bound(0.0, 4) == 0.0);
    CHECK_THROWS_AS(gap_probability_bound(10.0, 0), std::invalid_argument);
}

TEST_CASE("whole-string bound stays a probability and grows with s") {
    double loose = whole_string_bound(4096, 400);
    double tight = whole_string_bound(4096, 200);
    CHECK(loose >= 0.0);
    CHECK(loose <= 1.0);
    CHECK(tight >= 0.0);
    CHECK(loose >= tight);
    CHECK_THROWS_AS(whole_string_bound(100, 9), std::invalid_argument);
    CHECK_THROWS_AS(whole_string_bound(4, 10), std::invalid_argument);
}

TEST_CASE("smallest constant making the union bound vanish") {
    CHECK(min_constant_for_convergence(6) == 1065);
    CHECK(min_constant_for_convergence(1) == 6);
    CHECK_THROWS_AS(min_constant_for_convergence(0), std::invalid_argument);
    CHECK_THROWS_AS(min_constant_for_convergence(33), std::invalid_argument);
}

TEST_CASE("membership sampling is deterministic and properly bracketed") {
    MembershipEstimate a = monte_carlo_membership(24, 12, 2000, 7);
    MembershipEstimate b = monte_carlo_membership(24, 12, 2000, 7);
    CHECK(a.hits == b.hits);
    CHECK(a.samples == 2000);
    CHECK(a.estimate == Approx(double(a.hits) / 2000.0).epsilon(1e-12));
    CHECK(a.ci_low >= 0.0);
    CHECK(a.ci_low <= a.estimate);
    CHECK(a.estimate <= a.ci_high);
    CHECK(a.ci_high <= 1.0);
    CHECK_THROWS_AS(monte_carlo_membership(0, 10, 10, 1), std::invalid_argument);
    CHECK_THROWS_AS(monte_carlo_membership(10, 10, 0, 1), std::invalid_argument);
}

TEST_CASE("exact density of the constrained space") {
    CHECK(exhaustive_membership_density(10, 10) == 1.0);
    CHECK(exhaustive_membership_density(10, 6) == 0.0);
    CHECK(exhaustive_membership_density(15, 12) == Approx(12.0 / 32768.0).epsilon(1e-12));
    CHECK(exhaustive_membership_density(16, 12) == Approx(72.0 / 65536.0).epsilon(1e-12));
    CHECK_THROWS_AS(exhaustive_membership_density(25, 12), std::invalid_argument);
}

TEST_CASE("sampling agrees with exhaustive counting where both run") {
    // n = 16, s = 12 has exact density 72/65536; the interval must cover it
    MembershipEstimate e = monte_carlo_membership(16, 12, 60000, 42);
    double exact = 72.0 / 65536.0;
    CHECK(e.ci_low <= exact);
    CHECK(exact <= e.ci_high);
}