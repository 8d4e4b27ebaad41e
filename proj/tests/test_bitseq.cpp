#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>
#include <stdexcept>
#include <vector>

#include "delcode/bitseq.hpp"

using namespace delcode;

TEST_CASE("BitString round-trips through its text form") {
    CHECK(BitString::from_string("0110").str() == "0110");
    CHECK(BitString::from_string("-").empty());
    CHECK(BitString{}.str() == "-");
    CHECK(BitString{0, 1, 1} == BitString::from_string("011"));
    CHECK_THROWS_AS(BitString::from_string("01x"), std::invalid_argument);
    CHECK_THROWS_AS(BitString({0, 2}), std::invalid_argument);
}

TEST_CASE("BitString ordering is shortlex") {
    CHECK(BitString{1} < BitString{0, 0});
    CHECK(BitString{0, 1} < BitString{1, 0});
    std::set<BitString> all = {BitString{1, 1}, BitString{}, BitString{0}, BitString{1}};
    CHECK(all.begin()->empty());
}

TEST_CASE("slice, insertion and deletion are positional inverses") {
    BitString x{1, 0, 1, 1, 0};
    CHECK(x.slice(1, 3) == BitString{0, 1, 1});
    CHECK(x.with_deletion(2).with_insertion(2, 1) == x);
    CHECK(x.with_insertion(5, 0) == BitString{1, 0, 1, 1, 0, 0});
    CHECK_THROWS_AS(x.slice(4, 2), std::out_of_range);
    CHECK_THROWS_AS(x.with_deletion(5), std::out_of_range);
}

TEST_CASE("delete2 removes exactly the two 1-indexed positions") {
    BitString x{0, 1, 0, 1, 0, 0};
    CHECK(delete2(x, {2, 4}) == BitString{0, 0, 0, 0});
    CHECK_THROWS_AS(delete2(x, {4, 4}), std::invalid_argument);
    CHECK_THROWS_AS(delete2(x, {0, 3}), std::invalid_argument);
    CHECK_THROWS_AS(delete2(x, {1, 7}), std::invalid_argument);
}

TEST_CASE("deletion and insertion balls are mutual inverses") {
    BitString x{1, 0, 0, 1, 1, 0};
    auto ball = deletion_ball2(x);
    for (const auto& y : ball) {
        CHECK(y.size() == x.size() - 2);
        CHECK(is_subsequence(y, x));
        auto up = insertion_ball(y, 2);
        CHECK(up.count(x) == 1);
    }
    // a constant string has a single deletion result
    CHECK(deletion_ball2(BitString{0, 0, 0, 0}).size() == 1);
    CHECK(insertion_ball(BitString{1, 0}, 0) == std::set<BitString>{BitString{1, 0}});
    CHECK_THROWS_AS(insertion_ball(BitString{1}, 3), std::invalid_argument);
}

TEST_CASE("occurrences are 1-indexed and may overlap") {
    BitString x = BitString::from_string("011000101100");
    Marker w = make_marker("00");
    CHECK(occurrences(x, w) == std::vector<std::size_t>{4, 5, 11});
    CHECK(count_occurrences(x, w) == 3);
    CHECK(occurrences(BitString::from_string("111"), make_marker("0000")).empty());
}

TEST_CASE("segmentation covers prefix, gaps and suffix") {
    BitString x = BitString::from_string("011000101100");
    Marker w = make_marker("00");
    Segmentation seg = segment_by_marker(x, w);
    REQUIRE(seg.starts == std::vector<std::size_t>{4, 5, 11});
    REQUIRE(seg.segments.size() == 4);
    CHECK(seg.segments[0] == BitString::from_string("011"));
    CHECK(seg.segments[1].empty()); // occurrences 4 and 5 overlap
    CHECK(seg.segments[2] == BitString::from_string("1011"));
    CHECK(seg.segments[3].empty());
    CHECK(seg.max_gap == 4);
    CHECK(max_gap(x, w) == 4);

    // with no occurrence the whole string is one segment
    BitString z = BitString::from_string("10101");
    CHECK(max_gap(z, make_marker("0000")) == 5);
    Segmentation whole = segment_by_marker(z, make_marker("0000"));
    CHECK(whole.starts.empty());
    REQUIRE(whole.segments.size() == 1);
    CHECK(whole.segments[0] == z);
}

TEST_CASE("the two-deletion image keeps the segmentation aligned") {
    // deleting positions 1 and 9 of x drops one segment bit and one marker bit
    BitString x = BitString::from_string("011000101100");
    BitString y = delete2(x, {1, 9});
    CHECK(y == BitString::from_string("1100010100"));
    CHECK(occurrences(y, make_marker("00")) == std::vector<std::size_t>{3, 4, 9});
}

TEST_CASE("symbol and pattern counters") {
    BitString x = BitString::from_string("011110000010110111000");
    SymbolCounts cnt = count_symbols(x);
    CHECK(cnt.zeros == 11);
    CHECK(cnt.ones == 10);
    CHECK(count_occurrences(x, make_marker("0000")) == 2);
    CHECK(count_occurrences(x, make_marker("1111")) == 1);
    CHECK(count_occurrences(x, make_marker("110011")) == 0);
    CHECK(count_occurrences(x, make_marker("11011")) == 1);
}

TEST_CASE("run profile lists one-run lengths in order") {
    RunProfile rp = run_profile(BitString::from_string("11010111"));
    CHECK(rp.tau == 3);
    CHECK(rp.tau1 == std::vector<std::size_t>{2, 1, 3});
    CHECK(rp.tau_ge2 == std::vector<std::size_t>{2, 3});

    RunProfile rv = run_profile(BitString::from_string("011000101100"));
    CHECK(rv.tau == 3);
    CHECK(rv.tau1 == std::vector<std::size_t>{2, 1, 2});
    CHECK(rv.tau_ge2 == std::vector<std::size_t>{2, 2});

    CHECK(run_profile(BitString{}).tau == 0);
    CHECK(run_profile(BitString{0, 0, 0}).tau1.empty());
}

TEST_CASE("balance sum adds every other one-run length") {
    // tau1 = (2,1,2): entries 1 and 3 give 2 + 2 = 4 mod 13
    CHECK(balance_sum(BitString::from_string("011000101100"), 12) == 4);
    // tau1 = (2,1,3): entries 1 and 3 give 2 + 3 = 5 mod 13
    CHECK(balance_sum(BitString::from_string("11010111"), 12) == 5);
    CHECK(balance_sum(BitString{0, 0}, 4) == 0);
    // reduction: tau1 = (3,3) picks entries 1 alone... both odd-indexed: 3, mod 4
    CHECK(balance_sum(BitString::from_string("1110111"), 3) == 3);
    CHECK_THROWS_AS(balance_sum(BitString{1}, 0), std::invalid_argument);
}

TEST_CASE("subsequence containment") {
    CHECK(is_subsequence(BitString::from_string("101"), BitString::from_string("110011")));
    CHECK_FALSE(is_subsequence(BitString::from_string("111"), BitString::from_string("1001")));
    CHECK(is_subsequence(BitString{}, BitString{0}));
    CHECK(is_subsequence(BitString{0}, BitString{0}));
}

TEST_CASE("marker fate distinguishes intact occurrences from traded ones") {
    BitString x = BitString::from_string("0010110100101110");
    BitString y = BitString::from_string("00101010010110");
    REQUIRE(is_subsequence(y, x));
    // all three 101 occurrences carry over with ranks intact
    CHECK(is_preserved(x, y, make_marker("101")) == MarkerFate::preserved);
    // the lone 111 occurrence loses a bit under every realization
    CHECK(is_preserved(x, y, make_marker("111")) == MarkerFate::destroyed);
}

TEST_CASE("marker fate counts occurrences, not just survival") {
    // 000000 -> 0000: three 0000 occurrences collapse into one
    CHECK(is_preserved(BitString::from_string("000000"), BitString::from_string("0000"),
                       make_marker("0000")) == MarkerFate::destroyed);
    // no occurrence on either side is vacuously preserved
    CHECK(is_preserved(BitString::from_string("000000"), BitString::from_string("0000"),
                       make_marker("1111")) == MarkerFate::preserved);
    // deletions can create an occurrence out of nothing
    CHECK(is_preserved(BitString::from_string("0101"), BitString::from_string("00"),
                       make_marker("00")) == MarkerFate::created);
    // equal counts but the surviving occurrence is a different one
    CHECK(is_preserved(BitString::from_string("001010"), BitString::from_string("0100"),
                       make_marker("00")) == MarkerFate::both);
    // single-deletion form: two 11 occurrences become one
    CHECK(is_preserved(BitString::from_string("11011"), BitString::from_string("1011"),
                       make_marker("11")) == MarkerFate::destroyed);
    CHECK_THROWS_AS(is_preserved(BitString::from_string("0101"), BitString::from_string("1111"),
                                 make_marker("00")),
                    std::invalid_argument);
}
