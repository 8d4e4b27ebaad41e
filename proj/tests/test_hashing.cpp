#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "delcode/bitseq.hpp"
#include "delcode/errors.hpp"
#include "delcode/hashing.hpp"

using namespace delcode;

namespace {

std::vector<BitString> all_strings_up_to(unsigned maxlen) {
    std::vector<BitString> out;
    for (unsigned len = 0; len <= maxlen; ++len)
        for (uint64_t v = 0; v < (uint64_t(1) << len); ++v) {
            BitString x;
            for (unsigned i = 0; i < len; ++i) x.push_back((v >> (len - 1 - i)) & 1);
            out.push_back(x);
        }
    return out;
}

// everything reachable by deleting at most two symbols, the string included
std::set<BitString> descendants(const BitString& x) {
    std::set<BitString> out = {x};
    for (std::size_t i = 0; i < x.size(); ++i) out.insert(x.with_deletion(i));
    if (x.size() >= 2)
        for (const auto& y : deletion_ball2(x)) out.insert(y);
    return out;
}

bool confusable(const BitString& u, const BitString& v) {
    auto du = descendants(u);
    auto dv = descendants(v);
    return std::ranges::any_of(du, [&](const BitString& z) { return dv.count(z) != 0; });
}

} // namespace

TEST_CASE("sequence index packs below a leading one") {
    CHECK(f_index(BitString{}, 4) == 1);
    CHECK(f_index(BitString{0, 1, 1}, 4) == 11);
    CHECK(f_index(BitString{1, 0, 1, 1}, 4) == 27);
    CHECK(f_index(BitString{1, 1}, 4) == 7);
    CHECK(f_index(BitString{1, 0, 1}, 4) == 13);
    CHECK_THROWS_AS(f_index(BitString{1, 1, 1}, 2), std::invalid_argument);

    std::set<uint64_t> seen;
    for (const auto& v : all_strings_up_to(4)) {
        uint64_t idx = f_index(v, 4);
        CHECK(idx >= 1);
        CHECK(idx < 32);
        CHECK(seen.insert(idx).second); // injective
    }
    CHECK(seen.size() == 31);
}

TEST_CASE("short sequences are pairwise confusable and get distinct colors") {
    HashFamily fam = build_hash_family(2);
    CHECK(fam.s == 2);
    CHECK(fam.colors == 7);
    std::set<uint32_t> used;
    for (const auto& v : all_strings_up_to(2)) used.insert(fam.color_of(v));
    CHECK(used.size() == 7);
}

TEST_CASE("family coloring separates confusable sequences") {
    HashFamily fam = build_hash_family(4);
    auto all = all_strings_up_to(4);
    for (std::size_t i = 0; i < all.size(); ++i) {
        uint32_t ci = fam.color_of(all[i]);
        CHECK(ci >= 1);
        CHECK(ci <= fam.colors);
        for (std::size_t j = i + 1; j < all.size(); ++j)
            if (confusable(all[i], all[j]))
                CHECK(ci != fam.color_of(all[j]));
    }
}

TEST_CASE("segment inversion recovers the unique colored supersequence") {
    HashFamily fam = build_hash_family(6);
    for (const auto& z : all_strings_up_to(6)) {
        if (z.empty()) continue;
        uint32_t color = fam.color_of(z);
        for (std::size_t i = 0; i < z.size(); ++i)
            CHECK(invert_segment(z.with_deletion(i), 1, color, fam) == z);
        if (z.size() >= 2)
            for (const auto& y : deletion_ball2(z))
                CHECK(invert_segment(y, 2, color, fam) == z);
    }
}

TEST_CASE("segment inversion failure modes") {
    HashFamily fam = build_hash_family(6);
    BitString full = BitString::from_string("010101");
    CHECK_THROWS_AS(invert_segment(full, 1, 1, fam), std::invalid_argument);

    // a color no one-insertion supersequence of y carries
    BitString y = BitString::from_string("01010");
    std::set<uint32_t> used;
    for (const auto& z : insertion_ball(y, 1)) used.insert(fam.color_of(z));
    uint32_t missing = 0;
    for (uint32_t c = 1; c <= fam.colors; ++c)
        if (!used.count(c)) {
            missing = c;
            break;
        }
    REQUIRE(missing != 0);
    CHECK_THROWS_AS(invert_segment(y, 1, missing, fam), DecodeFailure);
}

TEST_CASE("family table serialization round-trips") {
    HashFamily fam = build_hash_family(5);
    std::string path = "hfam_roundtrip_test.bin";
    fam.save(path);
    HashFamily back = HashFamily::load(path);
    CHECK(back.s == fam.s);
    CHECK(back.colors == fam.colors);
    CHECK(back.table == fam.table);
    std::remove(path.c_str());
    CHECK_THROWS_AS(HashFamily::load("does_not_exist.bin"), std::runtime_error);
}

TEST_CASE("run-structure hash with the pinned modulus") {
    RunHash rh = make_run_hash(12);
    CHECK(rh.s == 12);
    CHECK(rh.Q == 17); // smallest prime >= s + 2

    BitString v = BitString::from_string("011000101100");
    auto h = run_hash(v, rh);
    CHECK(h.first == 4);
    CHECK(h.second == 6);
    CHECK(run_hash_packed(v, rh) == 4 * 17 + 6);

    // all-zero input has an empty run vector
    auto z = run_hash(BitString{0, 0, 0}, rh);
    CHECK(z.first == 0);
    CHECK(z.second == 0);
}

TEST_CASE("run-structure hash locates a single changed entry") {
    RunHash rh = make_run_hash(12);
    std::vector<std::size_t> a = {2, 3, 4};
    std::vector<std::size_t> b = {2, 5, 4}; // entry 1 raised by 2
    auto ha = run_hash_entries(rh, a);
    auto hb = run_hash_entries(rh, b);
    uint64_t d1 = (hb.first + rh.Q - ha.first) % rh.Q;
    uint64_t d2 = (hb.second + rh.Q - ha.second) % rh.Q;
    CHECK(d1 == 2);
    CHECK(d2 == 4); // weight of entry i is i + 1, so the ratio names the entry
    CHECK(d2 % d1 == 0);
    CHECK(d2 / d1 == 2);
}

TEST_CASE("run-structure hash rejects out-of-range entries") {
    RunHash rh = make_run_hash(12);
    CHECK_THROWS_AS(run_hash_entries(rh, {3, 17}), std::invalid_argument);
    CHECK_THROWS_AS(run_hash_entries(rh, std::vector<std::size_t>(13, 2)), std::invalid_argument);
    CHECK_THROWS_AS(run_hash(BitString::from_string("0101010101010"), rh), std::invalid_argument);
    CHECK_THROWS_AS(make_run_hash(0), std::invalid_argument);
}

TEST_CASE("per-segment hash symbols follow the segmentation") {
    HashFamily fam = build_hash_family(6);
    BitString x = BitString::from_string("0110001011000");
    Marker w = make_marker("00");
    Segmentation seg = segment_by_marker(x, w);

    HashSeq colors = hash_sequence(x, w, fam);
    REQUIRE(colors.symbols.size() == seg.segments.size());
    for (std::size_t i = 0; i < seg.segments.size(); ++i)
        CHECK(colors.symbols[i] == fam.color_of(seg.segments[i]));

    RunHash rh = make_run_hash(6);
    HashSeq runs = hash_sequence(x, w, rh);
    REQUIRE(runs.symbols.size() == seg.segments.size());
    for (std::size_t i = 0; i < seg.segments.size(); ++i)
        CHECK(runs.symbols[i] == run_hash_packed(seg.segments[i], rh));

    HashSeq idx = hash_sequence_index(x, w, 6);
    REQUIRE(idx.symbols.size() == seg.segments.size());
    for (std::size_t i = 0; i < seg.segments.size(); ++i)
        CHECK(idx.symbols[i] == f_index(seg.segments[i], 6));
}

TEST_CASE("two deletions change at most two index-hash symbols") {
    BitString x = BitString::from_string("011000101100");
    BitString y = delete2(x, {1, 9});
    HashSeq hx = hash_sequence_index(x, make_marker("00"), 4);
    HashSeq hy = hash_sequence_index(y, make_marker("00"), 4);
    CHECK(hx.symbols == std::vector<uint64_t>{11, 1, 27, 1});
    CHECK(hy.symbols == std::vector<uint64_t>{7, 1, 13, 1});
    std::size_t dist = 0;
    for (std::size_t i = 0; i < hx.symbols.size(); ++i)
        if (hx.symbols[i] != hy.symbols[i]) ++dist;
    CHECK(dist == 2);
}

TEST_CASE("overlong segments are a constraint violation") {
    HashFamily fam = build_hash_family(6);
    BitString x = BitString::from_string("00000000");
    CHECK_THROWS_AS(hash_sequence(x, make_marker("1111"), fam), ConstraintViolation);
    CHECK_THROWS_AS(hash_sequence_index(x, make_marker("1111"), 6), ConstraintViolation);
    RunHash rh = make_run_hash(6);
    CHECK_THROWS_AS(hash_sequence(x, make_marker("1111"), rh), ConstraintViolation);
}
