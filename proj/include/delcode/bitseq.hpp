#ifndef DELCODE_BITSEQ_HPP
#define DELCODE_BITSEQ_HPP

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace delcode {

// Binary sequence.  Positions are 1-indexed everywhere in the public API and
// in error messages; operator[] is the usual 0-based accessor.
class BitString {
public:
    BitString() = default;
    explicit BitString(std::vector<uint8_t> bits);
    BitString(std::initializer_list<int> bits);

    // Parses "0110...".  A single "-" denotes the empty sequence.
    static BitString from_string(std::string_view text);
    // Serializes to "0110...", or "-" when empty.
    std::string str() const;

    std::size_t size() const { return bits_.size(); }
    bool empty() const { return bits_.empty(); }
    int operator[](std::size_t i) const { return bits_[i]; }

    void push_back(int bit);
    void append(const BitString& other);
    // Subsequence [pos, pos+len), 0-based.
    BitString slice(std::size_t pos, std::size_t len) const;
    // Copy with one bit inserted so that it lands at 0-based index pos.
    BitString with_insertion(std::size_t pos, int bit) const;
    // Copy with the bit at 0-based index pos removed.
    BitString with_deletion(std::size_t pos) const;

    std::size_t count_ones() const;

    friend bool operator==(const BitString& a, const BitString& b) = default;
    // Shortlex: length first, then left-to-right content.  Gives every
    // container of sequences a canonical deterministic order.
    friend std::strong_ordering operator<=>(const BitString& a, const BitString& b);

private:
    std::vector<uint8_t> bits_;
};

// Pair of deletion positions in x, 1-indexed, i1 < i2.
struct DeletionPair {
    std::size_t i1 = 0;
    std::size_t i2 = 0;
};

// Fixed substring pattern used to segment a sequence.
struct Marker {
    BitString pattern;
    std::size_t size() const { return pattern.size(); }
    std::string str() const { return pattern.str(); }
};

Marker make_marker(std::string_view text);

// Decomposition of x induced by the occurrences of a marker: segments[0] is
// the prefix before the first occurrence, segments[i] the gap between
// occurrences i and i+1 (empty when they overlap or touch), segments[k] the
// suffix.  With no occurrences the whole of x is the single segment.
struct Segmentation {
    Marker marker;
    std::vector<std::size_t> starts; // 1-indexed occurrence starts
    std::vector<BitString> segments; // always starts.size() + 1 entries
    std::size_t max_gap = 0;         // longest segment length
};

// Run-length structure: tau is the longest run of either symbol, tau1 lists
// the one-run lengths in order, tau_ge2 keeps only the entries >= 2.
struct RunProfile {
    std::size_t tau = 0;
    std::vector<std::size_t> tau1;
    std::vector<std::size_t> tau_ge2;
};

// Fate of a marker pattern when going from x to a deletion result y.
enum class MarkerFate { preserved, destroyed, created, both };

struct SymbolCounts {
    std::size_t zeros = 0;
    std::size_t ones = 0;
};

// Removes the two 1-indexed positions d.i1 < d.i2 from x.
BitString delete2(const BitString& x, DeletionPair d);

// All distinct results of deleting exactly two positions of x.
std::set<BitString> deletion_ball2(const BitString& x);

// All distinct supersequences of y reachable by exactly t insertions,
// t in {0, 1, 2}.
std::set<BitString> insertion_ball(const BitString& y, unsigned t);

// 1-indexed start positions of the (possibly overlapping) occurrences of w.
std::vector<std::size_t> occurrences(const BitString& x, const Marker& w);
std::size_t count_occurrences(const BitString& x, const Marker& w);

SymbolCounts count_symbols(const BitString& x);

Segmentation segment_by_marker(const BitString& x, const Marker& w);

// Longest segment length of the w-segmentation.  Equals |x| when w does not
// occur in x.
std::size_t max_gap(const BitString& x, const Marker& w);

RunProfile run_profile(const BitString& x);

// Sum of the odd-indexed entries (1st, 3rd, ...) of tau1(x), mod (s + 1).
uint64_t balance_sum(const BitString& x, unsigned s);

// True when shorter appears in longer as a (not necessarily contiguous)
// subsequence; deleting |longer| - |shorter| suitable positions then yields
// shorter exactly.
bool is_subsequence(const BitString& shorter, const BitString& longer);

// Classifies what happened to the occurrences of w between x and y, where y
// was obtained from x by one or two deletions.  destroyed when x has more
// occurrences than y or some x-occurrence is hit by every realization of the
// deletions; created when y has more occurrences or some y-occurrence maps
// back to a contiguous window of x under no realization; both when both hold.
// preserved demands more than the absence of damage: for every i the i-th
// occurrence of y must be the i-th occurrence of x carried over intact by
// some realization, so counts, windows, and ranks all agree.  Equal-count
// scenarios that trade one occurrence for another therefore report both.
MarkerFate is_preserved(const BitString& x, const BitString& y, const Marker& w);

} // namespace delcode

#endif
