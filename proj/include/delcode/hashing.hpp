#ifndef DELCODE_HASHING_HPP
#define DELCODE_HASHING_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "delcode/bitseq.hpp"

namespace delcode {

// Injective index of a sequence of length <= s: packs the bits below a
// leading 1, so the empty sequence maps to 1 and the range is [1, 2^(s+1)).
uint64_t f_index(const BitString& v, unsigned s);

// Greedy coloring of all sequences of length <= s such that two sequences
// sharing a common subsequence reachable by at most two deletions from each
// always receive distinct colors.  Colors are 1-based; 0 is reserved for
// padding inside code vectors.
struct HashFamily {
    unsigned s = 0;
    uint32_t colors = 0;              // number of colors used
    std::vector<uint32_t> table;      // indexed by f_index(v, s)

    uint32_t color_of(const BitString& v) const;

    void save(const std::string& path) const;
    static HashFamily load(const std::string& path);
};

HashFamily build_hash_family(unsigned s);

// Recovers the unique sequence z with |z| = |y| + t, y a subsequence of z,
// and color_of(z) == color.  Throws DecodeFailure when no such z exists and
// std::logic_error when several do (the family forbids that).
BitString invert_segment(const BitString& y, unsigned t, uint32_t color,
                         const HashFamily& fam);

// Hash of the one-run length structure: tau_ge2 of the input, zero-padded to
// length s, multiplied by the two parity rows (1,1,...,1) and (1,2,...,s)
// over F_Q.  The rows form a distance-3 check, so a single changed entry is
// locatable and recoverable from the output difference.
struct RunHash {
    unsigned s = 0;
    uint64_t Q = 0; // prime, >= s+2 so a merged run of length s+1 still embeds
};

RunHash make_run_hash(unsigned s);

std::pair<uint64_t, uint64_t> run_hash(const BitString& v, const RunHash& rh);
uint64_t run_hash_packed(const BitString& v, const RunHash& rh);

// Same hash evaluated directly on a run-length vector (already >= 2 entries
// only, pre-padding); the BitString forms defer to this.
std::pair<uint64_t, uint64_t> run_hash_entries(const RunHash& rh,
                                               const std::vector<std::size_t>& entries);
uint64_t run_hash_entries_packed(const RunHash& rh, const std::vector<std::size_t>& entries);

// Per-segment hash symbols of the marker decomposition of x.
struct HashSeq {
    Marker marker;
    std::vector<uint64_t> symbols; // one per segment
};

// Segment colors under the family.  Throws ConstraintViolation when some
// segment is longer than fam.s.
HashSeq hash_sequence(const BitString& x, const Marker& w, const HashFamily& fam);

// Segment run-structure hashes.
HashSeq hash_sequence(const BitString& x, const Marker& w, const RunHash& rh);

// Segment indices under f_index; exact, used where the segment itself is the
// symbol.  Throws ConstraintViolation when some segment is longer than s.
HashSeq hash_sequence_index(const BitString& x, const Marker& w, unsigned s);

} // namespace delcode

#endif
