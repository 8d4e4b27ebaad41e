#ifndef DELCODE_CONSTRUCTION_HPP
#define DELCODE_CONSTRUCTION_HPP

#include <array>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "delcode/bitseq.hpp"
#include "delcode/gf.hpp"
#include "delcode/hashing.hpp"

namespace delcode {

// Two sibling code constructions.  four_markers keys protection on segment
// hashes for all four markers (0000, 1111, 110011, 11011).  run_bounded
// drops the 11011 color code in favor of a run-length bound, a run-structure
// hash sequence, and a balance residue.
enum class Construction { four_markers = 1, run_bounded = 2 };

Construction construction_from_int(int v);
int construction_to_int(Construction c);

struct CodeParams {
    std::size_t n = 0;
    unsigned s = 0;
    Construction construction = Construction::four_markers;

    // segment-color codes: base alphabet q1, syndromes over F_{q1^N1}
    uint64_t q1 = 0;
    unsigned N1 = 0;
    unsigned r1_formula = 0; // analytical redundancy count, 2*N1 + ceil((N1-1)/3)
    unsigned r1_impl = 0;    // stored redundancy of the distance-5 code, 4*N1

    // run-structure code (run_bounded only): base alphabet q2 > Q^2
    uint64_t Q = 0;
    uint64_t q2 = 0;
    unsigned N2 = 0;
    unsigned r2_formula = 0; // 1 + N2
    unsigned r2_impl = 0;    // stored redundancy of the distance-3 code, 2*N2

    std::shared_ptr<const HashFamily> family;
    RunHash rh; // run_bounded only
    std::shared_ptr<const Field> f1;
    std::shared_ptr<const Field> f2; // run_bounded only

    // cache identity of the hash family table file
    std::string family_key() const;
};

// Derives every parameter from (n, s, construction) and a prebuilt family.
// Requires s >= 9 (room for the longest marker plus the runs the decoder
// distinguishes) and family->s == s.
CodeParams derive_params(std::size_t n, unsigned s, Construction construction,
                         std::shared_ptr<const HashFamily> family);

// The stored description of one code in the family: counter residues,
// syndrome targets, and (run_bounded) the balance residue.
struct ConstraintTargets {
    // residues mod 7 of N0, N1, N0000, N1111, N110011, N11011
    std::array<uint64_t, 6> c{};
    std::vector<uint64_t> a_0000;   // 4 syndromes over F_{q1^N1}
    std::vector<uint64_t> a_1111;   // 4 syndromes over F_{q1^N1}
    std::vector<uint64_t> a_110011; // 4 syndromes over F_{q1^N1}
    // four_markers: 4 syndromes over F_{q1^N1}; run_bounded: 2 syndromes of
    // the run-structure hash sequence over F_{q2^N2}
    std::vector<uint64_t> a_11011;
    uint64_t b = 0; // balance residue mod s+1 (run_bounded only)
};

// Everything is_member evaluates, materialized for one string.
struct ConstraintProfile {
    bool gap_ok = false; // all four marker gap bounds hold
    bool tau_ok = false; // longest run <= s (always true for four_markers)
    std::array<uint64_t, 6> c{};
    std::vector<uint64_t> a_0000, a_1111, a_110011, a_11011;
    uint64_t b = 0;

    // flattened targets, usable as a deterministic bucket key; only
    // meaningful when gap_ok && tau_ok
    std::vector<uint64_t> key() const;
    ConstraintTargets to_targets() const;
};

ConstraintProfile constraint_profile(const BitString& x, const CodeParams& p);

struct MembershipResult {
    bool ok = false;
    std::string clause; // first failing clause when !ok, empty otherwise
};

// Membership in the code cut out by the targets.  Clause names, in check
// order: gap:0000, gap:1111, gap:110011, gap:11011, tau, counter:N0,
// counter:N1, counter:N0000, counter:N1111, counter:N110011, counter:N11011,
// code:0000, code:1111, code:110011, code:11011, balance.
MembershipResult is_member(const BitString& x, const CodeParams& p, const ConstraintTargets& t);

// The gap-and-run constrained ambient space the codes are carved from
// (no counter or syndrome conditions).
bool in_gap_constrained_space(const BitString& x, unsigned s, Construction construction);

// All members of {0,1}^n, lexicographic.  Refuses n > 22.
std::vector<BitString> enumerate_codebook(const CodeParams& p, const ConstraintTargets& t);

// The target tuple whose codebook is largest (ties: lexicographically
// smallest key).  By pigeonhole its codebook size is at least the
// constrained-space size divided by the number of possible target tuples.
ConstraintTargets select_targets(const CodeParams& p);

struct DecodeOutcome {
    BitString recovered;
    std::string branch; // dispatch path identifier, e.g. "two-ones/0000"
};

// Structured decoder: dispatches on counter residues of the received word
// and runs the matching repair.  y must have length n-2.
DecodeOutcome decode(const BitString& y, const CodeParams& p, const ConstraintTargets& t);

// Ground truth by brute force: the unique member whose two-deletion ball
// contains y.  Throws DecodeFailure when no member explains y and
// CollisionError when two do (the latter disproves correctability).
BitString oracle_decode(const BitString& y, const CodeParams& p, const ConstraintTargets& t);

// Generic preserved-marker repair.  received is y with `missing` bits still
// absent (missing = 2, or 1 after a run recovery step); segments received by
// w, corrects up to two symbols of the color sequence against the stored
// target, re-inserts the missing bits segment-local via invert_segment,
// splices, and post-checks membership plus y_orig being reachable from the
// result by two deletions.  Any inconsistency throws DecodeFailure.
BitString repair_via_marker(const BitString& received, const Marker& w, const CodeParams& p,
                            const ConstraintTargets& t, const BitString& y_orig, unsigned missing);

// Re-insertion candidates for a zero swallowed by a merged one-run:
// corrects one symbol of the run-structure hash sequence over the 11011
// segmentation, then for every long run of the flagged segment tries the
// zero after the first one and before the last one, keeping splits whose
// segment re-hashes to the corrected symbol.  apply_balance additionally
// demands the whole-string balance residue match (sound only when the
// second deletion cannot disturb one-run lengths).
std::vector<BitString> tau_recovery_candidates(const BitString& y, const CodeParams& p,
                                               const ConstraintTargets& t, bool apply_balance);

// JSON wire format.  Keys: n, s, construction, q1, N1, r1_paper, r1_impl,
// Q, q2, N2, r2_paper, r2_impl, c, a_0000, a_1111, a_110011, a_11011, b,
// family_key (plus size in the codebook header).
std::string params_json(const CodeParams& p, const ConstraintTargets& t);
std::string codebook_header_json(const CodeParams& p, const ConstraintTargets& t,
                                 std::size_t size);

struct CodebookHeader {
    std::size_t n = 0;
    unsigned s = 0;
    Construction construction = Construction::four_markers;
    ConstraintTargets targets;
    std::size_t size = 0;
    std::string family_key;
};

// Accepts both header lines and plain parameter lines; a missing size field
// parses as zero.
CodebookHeader parse_codebook_header(const std::string& line);

} // namespace delcode

#endif
