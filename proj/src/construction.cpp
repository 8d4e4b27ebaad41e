#include "delcode/construction.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include <json.hpp>

#include "delcode/errors.hpp"
#include "delcode/primes.hpp"

namespace delcode {

namespace {

const Marker& m0000() {
    static const Marker m = make_marker("0000");
    return m;
}
const Marker& m1111() {
    static const Marker m = make_marker("1111");
    return m;
}
const Marker& m110011() {
    static const Marker m = make_marker("110011");
    return m;
}
const Marker& m11011() {
    static const Marker m = make_marker("11011");
    return m;
}

ComponentCode color_code(const CodeParams& p, std::vector<uint64_t> target) {
    return ComponentCode{p.f1, p.q1, {1, 2, 3, 4}, std::move(target)};
}

ComponentCode run_code(const CodeParams& p, std::vector<uint64_t> target) {
    return ComponentCode{p.f2, p.q2, {0, 1}, std::move(target)};
}

std::array<uint64_t, 6> counters_mod7(const BitString& x) {
    SymbolCounts sc = count_symbols(x);
    return {sc.zeros % 7,
            sc.ones % 7,
            count_occurrences(x, m0000()) % 7,
            count_occurrences(x, m1111()) % 7,
            count_occurrences(x, m110011()) % 7,
            count_occurrences(x, m11011()) % 7};
}

std::vector<uint64_t> color_syndromes(const BitString& x, const Marker& w, const CodeParams& p) {
    HashSeq hs = hash_sequence(x, w, *p.family);
    return color_code(p, {}).syndromes(hs.symbols);
}

std::vector<uint64_t> run_syndromes(const BitString& x, const CodeParams& p) {
    HashSeq hs = hash_sequence(x, m11011(), p.rh);
    return run_code(p, {}).syndromes(hs.symbols);
}

BitString bits_of(uint64_t v, std::size_t n) {
    BitString x;
    for (std::size_t i = 0; i < n; ++i) {
        x.push_back(static_cast<int>((v >> (n - 1 - i)) & 1));
    }
    return x;
}

} // namespace

Construction construction_from_int(int v) {
    if (v == 1) return Construction::four_markers;
    if (v == 2) return Construction::run_bounded;
    throw std::invalid_argument("construction must be 1 or 2");
}

int construction_to_int(Construction c) {
    return c == Construction::four_markers ? 1 : 2;
}

std::string CodeParams::family_key() const {
    return "hfam-v1-s" + std::to_string(s);
}

CodeParams derive_params(std::size_t n, unsigned s, Construction construction,
                         std::shared_ptr<const HashFamily> family) {
    if (n < 2) throw std::invalid_argument("derive_params: n must be at least 2");
    if (s < 9) throw std::invalid_argument("derive_params: s must be at least 9");
    if (!family) throw std::invalid_argument("derive_params: missing hash family");
    if (family->s != s) throw std::invalid_argument("derive_params: hash family built for a different s");

    CodeParams p;
    p.n = n;
    p.s = s;
    p.construction = construction;
    p.family = std::move(family);

    p.q1 = next_odd_prime_gt(p.family->colors);
    unsigned N1 = 1;
    __uint128_t pw = 1; // q1^(N1-1); must exceed n so the block covers every segment index
    while (pw <= n) {
        pw *= p.q1;
        ++N1;
    }
    p.N1 = N1;
    p.r1_formula = 2 * N1 + (N1 + 1) / 3;
    p.r1_impl = 4 * N1;
    p.f1 = Field::make(p.q1, N1);

    if (construction == Construction::run_bounded) {
        p.rh = make_run_hash(s);
        p.Q = p.rh.Q;
        p.q2 = next_prime_gt(p.Q * p.Q);
        unsigned N2 = 1;
        __uint128_t pw2 = p.q2; // q2^N2 - 1 must exceed n
        while (pw2 - 1 <= n) {
            pw2 *= p.q2;
            ++N2;
        }
        p.N2 = N2;
        p.r2_formula = 1 + N2;
        p.r2_impl = 2 * N2;
        p.f2 = Field::make(p.q2, N2);
    }
    return p;
}

std::vector<uint64_t> ConstraintProfile::key() const {
    std::vector<uint64_t> k(c.begin(), c.end());
    k.insert(k.end(), a_0000.begin(), a_0000.end());
    k.insert(k.end(), a_1111.begin(), a_1111.end());
    k.insert(k.end(), a_110011.begin(), a_110011.end());
    k.insert(k.end(), a_11011.begin(), a_11011.end());
    k.push_back(b);
    return k;
}

ConstraintTargets ConstraintProfile::to_targets() const {
    ConstraintTargets t;
    t.c = c;
    t.a_0000 = a_0000;
    t.a_1111 = a_1111;
    t.a_110011 = a_110011;
    t.a_11011 = a_11011;
    t.b = b;
    return t;
}

ConstraintProfile constraint_profile(const BitString& x, const CodeParams& p) {
    if (x.size() != p.n) throw std::invalid_argument("constraint_profile: sequence length differs from n");
    ConstraintProfile out;
    out.gap_ok = max_gap(x, m0000()) <= p.s && max_gap(x, m1111()) <= p.s &&
                 max_gap(x, m110011()) <= p.s && max_gap(x, m11011()) <= p.s;
    out.tau_ok = p.construction == Construction::four_markers || run_profile(x).tau <= p.s;
    if (!out.gap_ok || !out.tau_ok) return out; // hashes are undefined past the gap bound
    out.c = counters_mod7(x);
    out.a_0000 = color_syndromes(x, m0000(), p);
    out.a_1111 = color_syndromes(x, m1111(), p);
    out.a_110011 = color_syndromes(x, m110011(), p);
    if (p.construction == Construction::four_markers) {
        out.a_11011 = color_syndromes(x, m11011(), p);
    } else {
        out.a_11011 = run_syndromes(x, p);
        out.b = balance_sum(x, p.s);
    }
    return out;
}

MembershipResult is_member(const BitString& x, const CodeParams& p, const ConstraintTargets& t) {
    if (x.size() != p.n) throw std::invalid_argument("is_member: sequence length differs from n");
    struct GapClause {
        const Marker* w;
        const char* name;
    };
    const GapClause gaps[] = {{&m0000(), "gap:0000"},
                              {&m1111(), "gap:1111"},
                              {&m110011(), "gap:110011"},
                              {&m11011(), "gap:11011"}};
    for (const auto& g : gaps) {
        if (max_gap(x, *g.w) > p.s) return {false, g.name};
    }
    if (p.construction == Construction::run_bounded && run_profile(x).tau > p.s) {
        return {false, "tau"};
    }
    auto c = counters_mod7(x);
    const char* counter_names[] = {"counter:N0",    "counter:N1",      "counter:N0000",
                                   "counter:N1111", "counter:N110011", "counter:N11011"};
    for (int i = 0; i < 6; ++i) {
        if (c[i] != t.c[i]) return {false, counter_names[i]};
    }
    if (color_syndromes(x, m0000(), p) != t.a_0000) return {false, "code:0000"};
    if (color_syndromes(x, m1111(), p) != t.a_1111) return {false, "code:1111"};
    if (color_syndromes(x, m110011(), p) != t.a_110011) return {false, "code:110011"};
    if (p.construction == Construction::four_markers) {
        if (color_syndromes(x, m11011(), p) != t.a_11011) return {false, "code:11011"};
    } else {
        if (run_syndromes(x, p) != t.a_11011) return {false, "code:11011"};
        if (balance_sum(x, p.s) != t.b) return {false, "balance"};
    }
    return {true, ""};
}

bool in_gap_constrained_space(const BitString& x, unsigned s, Construction construction) {
    if (max_gap(x, m0000()) > s) return false;
    if (max_gap(x, m1111()) > s) return false;
    if (max_gap(x, m110011()) > s) return false;
    if (max_gap(x, m11011()) > s) return false;
    if (construction == Construction::run_bounded && run_profile(x).tau > s) return false;
    return true;
}

std::vector<BitString> enumerate_codebook(const CodeParams& p, const ConstraintTargets& t) {
    if (p.n > 22) throw std::invalid_argument("enumerate_codebook: n above the exhaustive limit 22");
    std::vector<BitString> book;
    for (uint64_t v = 0; v < (uint64_t{1} << p.n); ++v) {
        BitString x = bits_of(v, p.n);
        if (is_member(x, p, t).ok) book.push_back(std::move(x));
    }
    return book;
}

namespace {

ConstraintTargets targets_from_key(const std::vector<uint64_t>& key, const CodeParams& p) {
    ConstraintTargets t;
    std::size_t i = 0;
    for (std::size_t j = 0; j < 6; ++j) t.c[j] = key[i++];
    auto take = [&](std::size_t count) {
        std::vector<uint64_t> v(key.begin() + static_cast<std::ptrdiff_t>(i),
                                key.begin() + static_cast<std::ptrdiff_t>(i + count));
        i += count;
        return v;
    };
    t.a_0000 = take(4);
    t.a_1111 = take(4);
    t.a_110011 = take(4);
    t.a_11011 = take(p.construction == Construction::four_markers ? 4 : 2);
    t.b = key[i];
    return t;
}

} // namespace

ConstraintTargets select_targets(const CodeParams& p) {
    if (p.n > 22) throw std::invalid_argument("select_targets: n above the exhaustive limit 22");
    std::vector<std::vector<uint64_t>> keys;
    for (uint64_t v = 0; v < (uint64_t{1} << p.n); ++v) {
        ConstraintProfile prof = constraint_profile(bits_of(v, p.n), p);
        if (!prof.gap_ok || !prof.tau_ok) continue;
        keys.push_back(prof.key());
    }
    if (keys.empty()) {
        throw std::invalid_argument("select_targets: no sequence satisfies the gap constraints");
    }
    std::sort(keys.begin(), keys.end());
    // largest bucket; scanning sorted keys makes the first maximum the
    // lexicographically smallest one
    std::size_t best_begin = 0, best_count = 0;
    std::size_t i = 0;
    while (i < keys.size()) {
        std::size_t j = i;
        while (j < keys.size() && keys[j] == keys[i]) ++j;
        if (j - i > best_count) {
            best_count = j - i;
            best_begin = i;
        }
        i = j;
    }
    return targets_from_key(keys[best_begin], p);
}

BitString repair_via_marker(const BitString& received, const Marker& w, const CodeParams& p,
                            const ConstraintTargets& t, const BitString& y_orig, unsigned missing) {
    if (missing < 1 || missing > 2) {
        throw std::invalid_argument("repair_via_marker: missing must be 1 or 2");
    }
    const std::vector<uint64_t>* target = nullptr;
    if (w.pattern == m0000().pattern) target = &t.a_0000;
    else if (w.pattern == m1111().pattern) target = &t.a_1111;
    else if (w.pattern == m110011().pattern) target = &t.a_110011;
    else if (w.pattern == m11011().pattern) target = &t.a_11011;
    else throw std::invalid_argument("repair_via_marker: unknown marker " + w.str());
    if (w.pattern == m11011().pattern && p.construction == Construction::run_bounded) {
        throw std::invalid_argument("repair_via_marker: this construction keeps no color code for 11011");
    }

    Segmentation seg;
    HashSeq hs;
    try {
        seg = segment_by_marker(received, w);
        hs = hash_sequence(received, w, *p.family);
    } catch (const ConstraintViolation& e) {
        throw DecodeFailure(std::string("repair: ") + e.what());
    }

    auto corr = correct_up_to_2(color_code(p, *target), hs.symbols);
    if (!corr) throw DecodeFailure("repair: color sequence admits no consistent correction");
    const auto& cs = corr->corrections;
    if (cs.empty()) {
        throw DecodeFailure("repair: color sequence already consistent although bits are missing");
    }
    if (cs.size() > missing) {
        throw DecodeFailure("repair: more damaged segments than missing bits");
    }

    std::vector<BitString> fixed = seg.segments;
    for (const auto& c : cs) {
        if (c.new_sym < 1 || c.new_sym > p.family->colors) {
            throw DecodeFailure("repair: corrected symbol is not a color");
        }
        unsigned grow = cs.size() == 2 ? 1 : missing;
        fixed[c.pos] = invert_segment(seg.segments[c.pos], grow,
                                      static_cast<uint32_t>(c.new_sym), *p.family);
    }

    // splice, preserving the overlap structure of the received word where the
    // gap stayed empty
    const auto& starts = seg.starts;
    BitString xhat = fixed[0];
    for (std::size_t i = 0; i < starts.size(); ++i) {
        if (i == 0) {
            xhat.append(w.pattern);
            continue;
        }
        const BitString& gap = fixed[i];
        if (!gap.empty()) {
            xhat.append(gap);
            xhat.append(w.pattern);
        } else {
            std::size_t d = starts[i] - starts[i - 1];
            if (d >= w.size()) {
                xhat.append(w.pattern);
            } else {
                xhat.append(w.pattern.slice(w.size() - d, d));
            }
        }
    }
    if (!starts.empty()) xhat.append(fixed.back());

    if (xhat.size() != p.n) throw DecodeFailure("repair: reconstruction has the wrong length");
    if (!is_member(xhat, p, t).ok) {
        throw DecodeFailure("repair: reconstruction violates a code constraint");
    }
    if (xhat.size() - y_orig.size() != 2 || !is_subsequence(y_orig, xhat)) {
        throw DecodeFailure("repair: received word is not a two-deletion result of the reconstruction");
    }
    return xhat;
}

std::vector<BitString> tau_recovery_candidates(const BitString& y, const CodeParams& p,
                                               const ConstraintTargets& t, bool apply_balance) {
    if (p.construction != Construction::run_bounded) {
        throw std::invalid_argument("tau_recovery_candidates: needs the run-structure code");
    }
    Segmentation seg;
    HashSeq hs;
    try {
        seg = segment_by_marker(y, m11011());
        hs = hash_sequence(y, m11011(), p.rh);
    } catch (const ConstraintViolation& e) {
        throw DecodeFailure(std::string("run recovery: ") + e.what());
    }

    auto corr = correct_up_to_1(run_code(p, t.a_11011), hs.symbols);
    if (!corr) throw DecodeFailure("run recovery: hash sequence admits no single correction");
    if (corr->corrections.empty()) {
        throw DecodeFailure("run recovery: hash sequence already consistent");
    }
    const Correction& c = corr->corrections[0];
    if (c.new_sym >= p.Q * p.Q) {
        throw DecodeFailure("run recovery: corrected symbol is not a packed run hash");
    }
    uint64_t s1 = c.new_sym / p.Q;
    uint64_t s2 = c.new_sym % p.Q;

    const BitString& piece = seg.segments[c.pos];
    std::size_t seg_begin = c.pos == 0 ? 0 : seg.starts[c.pos - 1] - 1 + m11011().size();

    std::set<BitString> out;
    if (piece.size() + 1 > p.s) return {}; // the restored segment must still hash
    // a swallowed zero sits right after the first one or right before the
    // last one of the merged run
    std::size_t i = 0;
    while (i < piece.size()) {
        if (piece[i] != 1) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j < piece.size() && piece[j] == 1) ++j;
        if (j - i >= 2) {
            for (std::size_t local : {i + 1, j - 1}) {
                BitString zseg = piece.with_insertion(local, 0);
                auto h = run_hash(zseg, p.rh);
                if (h.first != s1 || h.second != s2) continue;
                BitString z = y.with_insertion(seg_begin + local, 0);
                if (apply_balance && balance_sum(z, p.s) != t.b) continue;
                out.insert(std::move(z));
            }
        }
        i = j;
    }
    return {out.begin(), out.end()};
}

namespace {

DecodeOutcome finish_run_recovery(const BitString& y, const CodeParams& p,
                                  const ConstraintTargets& t, bool apply_balance,
                                  const char* branch) {
    std::set<BitString> results;
    for (const BitString& z : tau_recovery_candidates(y, p, t, apply_balance)) {
        try {
            results.insert(repair_via_marker(z, m1111(), p, t, y, 1));
        } catch (const DecodeFailure&) {
        }
    }
    if (results.empty()) {
        throw DecodeFailure("decode: run recovery produced no consistent completion");
    }
    if (results.size() > 1) throw DecodeFailure("decode: run recovery is ambiguous");
    return {*results.begin(), branch};
}

} // namespace

DecodeOutcome decode(const BitString& y, const CodeParams& p, const ConstraintTargets& t) {
    if (y.size() + 2 != p.n) {
        throw std::invalid_argument("decode: received word must have length n - 2");
    }
    auto resid = [](uint64_t target, std::size_t have) { return (target + 7 - have % 7) % 7; };
    SymbolCounts sc = count_symbols(y);
    uint64_t d0 = resid(t.c[0], sc.zeros);
    uint64_t d1 = resid(t.c[1], sc.ones);
    if (d0 > 2 || d1 > 2 || d0 + d1 != 2) {
        throw DecodeFailure("decode: symbol counts inconsistent with two deletions");
    }
    uint64_t dv0000 = resid(t.c[2], count_occurrences(y, m0000()));
    uint64_t dv1111 = resid(t.c[3], count_occurrences(y, m1111()));
    uint64_t dv110011 = resid(t.c[4], count_occurrences(y, m110011()));
    uint64_t dv11011 = resid(t.c[5], count_occurrences(y, m11011()));
    bool four = p.construction == Construction::four_markers;

    auto rep = [&](const Marker& w, const char* branch) {
        return DecodeOutcome{repair_via_marker(y, w, p, t, y, 2), branch};
    };

    if (d1 == 2) {
        // two ones lost: zero counts are intact, 0000 can only be created
        if (dv0000 == 0) return rep(m0000(), "two-ones/0000");
        if (dv1111 == 0) return rep(m1111(), "two-ones/1111");
        return rep(m110011(), "two-ones/110011");
    }
    if (d0 == 2) {
        // two zeros lost: 1111 can only be created, 0000 only destroyed
        if (dv1111 == 0) return rep(m1111(), "two-zeros/1111");
        if (dv0000 == 0) return rep(m0000(), "two-zeros/0000");
        // one zero came out of a long zero run, the other merged two one runs
        if (four) {
            if (dv11011 == 0) return rep(m11011(), "two-zeros/11011");
            return rep(m110011(), "two-zeros/110011");
        }
        if (dv110011 != 0) return finish_run_recovery(y, p, t, true, "two-zeros/tau+1111");
        return rep(m110011(), "two-zeros/110011");
    }

    // one zero and one one lost.  Net occurrence change per marker: 0 keeps
    // it balanced, +1 means one destroyed, -1..-3 (residues 4..6) means some
    // created; +2/+3 cannot arise from one deletion per symbol.
    auto classify = [](uint64_t r) {
        if (r == 0) return 0;
        if (r == 1) return 1;
        if (r >= 4) return 2;
        return -1;
    };
    int sig0000 = classify(dv0000);
    int sig1111 = classify(dv1111);
    if (sig0000 < 0 || sig1111 < 0) {
        throw DecodeFailure("decode: occurrence counts inconsistent with two deletions");
    }
    if (sig0000 == 1 && sig1111 == 1) return rep(m110011(), "mixed/110011");
    if (sig0000 == 1 && sig1111 == 0) return rep(m1111(), "mixed/1111");
    if (sig0000 == 0 && sig1111 == 1) return rep(m0000(), "mixed/0000");
    if (sig0000 == 2 && sig1111 == 0) return rep(m1111(), "mixed/1111");
    if (sig0000 == 0 && sig1111 == 2) return rep(m0000(), "mixed/0000");
    if (sig0000 != sig1111) {
        // destroyed on one side plus created on the other needs the same
        // deletion to be both isolated and inside a long run
        throw DecodeFailure("decode: counter pattern admits no deletion scenario");
    }
    if (sig0000 == 2) { // both created: an isolated one and an isolated zero
        if (four) {
            if (dv11011 == 0) return rep(m11011(), "mixed/11011");
            return rep(m110011(), "mixed/110011");
        }
        if (dv110011 == 0) return rep(m110011(), "mixed/110011");
        return finish_run_recovery(y, p, t, false, "mixed/tau+1111");
    }
    // both balanced; a lone disturbed 110011 pins the deletions away from
    // every 0000 window
    if (dv110011 != 0) return rep(m0000(), "mixed/0000");
    // full cancellation is possible on either side, but never on two of the
    // three markers at once: take the majority
    std::map<BitString, int> votes;
    for (const Marker* w : {&m0000(), &m1111(), &m110011()}) {
        try {
            ++votes[repair_via_marker(y, *w, p, t, y, 2)];
        } catch (const DecodeFailure&) {
        }
    }
    for (const auto& [word, count] : votes) {
        if (count >= 2) return {word, "mixed/majority"};
    }
    throw DecodeFailure("decode: no two repairs agree");
}

BitString oracle_decode(const BitString& y, const CodeParams& p, const ConstraintTargets& t) {
    if (y.size() + 2 != p.n) {
        throw std::invalid_argument("oracle_decode: received word must have length n - 2");
    }
    std::vector<BitString> hits;
    for (const BitString& z : insertion_ball(y, 2)) {
        if (is_member(z, p, t).ok) hits.push_back(z);
    }
    if (hits.empty()) throw DecodeFailure("oracle decode: not a valid corruption of any codeword");
    if (hits.size() > 1) throw CollisionError(hits[0].str(), hits[1].str());
    return hits[0];
}

namespace {

nlohmann::ordered_json params_to_json(const CodeParams& p, const ConstraintTargets& t) {
    nlohmann::ordered_json j;
    j["n"] = p.n;
    j["s"] = p.s;
    j["construction"] = construction_to_int(p.construction);
    j["q1"] = p.q1;
    j["N1"] = p.N1;
    j["r1_paper"] = p.r1_formula;
    j["r1_impl"] = p.r1_impl;
    j["Q"] = p.Q;
    j["q2"] = p.q2;
    j["N2"] = p.N2;
    j["r2_paper"] = p.r2_formula;
    j["r2_impl"] = p.r2_impl;
    j["c"] = t.c;
    j["a_0000"] = t.a_0000;
    j["a_1111"] = t.a_1111;
    j["a_110011"] = t.a_110011;
    j["a_11011"] = t.a_11011;
    j["b"] = t.b;
    j["family_key"] = p.family_key();
    return j;
}

} // namespace

std::string params_json(const CodeParams& p, const ConstraintTargets& t) {
    return params_to_json(p, t).dump();
}

std::string codebook_header_json(const CodeParams& p, const ConstraintTargets& t,
                                 std::size_t size) {
    nlohmann::ordered_json j = params_to_json(p, t);
    j["size"] = size;
    return j.dump();
}

CodebookHeader parse_codebook_header(const std::string& line) {
    nlohmann::ordered_json j = nlohmann::ordered_json::parse(line);
    CodebookHeader h;
    h.n = j.at("n").get<std::size_t>();
    h.s = j.at("s").get<unsigned>();
    h.construction = construction_from_int(j.at("construction").get<int>());
    auto c = j.at("c").get<std::vector<uint64_t>>();
    if (c.size() != 6) {
        throw std::invalid_argument("codebook header: counter vector must have six entries");
    }
    std::copy(c.begin(), c.end(), h.targets.c.begin());
    h.targets.a_0000 = j.at("a_0000").get<std::vector<uint64_t>>();
    h.targets.a_1111 = j.at("a_1111").get<std::vector<uint64_t>>();
    h.targets.a_110011 = j.at("a_110011").get<std::vector<uint64_t>>();
    h.targets.a_11011 = j.at("a_11011").get<std::vector<uint64_t>>();
    h.targets.b = j.at("b").get<uint64_t>();
    h.size = j.value("size", std::size_t{0}); // plain params output carries no size
    h.family_key = j.at("family_key").get<std::string>();
    return h;
}

} // namespace delcode
