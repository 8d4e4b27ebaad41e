#include "delcode/hashing.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <fstream>
#include <stdexcept>

#include "delcode/errors.hpp"
#include "delcode/primes.hpp"

namespace delcode {

uint64_t f_index(const BitString& v, unsigned s) {
    if (v.size() > s) throw std::invalid_argument("f_index: sequence longer than s");
    if (s > 62) throw std::invalid_argument("f_index: s too large for 64-bit packing");
    uint64_t key = 1;
    for (std::size_t i = 0; i < v.size(); ++i) key = (key << 1) | static_cast<uint64_t>(v[i]);
    return key;
}

namespace {

// f_index interpreted directly on packed keys: length = bit_width - 1,
// content = low bits.  Deleting the bit at 0-based index i of the content.
uint64_t packed_delete(uint64_t key, unsigned i) {
    unsigned len = static_cast<unsigned>(std::bit_width(key)) - 1;
    uint64_t content = key ^ (uint64_t{1} << len);
    uint64_t high = content >> (len - i);
    uint64_t low = content & ((uint64_t{1} << (len - 1 - i)) - 1);
    return (uint64_t{1} << (len - 1)) | (high << (len - 1 - i)) | low;
}

unsigned packed_length(uint64_t key) {
    return static_cast<unsigned>(std::bit_width(key)) - 1;
}

// Distinct packed keys reachable from key by at most two deletions,
// including key itself.
void packed_descendants(uint64_t key, std::vector<uint64_t>& out) {
    out.clear();
    out.push_back(key);
    unsigned len = packed_length(key);
    for (unsigned i = 0; i < len; ++i) {
        uint64_t one = packed_delete(key, i);
        out.push_back(one);
        for (unsigned j = 0; j + 1 < len; ++j) out.push_back(packed_delete(one, j));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
}

} // namespace

uint32_t HashFamily::color_of(const BitString& v) const {
    uint64_t key = f_index(v, s);
    return table[key];
}

HashFamily build_hash_family(unsigned s) {
    if (s > 16) throw std::invalid_argument("build_hash_family: s above 16 is not tractable");
    HashFamily fam;
    fam.s = s;
    const uint64_t limit = uint64_t{1} << (s + 1); // keys live in [1, 2^(s+1))
    fam.table.assign(limit, 0);

    // For each already-colored key u, bucket[z] records u for every z
    // reachable from u by at most two deletions.  A new key v conflicts with
    // u exactly when their descendant sets intersect, so scanning v's own
    // descendants' buckets finds every conflict.
    std::vector<std::vector<uint32_t>> bucket(limit);
    std::vector<uint32_t> taken_epoch; // taken_epoch[c] == key marks color c+1 as used
    std::vector<uint64_t> desc;

    for (uint64_t key = 1; key < limit; ++key) {
        packed_descendants(key, desc);
        for (uint64_t z : desc) {
            for (uint32_t u : bucket[z]) {
                uint32_t c = fam.table[u];
                if (c - 1 >= taken_epoch.size()) taken_epoch.resize(c, 0);
                taken_epoch[c - 1] = static_cast<uint32_t>(key);
            }
        }
        uint32_t color = 1;
        while (color - 1 < taken_epoch.size() && taken_epoch[color - 1] == key) ++color;
        fam.table[key] = color;
        fam.colors = std::max(fam.colors, color);
        for (uint64_t z : desc) bucket[z].push_back(static_cast<uint32_t>(key));
    }
    return fam;
}

namespace {
constexpr char kFamilyMagic[4] = {'D', 'C', 'H', 'F'};
constexpr uint32_t kFamilyVersion = 1;
} // namespace

void HashFamily::save(const std::string& path) const {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("HashFamily::save: cannot open " + path);
    out.write(kFamilyMagic, 4);
    uint32_t header[4] = {kFamilyVersion, s, colors, static_cast<uint32_t>(table.size())};
    out.write(reinterpret_cast<const char*>(header), sizeof(header));
    out.write(reinterpret_cast<const char*>(table.data()),
              static_cast<std::streamsize>(table.size() * sizeof(uint32_t)));
    if (!out) throw std::runtime_error("HashFamily::save: write failed for " + path);
}

HashFamily HashFamily::load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("HashFamily::load: cannot open " + path);
    char magic[4];
    in.read(magic, 4);
    if (!in || std::memcmp(magic, kFamilyMagic, 4) != 0) {
        throw std::runtime_error("HashFamily::load: bad magic in " + path);
    }
    uint32_t header[4];
    in.read(reinterpret_cast<char*>(header), sizeof(header));
    if (!in || header[0] != kFamilyVersion) {
        throw std::runtime_error("HashFamily::load: unsupported version in " + path);
    }
    HashFamily fam;
    fam.s = header[1];
    fam.colors = header[2];
    fam.table.resize(header[3]);
    in.read(reinterpret_cast<char*>(fam.table.data()),
            static_cast<std::streamsize>(fam.table.size() * sizeof(uint32_t)));
    if (!in) throw std::runtime_error("HashFamily::load: truncated file " + path);
    if (fam.table.size() != (uint64_t{1} << (fam.s + 1))) {
        throw std::runtime_error("HashFamily::load: table size inconsistent in " + path);
    }
    return fam;
}

BitString invert_segment(const BitString& y, unsigned t, uint32_t color,
                         const HashFamily& fam) {
    if (y.size() + t > fam.s) {
        throw std::invalid_argument("invert_segment: recovered length would exceed s");
    }
    std::vector<BitString> hits;
    for (const BitString& z : insertion_ball(y, t)) {
        if (fam.color_of(z) == color) hits.push_back(z);
    }
    if (hits.empty()) {
        throw DecodeFailure("invert_segment: no supersequence carries the stored color");
    }
    if (hits.size() > 1) {
        // the coloring guarantees distinct colors on confusable sequences
        throw std::logic_error("invert_segment: color collision among supersequences");
    }
    return hits.front();
}

RunHash make_run_hash(unsigned s) {
    if (s < 1) throw std::invalid_argument("make_run_hash: s must be at least 1");
    RunHash rh;
    rh.s = s;
    rh.Q = next_prime_geq(static_cast<uint64_t>(s) + 2);
    return rh;
}

std::pair<uint64_t, uint64_t> run_hash_entries(const RunHash& rh,
                                               const std::vector<std::size_t>& entries) {
    if (entries.size() > rh.s) {
        throw std::invalid_argument("run_hash: more run entries than the padded length s");
    }
    uint64_t sum = 0, weighted = 0;
    for (std::size_t i = 0; i < entries.size(); ++i) {
        if (entries[i] >= rh.Q) {
            throw std::invalid_argument("run_hash: run length " + std::to_string(entries[i]) +
                                        " cannot embed below modulus " + std::to_string(rh.Q));
        }
        // the zero-padding to length s contributes nothing to either row
        sum = (sum + entries[i]) % rh.Q;
        weighted = (weighted + (i + 1) * entries[i]) % rh.Q;
    }
    return {sum, weighted};
}

uint64_t run_hash_entries_packed(const RunHash& rh, const std::vector<std::size_t>& entries) {
    auto [sum, weighted] = run_hash_entries(rh, entries);
    return sum * rh.Q + weighted;
}

std::pair<uint64_t, uint64_t> run_hash(const BitString& v, const RunHash& rh) {
    if (v.size() > rh.s) throw std::invalid_argument("run_hash: sequence longer than s");
    return run_hash_entries(rh, run_profile(v).tau_ge2);
}

uint64_t run_hash_packed(const BitString& v, const RunHash& rh) {
    auto [sum, weighted] = run_hash(v, rh);
    return sum * rh.Q + weighted;
}

namespace {

template <typename SymbolFn>
HashSeq hash_segments(const BitString& x, const Marker& w, unsigned s, SymbolFn&& symbol) {
    Segmentation seg = segment_by_marker(x, w);
    HashSeq out;
    out.marker = w;
    out.symbols.reserve(seg.segments.size());
    for (std::size_t i = 0; i < seg.segments.size(); ++i) {
        const BitString& piece = seg.segments[i];
        if (piece.size() > s) {
            throw ConstraintViolation("segment " + std::to_string(i + 1) + " of the " + w.str() +
                                      " decomposition has length " + std::to_string(piece.size()) +
                                      ", above the bound " + std::to_string(s));
        }
        out.symbols.push_back(symbol(piece));
    }
    return out;
}

} // namespace

HashSeq hash_sequence(const BitString& x, const Marker& w, const HashFamily& fam) {
    return hash_segments(x, w, fam.s,
                         [&](const BitString& piece) { return uint64_t{fam.color_of(piece)}; });
}

HashSeq hash_sequence(const BitString& x, const Marker& w, const RunHash& rh) {
    return hash_segments(x, w, rh.s,
                         [&](const BitString& piece) { return run_hash_packed(piece, rh); });
}

HashSeq hash_sequence_index(const BitString& x, const Marker& w, unsigned s) {
    return hash_segments(x, w, s, [&](const BitString& piece) { return f_index(piece, s); });
}

} // namespace delcode
