#include "delcode/bitseq.hpp"

#include <algorithm>
#include <stdexcept>

namespace delcode {

BitString::BitString(std::vector<uint8_t> bits) : bits_(std::move(bits)) {
    for (uint8_t b : bits_) {
        if (b > 1) throw std::invalid_argument("BitString: bits must be 0 or 1");
    }
}

BitString::BitString(std::initializer_list<int> bits) {
    bits_.reserve(bits.size());
    for (int b : bits) {
        if (b != 0 && b != 1) throw std::invalid_argument("BitString: bits must be 0 or 1");
        bits_.push_back(static_cast<uint8_t>(b));
    }
}

BitString BitString::from_string(std::string_view text) {
    if (text == "-") return BitString{};
    BitString out;
    out.bits_.reserve(text.size());
    for (char c : text) {
        if (c != '0' && c != '1') {
            throw std::invalid_argument("BitString::from_string: invalid character '" +
                                        std::string(1, c) + "'");
        }
        out.bits_.push_back(static_cast<uint8_t>(c - '0'));
    }
    return out;
}

std::string BitString::str() const {
    if (bits_.empty()) return "-";
    std::string out;
    out.reserve(bits_.size());
    for (uint8_t b : bits_) out.push_back(static_cast<char>('0' + b));
    return out;
}

void BitString::push_back(int bit) {
    if (bit != 0 && bit != 1) throw std::invalid_argument("BitString::push_back: bit must be 0 or 1");
    bits_.push_back(static_cast<uint8_t>(bit));
}

void BitString::append(const BitString& other) {
    bits_.insert(bits_.end(), other.bits_.begin(), other.bits_.end());
}

BitString BitString::slice(std::size_t pos, std::size_t len) const {
    if (pos > bits_.size() || len > bits_.size() - pos) {
        throw std::out_of_range("BitString::slice: range outside sequence");
    }
    BitString out;
    out.bits_.assign(bits_.begin() + static_cast<std::ptrdiff_t>(pos),
                     bits_.begin() + static_cast<std::ptrdiff_t>(pos + len));
    return out;
}

BitString BitString::with_insertion(std::size_t pos, int bit) const {
    if (pos > bits_.size()) throw std::out_of_range("BitString::with_insertion: position outside sequence");
    if (bit != 0 && bit != 1) throw std::invalid_argument("BitString::with_insertion: bit must be 0 or 1");
    BitString out = *this;
    out.bits_.insert(out.bits_.begin() + static_cast<std::ptrdiff_t>(pos), static_cast<uint8_t>(bit));
    return out;
}

BitString BitString::with_deletion(std::size_t pos) const {
    if (pos >= bits_.size()) throw std::out_of_range("BitString::with_deletion: position outside sequence");
    BitString out = *this;
    out.bits_.erase(out.bits_.begin() + static_cast<std::ptrdiff_t>(pos));
    return out;
}

std::size_t BitString::count_ones() const {
    return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), uint8_t{1}));
}

std::strong_ordering operator<=>(const BitString& a, const BitString& b) {
    if (a.bits_.size() != b.bits_.size()) return a.bits_.size() <=> b.bits_.size();
    return std::lexicographical_compare_three_way(a.bits_.begin(), a.bits_.end(),
                                                  b.bits_.begin(), b.bits_.end());
}

Marker make_marker(std::string_view text) {
    Marker w{BitString::from_string(text)};
    if (w.pattern.empty()) throw std::invalid_argument("make_marker: empty pattern");
    if (w.pattern.size() > 9) throw std::invalid_argument("make_marker: pattern longer than 9");
    return w;
}

BitString delete2(const BitString& x, DeletionPair d) {
    if (d.i1 < 1 || d.i2 <= d.i1 || d.i2 > x.size()) {
        throw std::invalid_argument("delete2: need 1 <= i1 < i2 <= n");
    }
    BitString out;
    for (std::size_t i = 1; i <= x.size(); ++i) {
        if (i == d.i1 || i == d.i2) continue;
        out.push_back(x[i - 1]);
    }
    return out;
}

std::set<BitString> deletion_ball2(const BitString& x) {
    if (x.size() < 2) throw std::invalid_argument("deletion_ball2: sequence shorter than 2");
    std::set<BitString> ball;
    for (std::size_t i1 = 1; i1 < x.size(); ++i1) {
        for (std::size_t i2 = i1 + 1; i2 <= x.size(); ++i2) {
            ball.insert(delete2(x, {i1, i2}));
        }
    }
    return ball;
}

std::set<BitString> insertion_ball(const BitString& y, unsigned t) {
    if (t > 2) throw std::invalid_argument("insertion_ball: at most two insertions");
    std::set<BitString> out;
    if (t == 0) {
        out.insert(y);
        return out;
    }
    for (std::size_t pos = 0; pos <= y.size(); ++pos) {
        for (int bit : {0, 1}) {
            BitString z = y.with_insertion(pos, bit);
            if (t == 1) {
                out.insert(std::move(z));
            } else {
                auto inner = insertion_ball(z, 1);
                out.insert(inner.begin(), inner.end());
            }
        }
    }
    return out;
}

std::vector<std::size_t> occurrences(const BitString& x, const Marker& w) {
    std::vector<std::size_t> starts;
    if (w.size() > x.size()) return starts;
    for (std::size_t i = 0; i + w.size() <= x.size(); ++i) {
        bool match = true;
        for (std::size_t j = 0; j < w.size(); ++j) {
            if (x[i + j] != w.pattern[j]) {
                match = false;
                break;
            }
        }
        if (match) starts.push_back(i + 1);
    }
    return starts;
}

std::size_t count_occurrences(const BitString& x, const Marker& w) {
    return occurrences(x, w).size();
}

SymbolCounts count_symbols(const BitString& x) {
    SymbolCounts c;
    c.ones = x.count_ones();
    c.zeros = x.size() - c.ones;
    return c;
}

Segmentation segment_by_marker(const BitString& x, const Marker& w) {
    Segmentation seg;
    seg.marker = w;
    seg.starts = occurrences(x, w);
    const auto& starts = seg.starts;
    if (starts.empty()) {
        seg.segments.push_back(x);
        seg.max_gap = x.size();
        return seg;
    }
    // prefix before the first occurrence
    seg.segments.push_back(x.slice(0, starts[0] - 1));
    for (std::size_t i = 1; i < starts.size(); ++i) {
        std::size_t prev_end = starts[i - 1] - 1 + w.size(); // 0-based one past occurrence i-1
        std::size_t cur_begin = starts[i] - 1;
        if (cur_begin <= prev_end) {
            seg.segments.push_back(BitString{}); // overlapping or adjacent occurrences
        } else {
            seg.segments.push_back(x.slice(prev_end, cur_begin - prev_end));
        }
    }
    std::size_t last_end = starts.back() - 1 + w.size();
    seg.segments.push_back(x.slice(last_end, x.size() - last_end));
    for (const auto& s : seg.segments) seg.max_gap = std::max(seg.max_gap, s.size());
    return seg;
}

std::size_t max_gap(const BitString& x, const Marker& w) {
    return segment_by_marker(x, w).max_gap;
}

RunProfile run_profile(const BitString& x) {
    RunProfile p;
    std::size_t i = 0;
    while (i < x.size()) {
        std::size_t j = i;
        while (j < x.size() && x[j] == x[i]) ++j;
        std::size_t len = j - i;
        p.tau = std::max(p.tau, len);
        if (x[i] == 1) {
            p.tau1.push_back(len);
            if (len >= 2) p.tau_ge2.push_back(len);
        }
        i = j;
    }
    return p;
}

uint64_t balance_sum(const BitString& x, unsigned s) {
    if (s < 1) throw std::invalid_argument("balance_sum: s must be at least 1");
    RunProfile p = run_profile(x);
    uint64_t sum = 0;
    for (std::size_t k = 0; k < p.tau1.size(); k += 2) sum += p.tau1[k];
    return sum % (s + 1);
}

bool is_subsequence(const BitString& shorter, const BitString& longer) {
    std::size_t i = 0;
    for (std::size_t j = 0; j < longer.size() && i < shorter.size(); ++j) {
        if (longer[j] == shorter[i]) ++i;
    }
    return i == shorter.size();
}

namespace {

// All position sets (1-indexed, increasing) whose deletion from x gives y.
std::vector<std::vector<std::size_t>> realizations(const BitString& x, const BitString& y) {
    std::vector<std::vector<std::size_t>> out;
    std::size_t t = x.size() - y.size();
    if (t == 1) {
        for (std::size_t i = 1; i <= x.size(); ++i) {
            if (x.with_deletion(i - 1) == y) out.push_back({i});
        }
    } else {
        for (std::size_t i1 = 1; i1 < x.size(); ++i1) {
            for (std::size_t i2 = i1 + 1; i2 <= x.size(); ++i2) {
                if (delete2(x, {i1, i2}) == y) out.push_back({i1, i2});
            }
        }
    }
    return out;
}

} // namespace

MarkerFate is_preserved(const BitString& x, const BitString& y, const Marker& w) {
    std::size_t t = x.size() - y.size();
    if (y.size() >= x.size() || t > 2) {
        throw std::invalid_argument("is_preserved: y must be shorter than x by one or two");
    }
    auto tuples = realizations(x, y);
    if (tuples.empty()) throw std::invalid_argument("is_preserved: y is not a deletion result of x");

    auto x_occ = occurrences(x, w);
    auto y_occ = occurrences(y, w);

    bool destroyed = x_occ.size() > y_occ.size();
    bool created = y_occ.size() > x_occ.size();

    // x-occurrence survives a tuple when no deleted index falls inside it.
    for (std::size_t start : x_occ) {
        if (destroyed) break;
        bool survives_somewhere = false;
        for (const auto& tup : tuples) {
            bool hit = false;
            for (std::size_t idx : tup) {
                if (idx >= start && idx < start + w.size()) {
                    hit = true;
                    break;
                }
            }
            if (!hit) {
                survives_somewhere = true;
                break;
            }
        }
        if (!survives_somewhere) destroyed = true;
    }

    // y-occurrence is inherited by a tuple when its preimage under that tuple
    // is a contiguous window of x, i.e. no deleted index lands strictly
    // inside the window.
    for (std::size_t ystart : y_occ) {
        if (created) break;
        bool inherited_somewhere = false;
        for (const auto& tup : tuples) {
            // map y-positions [ystart, ystart + |w|) back to x-positions
            std::vector<std::size_t> pre;
            pre.reserve(w.size());
            std::size_t shift = 0;
            std::size_t k = 0;
            for (std::size_t ypos = ystart; ypos < ystart + w.size(); ++ypos) {
                while (k < tup.size() && tup[k] <= ypos + shift) {
                    ++shift;
                    ++k;
                }
                pre.push_back(ypos + shift);
            }
            if (pre.back() - pre.front() + 1 == w.size()) {
                inherited_somewhere = true;
                break;
            }
        }
        if (!inherited_somewhere) created = true;
    }

    if (destroyed && created) return MarkerFate::both;
    if (destroyed) return MarkerFate::destroyed;
    if (created) return MarkerFate::created;

    // Equal counts and no unavoidable damage.  Preservation further demands
    // the occurrences pair up in order: occurrence i of y must be occurrence
    // i of x carried over intact by some realization, so every surviving
    // occurrence keeps both its window and its rank.  A deletion pattern
    // that destroys one occurrence while minting another elsewhere fails
    // this pairing and counts as damage on both sides.
    for (std::size_t i = 0; i < x_occ.size(); ++i) {
        std::size_t sx = x_occ[i];
        std::size_t sy = y_occ[i];
        bool matched = false;
        for (const auto& tup : tuples) {
            bool hit = false;
            std::size_t before = 0;
            for (std::size_t idx : tup) {
                if (idx >= sx && idx < sx + w.size()) hit = true;
                if (idx < sx) ++before;
            }
            if (!hit && sy == sx - before) {
                matched = true;
                break;
            }
        }
        if (!matched) return MarkerFate::both;
    }
    return MarkerFate::preserved;
}

} // namespace delcode
