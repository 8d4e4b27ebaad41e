#include "delcode/gf.hpp"

#include <stdexcept>
#include <string>

#include "delcode/primes.hpp"

namespace delcode {

namespace {

uint64_t mulmod(uint64_t a, uint64_t b, uint64_t m) {
    return static_cast<uint64_t>((static_cast<__uint128_t>(a) * b) % m);
}

// Coefficient vector of the encoded polynomial, low degree first.
std::vector<uint64_t> decode_poly(uint64_t enc, uint64_t p, unsigned slots) {
    std::vector<uint64_t> c(slots, 0);
    for (unsigned i = 0; i < slots && enc; ++i) {
        c[i] = enc % p;
        enc /= p;
    }
    return c;
}

uint64_t encode_poly(const std::vector<uint64_t>& c, uint64_t p) {
    uint64_t enc = 0;
    for (std::size_t i = c.size(); i-- > 0;) enc = enc * p + c[i];
    return enc;
}

// a * b mod f, all monic-f polynomial arithmetic over GF(p); f has degree m.
std::vector<uint64_t> polymulmod(const std::vector<uint64_t>& a, const std::vector<uint64_t>& b,
                                 const std::vector<uint64_t>& f, uint64_t p) {
    unsigned m = static_cast<unsigned>(f.size()) - 1;
    std::vector<uint64_t> prod(2 * m - 1, 0);
    for (unsigned i = 0; i < m; ++i) {
        if (a[i] == 0) continue;
        for (unsigned j = 0; j < m; ++j) {
            if (b[j] == 0) continue;
            prod[i + j] = (prod[i + j] + mulmod(a[i], b[j], p)) % p;
        }
    }
    for (unsigned d = 2 * m - 2; d >= m; --d) {
        uint64_t c = prod[d];
        if (c == 0) continue;
        prod[d] = 0;
        for (unsigned j = 0; j < m; ++j) {
            uint64_t sub = mulmod(c, f[j], p);
            prod[d - m + j] = (prod[d - m + j] + p - sub) % p;
        }
    }
    prod.resize(m);
    return prod;
}

std::vector<uint64_t> polypowmod(std::vector<uint64_t> base, __uint128_t e,
                                 const std::vector<uint64_t>& f, uint64_t p) {
    unsigned m = static_cast<unsigned>(f.size()) - 1;
    std::vector<uint64_t> result(m, 0);
    result[0] = 1;
    while (e > 0) {
        if (e & 1) result = polymulmod(result, base, f, p);
        base = polymulmod(base, base, f, p);
        e >>= 1;
    }
    return result;
}

std::vector<uint64_t> polysub(std::vector<uint64_t> a, const std::vector<uint64_t>& b, uint64_t p) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] = (a[i] + p - b[i]) % p;
    return a;
}

bool is_zero_poly(const std::vector<uint64_t>& a) {
    for (uint64_t c : a) {
        if (c) return false;
    }
    return true;
}

unsigned poly_degree(const std::vector<uint64_t>& a) {
    for (std::size_t i = a.size(); i-- > 0;) {
        if (a[i]) return static_cast<unsigned>(i);
    }
    return 0;
}

// gcd of a (degree < m) with monic f of degree m over GF(p).
std::vector<uint64_t> polygcd_with_modulus(std::vector<uint64_t> a, const std::vector<uint64_t>& f,
                                           uint64_t p) {
    std::vector<uint64_t> r0 = f, r1 = a;
    r1.resize(f.size(), 0);
    auto mod_step = [&](std::vector<uint64_t> num, const std::vector<uint64_t>& den) {
        unsigned dd = poly_degree(den);
        uint64_t lead_inv = 1;
        { // inverse of den's leading coefficient mod p
            uint64_t lead = den[dd], e = p - 2, acc = 1, b = lead;
            while (e) {
                if (e & 1) acc = mulmod(acc, b, p);
                b = mulmod(b, b, p);
                e >>= 1;
            }
            lead_inv = acc;
        }
        while (!is_zero_poly(num) && poly_degree(num) >= dd) {
            unsigned dn = poly_degree(num);
            uint64_t factor = mulmod(num[dn], lead_inv, p);
            for (unsigned j = 0; j <= dd; ++j) {
                uint64_t sub = mulmod(factor, den[j], p);
                num[dn - dd + j] = (num[dn - dd + j] + p - sub) % p;
            }
        }
        return num;
    };
    while (!is_zero_poly(r1)) {
        std::vector<uint64_t> r2 = mod_step(r0, r1);
        r0 = std::move(r1);
        r1 = std::move(r2);
    }
    return r0;
}

// Rabin irreducibility: x^(p^m) == x mod f, and x^(p^(m/r)) - x coprime to f
// for every prime r dividing m.
bool is_irreducible(const std::vector<uint64_t>& f, uint64_t p) {
    unsigned m = static_cast<unsigned>(f.size()) - 1;
    std::vector<uint64_t> x(m, 0);
    if (m == 1) return true;
    x[1] = 1;
    __uint128_t pm = 1;
    for (unsigned i = 0; i < m; ++i) pm *= p;
    if (!is_zero_poly(polysub(polypowmod(x, pm, f, p), x, p))) return false;
    for (uint64_t r : prime_factors(m)) {
        __uint128_t pk = 1;
        for (unsigned i = 0; i < m / r; ++i) pk *= p;
        auto g = polygcd_with_modulus(polysub(polypowmod(x, pk, f, p), x, p), f, p);
        if (poly_degree(g) != 0 || is_zero_poly(g)) return false;
    }
    return true;
}

} // namespace

Field::Field(uint64_t p, unsigned m) : p_(p), m_(m) {
    if (!delcode::is_prime(p)) throw std::invalid_argument("Field: p must be prime");
    if (m < 1 || m > 8) throw std::invalid_argument("Field: m must be in [1, 8]");
    __uint128_t sz = 1;
    for (unsigned i = 0; i < m; ++i) {
        sz *= p;
        if (sz > (static_cast<__uint128_t>(1) << 62)) {
            throw std::invalid_argument("Field: p^m too large");
        }
    }
    size_ = static_cast<uint64_t>(sz);

    if (m_ > 1) {
        // smallest irreducible monic polynomial x^m + ... in encoding order
        uint64_t low_limit = size_;
        bool found = false;
        for (uint64_t low = 0; low < low_limit; ++low) {
            std::vector<uint64_t> f = decode_poly(low, p_, m_ + 1);
            f[m_] = 1;
            if (is_irreducible(f, p_)) {
                modulus_ = size_ + low;
                found = true;
                break;
            }
        }
        if (!found) throw std::logic_error("Field: no irreducible polynomial found");
    }

    auto factors = prime_factors(size_ - 1 == 0 ? 1 : size_ - 1);
    for (uint64_t a = 1; a < size_; ++a) {
        bool primitive = true;
        for (uint64_t r : factors) {
            if (size_ - 1 > 1 && pow(a, (size_ - 1) / r) == 1) {
                primitive = false;
                break;
            }
        }
        if (primitive) {
            alpha_ = a;
            break;
        }
    }
}

std::shared_ptr<const Field> Field::make(uint64_t p, unsigned m) {
    return std::shared_ptr<const Field>(new Field(p, m));
}

uint64_t Field::add(uint64_t a, uint64_t b) const {
    if (m_ == 1) return (a + b) % p_;
    uint64_t out = 0, mult = 1;
    for (unsigned i = 0; i < m_; ++i) {
        out += ((a % p_ + b % p_) % p_) * mult;
        a /= p_;
        b /= p_;
        mult *= p_;
    }
    return out;
}

uint64_t Field::neg(uint64_t a) const {
    if (m_ == 1) return (p_ - a % p_) % p_;
    uint64_t out = 0, mult = 1;
    for (unsigned i = 0; i < m_; ++i) {
        out += ((p_ - a % p_) % p_) * mult;
        a /= p_;
        mult *= p_;
    }
    return out;
}

uint64_t Field::sub(uint64_t a, uint64_t b) const {
    return add(a, neg(b));
}

uint64_t Field::mul(uint64_t a, uint64_t b) const {
    if (m_ == 1) return mulmod(a, b, p_);
    auto pa = decode_poly(a, p_, m_);
    auto pb = decode_poly(b, p_, m_);
    auto pf = decode_poly(modulus_, p_, m_ + 1);
    return encode_poly(polymulmod(pa, pb, pf, p_), p_);
}

uint64_t Field::pow(uint64_t a, uint64_t e) const {
    uint64_t result = 1, base = a;
    while (e > 0) {
        if (e & 1) result = mul(result, base);
        base = mul(base, base);
        e >>= 1;
    }
    return result;
}

uint64_t Field::inv(uint64_t a) const {
    if (a == 0) throw std::invalid_argument("Field::inv: zero has no inverse");
    return pow(a, size_ - 2);
}

std::vector<uint64_t> ComponentCode::syndromes(std::span<const uint64_t> seq) const {
    std::vector<uint64_t> out;
    out.reserve(root_exps.size());
    for (unsigned e : root_exps) {
        uint64_t root = field->pow(field->alpha(), e);
        uint64_t acc = 0, power = 1;
        for (uint64_t sym : seq) {
            acc = field->add(acc, field->mul(sym, power));
            power = field->mul(power, root);
        }
        out.push_back(acc);
    }
    return out;
}

bool ComponentCode::matches_target(std::span<const uint64_t> seq) const {
    return syndromes(seq) == target;
}

namespace {

// Shared tail: apply corrections, enforce alphabet membership, re-check.
std::optional<CorrectionResult> finish(const ComponentCode& code, std::span<const uint64_t> seq,
                                       std::vector<Correction> corrections) {
    CorrectionResult result;
    result.corrected.assign(seq.begin(), seq.end());
    for (auto& c : corrections) {
        if (!code.field->is_base(c.new_sym) || c.new_sym >= code.q) return std::nullopt;
        result.corrected[c.pos] = c.new_sym;
    }
    if (!code.matches_target(result.corrected)) return std::nullopt;
    result.corrections = std::move(corrections);
    return result;
}

// Index i in [0, len) with alpha^i == x, if any.
std::optional<std::size_t> locate(const Field& f, uint64_t x, std::size_t len) {
    uint64_t power = 1;
    for (std::size_t i = 0; i < len; ++i) {
        if (power == x) return i;
        power = f.mul(power, f.alpha());
    }
    return std::nullopt;
}

} // namespace

std::optional<CorrectionResult> correct_up_to_2(const ComponentCode& code,
                                                std::span<const uint64_t> seq) {
    if (code.root_exps != std::vector<unsigned>{1, 2, 3, 4}) {
        throw std::invalid_argument("correct_up_to_2: needs checks at alpha^1..alpha^4");
    }
    if (seq.size() > code.block_length()) {
        throw std::invalid_argument("correct_up_to_2: sequence longer than block");
    }
    const Field& f = *code.field;
    auto syn = code.syndromes(seq);
    uint64_t S1 = f.sub(code.target[0], syn[0]);
    uint64_t S2 = f.sub(code.target[1], syn[1]);
    uint64_t S3 = f.sub(code.target[2], syn[2]);
    uint64_t S4 = f.sub(code.target[3], syn[3]);

    if (S1 == 0 && S2 == 0 && S3 == 0 && S4 == 0) {
        return finish(code, seq, {});
    }

    uint64_t D = f.sub(f.mul(S1, S3), f.mul(S2, S2));
    if (D != 0) {
        // locator 1 + L1 z + L2 z^2 with roots at the inverse locators
        uint64_t Dinv = f.inv(D);
        uint64_t L1 = f.mul(f.sub(f.mul(S2, S3), f.mul(S1, S4)), Dinv);
        uint64_t L2 = f.mul(f.sub(f.mul(S2, S4), f.mul(S3, S3)), Dinv);
        if (L2 == 0) return std::nullopt;
        std::vector<std::size_t> positions;
        uint64_t alpha_inv = f.inv(f.alpha());
        uint64_t z = 1;
        for (std::size_t i = 0; i < seq.size(); ++i) {
            uint64_t val = f.add(1, f.add(f.mul(L1, z), f.mul(L2, f.mul(z, z))));
            if (val == 0) positions.push_back(i);
            z = f.mul(z, alpha_inv);
        }
        if (positions.size() != 2) return std::nullopt;
        uint64_t X1 = f.pow(f.alpha(), positions[0]);
        uint64_t X2 = f.pow(f.alpha(), positions[1]);
        uint64_t det = f.mul(f.mul(X1, X2), f.sub(X2, X1));
        uint64_t det_inv = f.inv(det);
        uint64_t Y1 = f.mul(f.sub(f.mul(S1, f.mul(X2, X2)), f.mul(S2, X2)), det_inv);
        uint64_t Y2 = f.mul(f.sub(f.mul(S2, X1), f.mul(S1, f.mul(X1, X1))), det_inv);
        if (Y1 == 0 || Y2 == 0) return std::nullopt;
        std::vector<Correction> fixes;
        uint64_t ys[2] = {Y1, Y2};
        for (int k = 0; k < 2; ++k) {
            Correction c;
            c.pos = positions[k];
            c.old_sym = seq[c.pos];
            c.new_sym = f.add(c.old_sym, ys[k]);
            fixes.push_back(c);
        }
        return finish(code, seq, std::move(fixes));
    }

    // weight one: S_j = Y X^j
    if (S1 == 0) return std::nullopt;
    uint64_t X = f.mul(S2, f.inv(S1));
    if (X == 0) return std::nullopt;
    if (f.mul(S2, X) != S3 || f.mul(S3, X) != S4) return std::nullopt;
    uint64_t Y = f.mul(S1, f.inv(X));
    auto pos = locate(f, X, seq.size());
    if (!pos) return std::nullopt;
    Correction c;
    c.pos = *pos;
    c.old_sym = seq[c.pos];
    c.new_sym = f.add(c.old_sym, Y);
    return finish(code, seq, {c});
}

std::optional<CorrectionResult> correct_up_to_1(const ComponentCode& code,
                                                std::span<const uint64_t> seq) {
    if (code.root_exps != std::vector<unsigned>{0, 1}) {
        throw std::invalid_argument("correct_up_to_1: needs checks at alpha^0 and alpha^1");
    }
    if (seq.size() > code.block_length()) {
        throw std::invalid_argument("correct_up_to_1: sequence longer than block");
    }
    const Field& f = *code.field;
    auto syn = code.syndromes(seq);
    uint64_t E0 = f.sub(code.target[0], syn[0]); // error magnitude
    uint64_t E1 = f.sub(code.target[1], syn[1]); // magnitude times locator

    if (E0 == 0 && E1 == 0) return finish(code, seq, {});
    if (E0 == 0 || E1 == 0) return std::nullopt;
    uint64_t X = f.mul(E1, f.inv(E0));
    auto pos = locate(f, X, seq.size());
    if (!pos) return std::nullopt;
    Correction c;
    c.pos = *pos;
    c.old_sym = seq[c.pos];
    c.new_sym = f.add(c.old_sym, E0);
    return finish(code, seq, {c});
}

} // namespace delcode
