#ifndef DELCODE_GF_HPP
#define DELCODE_GF_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

namespace delcode {

// GF(p^m) with p prime.  Elements are encoded as sum c_i * p^i for the
// polynomial representation sum c_i * x^i over GF(p); base-field elements
// are therefore exactly the encodings below p.
class Field {
public:
    static std::shared_ptr<const Field> make(uint64_t p, unsigned m);

    uint64_t p() const { return p_; }
    unsigned m() const { return m_; }
    uint64_t size() const { return size_; }     // p^m
    uint64_t alpha() const { return alpha_; }   // fixed primitive element
    bool is_base(uint64_t a) const { return a < p_; }

    uint64_t add(uint64_t a, uint64_t b) const;
    uint64_t sub(uint64_t a, uint64_t b) const;
    uint64_t neg(uint64_t a) const;
    uint64_t mul(uint64_t a, uint64_t b) const;
    uint64_t inv(uint64_t a) const;
    uint64_t pow(uint64_t a, uint64_t e) const;

private:
    Field(uint64_t p, unsigned m);

    uint64_t p_ = 0;
    unsigned m_ = 0;
    uint64_t size_ = 0;
    uint64_t modulus_ = 0; // irreducible degree-m polynomial, same encoding
    uint64_t alpha_ = 0;
};

// One symbol correction: sequence position (0-based), stored and corrected
// values.
struct Correction {
    std::size_t pos = 0;
    uint64_t old_sym = 0;
    uint64_t new_sym = 0;
};

struct CorrectionResult {
    std::vector<Correction> corrections;
    std::vector<uint64_t> corrected;
};

// Syndrome-checked code over the base field of an extension field: the
// sequence (a_0, ..., a_{k-1}) of base-field symbols must satisfy
// sum_i a_i * alpha^(e * i) == target[e'] for each listed root exponent e.
struct ComponentCode {
    std::shared_ptr<const Field> field;
    uint64_t q = 0;                   // base-field alphabet size
    std::vector<unsigned> root_exps;  // exponents of alpha defining the checks
    std::vector<uint64_t> target;     // required syndrome values

    std::size_t block_length() const { return static_cast<std::size_t>(field->size() - 1); }
    unsigned designed_distance() const { return static_cast<unsigned>(root_exps.size()) + 1; }

    std::vector<uint64_t> syndromes(std::span<const uint64_t> seq) const;
    bool matches_target(std::span<const uint64_t> seq) const;
};

// Corrects up to two substitution errors so the syndromes meet the target;
// requires four consecutive-power checks.  Returns std::nullopt when no
// correction with at most two changed positions exists.
std::optional<CorrectionResult> correct_up_to_2(const ComponentCode& code,
                                                std::span<const uint64_t> seq);

// Single-error variant; requires two checks.
std::optional<CorrectionResult> correct_up_to_1(const ComponentCode& code,
                                                std::span<const uint64_t> seq);

} // namespace delcode

#endif
