#ifndef DELCODE_ERRORS_HPP
#define DELCODE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace delcode {

// A structured decoder could not produce a consistent codeword.
class DecodeFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// An input violates a code constraint (gap bound, segment length, ...).
class ConstraintViolation : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Two distinct codewords share a corrupted word.  Finding one of these
// disproves two-deletion correctability for the parameterized code, so it
// carries the colliding pair for reporting.
class CollisionError : public std::runtime_error {
public:
    CollisionError(std::string first_word, std::string second_word)
        : std::runtime_error("two codewords share a corrupted word: " + first_word +
                             " and " + second_word),
          first(std::move(first_word)),
          second(std::move(second_word)) {}

    std::string first;
    std::string second;
};

} // namespace delcode

#endif
