#ifndef LOGIMAP_ERROR_HPP
#define LOGIMAP_ERROR_HPP

#include <stdexcept>
#include <string>

namespace logimap {

/// Base of every error thrown by the library.
class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bad user-supplied parameters (non-prime base, exponent < 1, ...).
class invalid_argument : public error {
public:
    using error::error;
};

class not_prime : public invalid_argument {
public:
    explicit not_prime(unsigned long long p)
        : invalid_argument("base " + std::to_string(p) + " is not prime") {}
};

class invalid_exponent : public invalid_argument {
public:
    explicit invalid_exponent(long long n)
        : invalid_argument("exponent " + std::to_string(n) + " must be >= 1") {}
};

class modulus_too_wide : public invalid_argument {
public:
    using invalid_argument::invalid_argument;
};

class not_base3 : public invalid_argument {
public:
    explicit not_base3(unsigned p)
        : invalid_argument("closed-form law needs p = 3, got p = " + std::to_string(p)) {}
};

class mu_divisible_by_3 : public invalid_argument {
public:
    mu_divisible_by_3() : invalid_argument("mu must not be divisible by 3") {}
};

/// Input violates the hypothesis of a checker (the tuple is skipped, not a violation).
class precondition_unmet : public invalid_argument {
public:
    using invalid_argument::invalid_argument;
};

/// A configured resource cap was exceeded.
class cap_exceeded : public error {
public:
    using error::error;
};

class state_space_too_large : public cap_exceeded {
public:
    state_space_too_large(unsigned long long states, unsigned long long cap)
        : cap_exceeded("state space of " + std::to_string(states) + " exceeds cap " + std::to_string(cap)) {}
};

class degree_cap_exceeded : public cap_exceeded {
public:
    degree_cap_exceeded(unsigned reps, unsigned cap_log2)
        : cap_exceeded("composition depth " + std::to_string(reps) + " exceeds degree cap 2^" +
                       std::to_string(cap_log2)) {}
};

} // namespace logimap

#endif
