#ifndef LOGIMAP_RING_HPP
#define LOGIMAP_RING_HPP

// Exact arithmetic of the logistic map f(x) = mu*x*(x+1) mod p^n.
//
// Residues live in 64-bit words. make_modulus accepts any p^n < 2^63, so a
// product of two residues always fits in unsigned __int128 and never wraps.
// Values that are not reduced (eval_f_unreduced, compose_poly, valuations of
// differences) use boost::multiprecision::cpp_int.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <ostream>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "logimap/error.hpp"

namespace logimap {

using big_int = boost::multiprecision::cpp_int;
using residue = std::uint64_t;

/// Largest modulus representable by the word path (exclusive bound 2^63).
inline constexpr std::uint64_t max_word_modulus = std::uint64_t{1} << 63;

namespace detail {

inline bool is_prime_trial(std::uint64_t p) noexcept {
    if (p < 2) return false;
    if (p < 4) return true;
    if (p % 2 == 0) return false;
    for (std::uint64_t d = 3; d <= p / d; d += 2)
        if (p % d == 0) return false;
    return true;
}

inline residue mul_mod(residue a, residue b, residue m) noexcept {
    return static_cast<residue>(static_cast<unsigned __int128>(a) * b % m);
}

} // namespace detail

class ring_modulus;
inline ring_modulus make_modulus(long long p, long long n);

/// The ring Z_{p^n}.
class ring_modulus {
public:
    [[nodiscard]] unsigned p() const noexcept { return p_; }
    [[nodiscard]] unsigned n() const noexcept { return n_; }
    [[nodiscard]] residue value() const noexcept { return value_; }

    /// Reduces an arbitrary non-negative integer into the ring.
    [[nodiscard]] residue reduce(std::uint64_t x) const noexcept { return x % value_; }

    /// True iff x is in H_{p^n} = { x : x mod p = 0 }.
    [[nodiscard]] bool in_h(residue x) const noexcept { return x % p_ == 0; }

    /// Number of elements of H_{p^n}, i.e. p^(n-1).
    [[nodiscard]] residue h_size() const noexcept { return value_ / p_; }

    friend bool operator==(const ring_modulus&, const ring_modulus&) = default;

private:
    friend ring_modulus make_modulus(long long p, long long n);
    ring_modulus(unsigned p, unsigned n, residue v) : p_(p), n_(n), value_(v) {}

    unsigned p_;
    unsigned n_;
    residue value_;
};

/// Builds Z_{p^n}. Throws not_prime, invalid_exponent, or modulus_too_wide
/// when p^n does not fit the 63-bit word path.
inline ring_modulus make_modulus(long long p, long long n) {
    if (p < 2 || !detail::is_prime_trial(static_cast<std::uint64_t>(p)))
        throw not_prime(static_cast<unsigned long long>(p < 0 ? 0 : p));
    if (n < 1) throw invalid_exponent(n);
    std::uint64_t v = 1;
    const auto base = static_cast<std::uint64_t>(p);
    for (long long i = 0; i < n; ++i) {
        if (v > (max_word_modulus - 1) / base)
            throw modulus_too_wide(std::to_string(p) + "^" + std::to_string(n) + " does not fit below 2^63");
        v *= base;
    }
    return ring_modulus(static_cast<unsigned>(p), static_cast<unsigned>(n), v);
}

/// One application of the map: mu*x*(x+1) mod p^n. Inputs must be reduced.
inline residue step(residue x, residue mu, const ring_modulus& m) noexcept {
    const residue mod = m.value();
    const residue x1 = x + 1 == mod ? 0 : x + 1;
    return detail::mul_mod(detail::mul_mod(mu, x, mod), x1, mod);
}

/// f^k(x0); k = 0 returns x0.
inline residue iterate(residue x0, residue mu, const ring_modulus& m, std::uint64_t k) noexcept {
    residue x = x0;
    for (std::uint64_t i = 0; i < k; ++i) x = step(x, mu, m);
    return x;
}

/// Same map over an arbitrary modulus held as a big integer.
inline big_int step(const big_int& x, const big_int& mu, const big_int& modulus) {
    return mu * x * (x + 1) % modulus;
}

/// F^reps(x) over the integers, F(x) = mu*x*(x+1). Size roughly doubles per rep.
inline big_int eval_f_unreduced(const big_int& x, const big_int& mu, unsigned reps) {
    big_int y = x;
    for (unsigned i = 0; i < reps; ++i) y = mu * y * (y + 1);
    return y;
}

// ---------------------------------------------------------------------------
// Polynomials with exact integer coefficients

/// Dense polynomial; coefficient i multiplies x^i. Never stores trailing zeros.
class int_poly {
public:
    int_poly() = default;
    explicit int_poly(std::vector<big_int> coeffs) : c_(std::move(coeffs)) { trim(); }

    [[nodiscard]] const std::vector<big_int>& coefficients() const noexcept { return c_; }
    [[nodiscard]] bool is_zero() const noexcept { return c_.empty(); }

    /// Degree; -1 for the zero polynomial.
    [[nodiscard]] long degree() const noexcept { return static_cast<long>(c_.size()) - 1; }

    [[nodiscard]] big_int coeff(std::size_t i) const { return i < c_.size() ? c_[i] : big_int{0}; }

    [[nodiscard]] big_int operator()(const big_int& x) const {
        big_int acc = 0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

    /// Horner evaluation reduced mod m at every step.
    [[nodiscard]] residue eval_mod(residue x, residue m) const {
        residue acc = 0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
            big_int r = *it % m;
            if (r < 0) r += m;
            acc = detail::mul_mod(acc, x % m, m);
            acc = static_cast<residue>((big_int(acc) + r) % m);
        }
        return acc;
    }

    friend int_poly operator+(const int_poly& a, const int_poly& b) {
        std::vector<big_int> out(std::max(a.c_.size(), b.c_.size()));
        for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.coeff(i) + b.coeff(i);
        return int_poly(std::move(out));
    }

    friend int_poly operator*(const int_poly& a, const int_poly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<big_int> out(a.c_.size() + b.c_.size() - 1);
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i] == 0) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
        }
        return int_poly(std::move(out));
    }

    friend int_poly operator*(const big_int& s, const int_poly& a) {
        std::vector<big_int> out(a.c_);
        for (auto& v : out) v *= s;
        return int_poly(std::move(out));
    }

    friend bool operator==(const int_poly&, const int_poly&) = default;

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }

    std::vector<big_int> c_;
};

/// Default limit on composition depth: degree 2^12.
inline constexpr unsigned default_degree_cap_log2 = 12;

/// Symbolic F^reps(x) with F(x) = mu*x*(x+1), degree 2^reps.
inline int_poly compose_poly(const big_int& mu, unsigned reps,
                             unsigned degree_cap_log2 = default_degree_cap_log2) {
    if (reps < 1) throw invalid_argument("compose_poly needs reps >= 1");
    if (reps > degree_cap_log2) throw degree_cap_exceeded(reps, degree_cap_log2);
    const int_poly x({0, 1});
    int_poly p = x;
    for (unsigned r = 0; r < reps; ++r) p = mu * (p * (p + int_poly({1})));
    return p;
}

// ---------------------------------------------------------------------------
// p-adic valuation

/// Finite(t) or Infinite (the valuation of zero).
class valuation {
public:
    static valuation finite(unsigned t) noexcept { return valuation(t); }
    static valuation infinite() noexcept { return valuation(); }

    [[nodiscard]] bool is_infinite() const noexcept { return !t_.has_value(); }
    [[nodiscard]] bool is_finite() const noexcept { return t_.has_value(); }
    /// Requires is_finite().
    [[nodiscard]] unsigned value() const { return t_.value(); }

    friend valuation operator+(valuation a, valuation b) noexcept {
        if (a.is_infinite() || b.is_infinite()) return infinite();
        return finite(*a.t_ + *b.t_);
    }

    friend bool operator==(const valuation&, const valuation&) = default;

    friend std::ostream& operator<<(std::ostream& os, const valuation& v) {
        if (v.is_infinite()) return os << "inf";
        return os << *v.t_;
    }

private:
    valuation() = default;
    explicit valuation(unsigned t) : t_(t) {}
    std::optional<unsigned> t_;
};

inline valuation p_adic_valuation(big_int a, unsigned p) {
    if (a == 0) return valuation::infinite();
    if (a < 0) a = -a;
    unsigned t = 0;
    const big_int bp = p;
    for (;;) {
        big_int q, r;
        boost::multiprecision::divide_qr(a, bp, q, r);
        if (r != 0) break;
        a = std::move(q);
        ++t;
    }
    return valuation::finite(t);
}

/// Exact p^e as a 64-bit word; throws modulus_too_wide on overflow.
inline std::uint64_t checked_pow(std::uint64_t p, unsigned e) {
    std::uint64_t v = 1;
    for (unsigned i = 0; i < e; ++i) {
        if (p != 0 && v > std::numeric_limits<std::uint64_t>::max() / p)
            throw modulus_too_wide(std::to_string(p) + "^" + std::to_string(e) + " overflows 64 bits");
        v *= p;
    }
    return v;
}

} // namespace logimap

#endif
