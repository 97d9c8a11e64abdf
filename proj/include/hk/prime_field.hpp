#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace hk {

class field_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class division_by_zero : public field_error {
public:
    division_by_zero() : field_error("inverse of zero in prime field") {}
};

namespace detail {

/* Deterministic Miller-Rabin; the bases 2, 3, 5, 7 are exact below 3.2e9. */
constexpr std::uint64_t pow_mod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    b %= m;
    while (e) {
        if (e & 1) r = r * b % m;
        b = b * b % m;
        e >>= 1;
    }
    return r;
}

constexpr bool is_prime_u32(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t s : {2u, 3u, 5u, 7u, 11u, 13u}) {
        if (n % s == 0) return n == s;
    }
    std::uint64_t d = n - 1;
    int r = 0;
    while ((d & 1) == 0) { d >>= 1; ++r; }
    for (std::uint64_t a : {2u, 3u, 5u, 7u}) {
        std::uint64_t x = pow_mod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < r; ++i) {
            x = x * x % n;
            if (x == n - 1) { composite = false; break; }
        }
        if (composite) return false;
    }
    return true;
}

} // namespace detail

/// The prime field Z/p for a word-sized prime chosen at run time.
///
/// Raw residues are plain `std::uint32_t` values in [0, p); the hot loops of
/// the elimination code work on those directly. `FieldElement` is the
/// checked value type used at API boundaries.
class PrimeField {
public:
    using value_type = std::uint32_t;

    explicit PrimeField(std::uint64_t p) : p_(static_cast<value_type>(p)) {
        if (p >= (std::uint64_t{1} << 31) || !detail::is_prime_u32(p))
            throw field_error("not a prime below 2^31: " + std::to_string(p));
    }

    value_type characteristic() const noexcept { return p_; }

    value_type reduce(std::int64_t v) const noexcept {
        std::int64_t r = v % static_cast<std::int64_t>(p_);
        return static_cast<value_type>(r < 0 ? r + p_ : r);
    }
    value_type add(value_type a, value_type b) const noexcept {
        std::uint32_t s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    value_type sub(value_type a, value_type b) const noexcept {
        return a >= b ? a - b : a + p_ - b;
    }
    value_type neg(value_type a) const noexcept { return a == 0 ? 0 : p_ - a; }
    value_type mul(value_type a, value_type b) const noexcept {
        return static_cast<value_type>(std::uint64_t{a} * b % p_);
    }
    value_type pow(value_type a, std::uint64_t e) const noexcept {
        return static_cast<value_type>(detail::pow_mod(a, e, p_));
    }
    value_type inv(value_type a) const {
        if (a % p_ == 0) throw division_by_zero();
        // extended Euclid
        std::int64_t t = 0, nt = 1, r = p_, nr = a;
        while (nr != 0) {
            std::int64_t q = r / nr;
            std::int64_t tmp = t - q * nt; t = nt; nt = tmp;
            tmp = r - q * nr; r = nr; nr = tmp;
        }
        return reduce(t);
    }

    friend bool operator==(const PrimeField&, const PrimeField&) = default;

private:
    value_type p_;
};

/// A residue tagged with its modulus; mixing moduli is an error.
class FieldElement {
public:
    FieldElement(const PrimeField& f, std::int64_t v) : field_(f), value_(f.reduce(v)) {}

    std::uint32_t value() const noexcept { return value_; }
    const PrimeField& field() const noexcept { return field_; }

    FieldElement operator+(const FieldElement& o) const { check(o); return raw(field_.add(value_, o.value_)); }
    FieldElement operator-(const FieldElement& o) const { check(o); return raw(field_.sub(value_, o.value_)); }
    FieldElement operator*(const FieldElement& o) const { check(o); return raw(field_.mul(value_, o.value_)); }
    FieldElement operator-() const { return raw(field_.neg(value_)); }
    FieldElement inv() const { return raw(field_.inv(value_)); }
    FieldElement operator/(const FieldElement& o) const { check(o); return *this * o.inv(); }

    friend bool operator==(const FieldElement& a, const FieldElement& b) {
        return a.field_ == b.field_ && a.value_ == b.value_;
    }

private:
    FieldElement raw(std::uint32_t v) const {
        FieldElement r(field_, 0);
        r.value_ = v;
        return r;
    }
    void check(const FieldElement& o) const {
        if (!(field_ == o.field_))
            throw field_error("mismatched moduli " + std::to_string(field_.characteristic()) + " and " +
                              std::to_string(o.field_.characteristic()));
    }

    PrimeField field_;
    std::uint32_t value_;
};

/// q = p^e with an overflow check; q is kept below 2^31.
inline std::uint64_t frobenius_power(const PrimeField& f, unsigned e) {
    std::uint64_t q = 1;
    for (unsigned i = 0; i < e; ++i) {
        q *= f.characteristic();
        if (q >= (std::uint64_t{1} << 31)) throw std::overflow_error("q = p^e overflows");
    }
    return q;
}

/// True when q is p^e for some e >= 0.
inline bool is_power_of(std::uint64_t q, std::uint64_t p) {
    if (q == 0) return false;
    while (q % p == 0) q /= p;
    return q == 1;
}

} // namespace hk
