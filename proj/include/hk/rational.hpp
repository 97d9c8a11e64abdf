#pragma once

#include <compare>
#include <cstdint>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace hk {

/// Exact reduced fraction num/den with den > 0.
///
/// Arithmetic is carried out in 128-bit intermediates and the reduced result
/// must fit back into 64 bits, otherwise std::overflow_error is thrown.
class Rational {
public:
    using int_type = std::int64_t;

    constexpr Rational() = default;
    constexpr Rational(int_type n) : num_(n), den_(1) {} // NOLINT: implicit from integers
    Rational(int_type n, int_type d) { assign(n, d); }

    int_type num() const noexcept { return num_; }
    int_type den() const noexcept { return den_; }

    bool is_integer() const noexcept { return den_ == 1; }
    int sign() const noexcept { return (num_ > 0) - (num_ < 0); }

    Rational operator-() const { return make(-static_cast<__int128>(num_), den_); }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return make(static_cast<__int128>(a.num_) * b.den_ + static_cast<__int128>(b.num_) * a.den_,
                     static_cast<__int128>(a.den_) * b.den_);
    }
    friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }
    friend Rational operator*(const Rational& a, const Rational& b) {
        // cross-cancel first to keep intermediates small
        int_type g1 = std::gcd(a.num_, b.den_);
        int_type g2 = std::gcd(b.num_, a.den_);
        if (g1 == 0) g1 = 1;
        if (g2 == 0) g2 = 1;
        return make(static_cast<__int128>(a.num_ / g1) * (b.num_ / g2),
                     static_cast<__int128>(a.den_ / g2) * (b.den_ / g1));
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num_ == 0) throw std::domain_error("rational division by zero");
        return a * Rational(b.den_, b.num_);
    }
    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    friend bool operator==(const Rational&, const Rational&) = default;
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        __int128 l = static_cast<__int128>(a.num_) * b.den_;
        __int128 r = static_cast<__int128>(b.num_) * a.den_;
        return l <=> r;
    }

    Rational abs() const { return num_ < 0 ? -*this : *this; }

    /// Largest integer <= this.
    int_type floor() const noexcept {
        int_type q = num_ / den_;
        if ((num_ % den_ != 0) && (num_ < 0)) --q;
        return q;
    }
    int_type ceil() const noexcept { return -(-*this).floor(); }

    double to_double() const noexcept { return static_cast<double>(num_) / static_cast<double>(den_); }

    /// `num/den`, or just `num` when the denominator is one.
    std::string str() const {
        return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
    }

    /// Accepts `a`, `-a`, `a/b`, `-a/b`.
    static Rational parse(std::string_view s) {
        auto trim = [](std::string_view v) {
            while (!v.empty() && (v.front() == ' ' || v.front() == '\t')) v.remove_prefix(1);
            while (!v.empty() && (v.back() == ' ' || v.back() == '\t')) v.remove_suffix(1);
            return v;
        };
        s = trim(s);
        auto to_int = [&](std::string_view v) -> int_type {
            v = trim(v);
            if (v.empty()) throw std::invalid_argument("empty rational component");
            std::size_t i = 0;
            bool neg = false;
            if (v[0] == '-' || v[0] == '+') { neg = v[0] == '-'; i = 1; }
            if (i == v.size()) throw std::invalid_argument("bad rational: " + std::string(s));
            __int128 acc = 0;
            for (; i < v.size(); ++i) {
                if (v[i] < '0' || v[i] > '9') throw std::invalid_argument("bad rational: " + std::string(s));
                acc = acc * 10 + (v[i] - '0');
                if (acc > INT64_MAX) throw std::overflow_error("rational component too large");
            }
            return static_cast<int_type>(neg ? -acc : acc);
        };
        auto slash = s.find('/');
        if (slash == std::string_view::npos) return Rational(to_int(s));
        return Rational(to_int(s.substr(0, slash)), to_int(s.substr(slash + 1)));
    }

private:
    static Rational make(__int128 n, __int128 d) {
        if (d == 0) throw std::domain_error("zero denominator");
        if (d < 0) { n = -n; d = -d; }
        __int128 a = n < 0 ? -n : n, b = d;
        while (b) { __int128 t = a % b; a = b; b = t; }
        if (a > 1) { n /= a; d /= a; }
        if (n > INT64_MAX || n < -INT64_MAX || d > INT64_MAX)
            throw std::overflow_error("rational overflow");
        Rational r;
        r.num_ = static_cast<int_type>(n);
        r.den_ = static_cast<int_type>(d);
        return r;
    }
    void assign(int_type n, int_type d) { *this = make(n, d); }

    int_type num_ = 0;
    int_type den_ = 1;
};

inline std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

} // namespace hk
