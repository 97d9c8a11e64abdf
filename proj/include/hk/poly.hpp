#pragma once

#include <hk/prime_field.hpp>

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace hk {

class poly_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Exponent vector, one entry per variable.
class Monomial {
public:
    using exponent_type = std::uint32_t;

    Monomial() = default;
    explicit Monomial(std::size_t nvars) : exps_(nvars, 0) {}
    Monomial(std::initializer_list<exponent_type> e) : exps_(e) {}
    explicit Monomial(std::vector<exponent_type> e) : exps_(std::move(e)) {}

    std::size_t nvars() const noexcept { return exps_.size(); }
    exponent_type operator[](std::size_t i) const { return exps_[i]; }
    exponent_type& operator[](std::size_t i) { return exps_[i]; }
    const std::vector<exponent_type>& exponents() const noexcept { return exps_; }

    std::uint64_t degree() const noexcept {
        return std::accumulate(exps_.begin(), exps_.end(), std::uint64_t{0});
    }

    static Monomial variable(std::size_t nvars, std::size_t i, exponent_type e = 1) {
        Monomial m(nvars);
        m.exps_[i] = e;
        return m;
    }

    friend Monomial operator*(const Monomial& a, const Monomial& b) {
        if (a.nvars() != b.nvars()) throw poly_error("monomials over different variable counts");
        Monomial r(a.nvars());
        for (std::size_t i = 0; i < a.nvars(); ++i) {
            std::uint64_t s = std::uint64_t{a.exps_[i]} + b.exps_[i];
            if (s > UINT32_MAX) throw std::overflow_error("monomial exponent overflow");
            r.exps_[i] = static_cast<exponent_type>(s);
        }
        return r;
    }

    bool divides(const Monomial& other) const {
        for (std::size_t i = 0; i < exps_.size(); ++i)
            if (exps_[i] > other.exps_[i]) return false;
        return true;
    }

    /// other / this; requires divides(other).
    Monomial quotient_of(const Monomial& other) const {
        Monomial r(nvars());
        for (std::size_t i = 0; i < exps_.size(); ++i) r.exps_[i] = other.exps_[i] - exps_[i];
        return r;
    }

    Monomial pow(std::uint64_t k) const {
        Monomial r(nvars());
        for (std::size_t i = 0; i < exps_.size(); ++i) {
            std::uint64_t e = std::uint64_t{exps_[i]} * k;
            if (e > UINT32_MAX) throw std::overflow_error("monomial exponent overflow");
            r.exps_[i] = static_cast<exponent_type>(e);
        }
        return r;
    }

    friend bool operator==(const Monomial&, const Monomial&) = default;

private:
    std::vector<exponent_type> exps_;
};

/// Graded reverse lexicographic order: true when a > b.
///
/// Higher total degree wins; within a degree the monomial with the smaller
/// exponent in the last differing variable is the larger one.
struct GrevlexGreater {
    bool operator()(const Monomial& a, const Monomial& b) const {
        auto da = a.degree(), db = b.degree();
        if (da != db) return da > db;
        for (std::size_t i = a.nvars(); i-- > 0;) {
            if (a[i] != b[i]) return a[i] < b[i];
        }
        return false;
    }
};

struct MonomialHash {
    std::size_t operator()(const Monomial& m) const noexcept {
        std::size_t h = 0xcbf29ce484222325ull;
        for (auto e : m.exponents()) {
            h ^= e;
            h *= 0x100000001b3ull;
        }
        return h;
    }
};

/// All monomials of total degree m in nvars variables, in descending grevlex.
/// The count is C(m + nvars - 1, nvars - 1).
inline std::vector<Monomial> graded_piece_basis(std::size_t nvars, std::int64_t m) {
    std::vector<Monomial> out;
    if (m < 0 || nvars == 0) return out;
    Monomial cur(nvars);
    std::function<void(std::size_t, std::uint32_t)> rec = [&](std::size_t i, std::uint32_t left) {
        if (i + 1 == nvars) {
            cur[i] = left;
            out.push_back(cur);
            return;
        }
        for (std::uint32_t e = 0; e <= left; ++e) {
            cur[i] = e;
            rec(i + 1, left - e);
        }
    };
    rec(0, static_cast<std::uint32_t>(m));
    std::sort(out.begin(), out.end(), GrevlexGreater{});
    return out;
}

/// Sparse multivariate polynomial over a prime field.
///
/// Terms are kept in descending grevlex order with no zero coefficients.
class Poly {
public:
    using coeff_type = PrimeField::value_type;
    using term_map = std::map<Monomial, coeff_type, GrevlexGreater>;

    Poly(PrimeField field, std::size_t nvars) : field_(field), nvars_(nvars) {
        if (nvars == 0) throw poly_error("polynomial ring needs at least one variable");
    }

    static Poly constant(PrimeField field, std::size_t nvars, std::int64_t c) {
        Poly p(field, nvars);
        p.add_term(Monomial(nvars), field.reduce(c));
        return p;
    }
    static Poly monomial(PrimeField field, const Monomial& m, coeff_type c = 1) {
        Poly p(field, m.nvars());
        p.add_term(m, c);
        return p;
    }
    static Poly variable(PrimeField field, std::size_t nvars, std::size_t i) {
        return monomial(field, Monomial::variable(nvars, i));
    }

    const PrimeField& field() const noexcept { return field_; }
    std::size_t nvars() const noexcept { return nvars_; }
    const term_map& terms() const noexcept { return terms_; }
    std::size_t size() const noexcept { return terms_.size(); }
    bool is_zero() const noexcept { return terms_.empty(); }

    const Monomial& leading_monomial() const {
        if (is_zero()) throw poly_error("leading monomial of zero polynomial");
        return terms_.begin()->first;
    }
    coeff_type leading_coefficient() const {
        if (is_zero()) throw poly_error("leading coefficient of zero polynomial");
        return terms_.begin()->second;
    }

    /// Total degree; -1 for the zero polynomial.
    std::int64_t degree() const {
        return is_zero() ? -1 : static_cast<std::int64_t>(terms_.begin()->first.degree());
    }

    bool is_homogeneous() const {
        if (is_zero()) return true;
        auto d = terms_.begin()->first.degree();
        return std::all_of(terms_.begin(), terms_.end(), [&](const auto& t) { return t.first.degree() == d; });
    }

    void add_term(const Monomial& m, coeff_type c) {
        if (m.nvars() != nvars_) throw poly_error("term has wrong number of variables");
        c %= field_.characteristic();
        if (c == 0) return;
        auto [it, inserted] = terms_.try_emplace(m, c);
        if (!inserted) {
            it->second = field_.add(it->second, c);
            if (it->second == 0) terms_.erase(it);
        }
    }

    Poly& operator+=(const Poly& o) {
        check(o);
        for (const auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }
    Poly& operator-=(const Poly& o) {
        check(o);
        for (const auto& [m, c] : o.terms_) add_term(m, field_.neg(c));
        return *this;
    }
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    Poly operator-() const {
        Poly r(field_, nvars_);
        for (const auto& [m, c] : terms_) r.terms_.emplace_hint(r.terms_.end(), m, field_.neg(c));
        return r;
    }

    Poly scaled(coeff_type c) const {
        Poly r(field_, nvars_);
        c %= field_.characteristic();
        if (c == 0) return r;
        for (const auto& [m, a] : terms_) r.terms_.emplace_hint(r.terms_.end(), m, field_.mul(a, c));
        return r;
    }

    Poly times_monomial(const Monomial& u) const {
        Poly r(field_, nvars_);
        // multiplying by a monomial preserves grevlex order
        for (const auto& [m, c] : terms_) r.terms_.emplace_hint(r.terms_.end(), m * u, c);
        return r;
    }

    friend Poly operator*(const Poly& a, const Poly& b) {
        a.check(b);
        Poly r(a.field_, a.nvars_);
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, a.field_.mul(ca, cb));
        return r;
    }

    /// a^k by repeated squaring.
    Poly pow(std::uint64_t k) const {
        Poly result = constant(field_, nvars_, 1);
        Poly base = *this;
        while (k) {
            if (k & 1) result = result * base;
            k >>= 1;
            if (k) base = base * base;
        }
        return result;
    }

    friend bool operator==(const Poly& a, const Poly& b) {
        return a.field_ == b.field_ && a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
    }

private:
    void check(const Poly& o) const {
        if (!(field_ == o.field_)) throw field_error("polynomials over different fields");
        if (nvars_ != o.nvars_) throw poly_error("polynomials over different variable counts");
    }

    PrimeField field_;
    std::size_t nvars_;
    term_map terms_;
};

/// Canonical text: descending grevlex, coefficients in [0, p), explicit `*` and `^`.
inline std::string to_string(const Poly& f, const std::vector<std::string>& vars) {
    if (vars.size() != f.nvars()) throw poly_error("variable name count does not match polynomial");
    if (f.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, c] : f.terms()) {
        if (!first) out += " + ";
        first = false;
        std::string mon;
        for (std::size_t i = 0; i < m.nvars(); ++i) {
            if (m[i] == 0) continue;
            if (!mon.empty()) mon += '*';
            mon += vars[i];
            if (m[i] > 1) mon += '^' + std::to_string(m[i]);
        }
        if (mon.empty()) {
            out += std::to_string(c);
        } else {
            if (c != 1) out += std::to_string(c) + '*';
            out += mon;
        }
    }
    return out;
}

} // namespace hk
