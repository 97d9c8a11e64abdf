#pragma once

#include <hk/hk_engine.hpp>
#include <hk/rational.hpp>

#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hk {

/// Largest denominator accepted when rounding an estimate.
struct DenominatorBound {
    std::int64_t bound = 1;

    /// 2 (n-1)! deg(Y) p^{e_cap}: the factors that can occur in e_HK.
    static DenominatorBound standard(std::size_t n, std::int64_t deg_y, std::uint64_t p, unsigned e_cap) {
        unsigned __int128 b = 2 * static_cast<unsigned __int128>(deg_y);
        for (std::size_t k = 2; k + 1 <= n; ++k) b *= k;
        for (unsigned e = 0; e < e_cap; ++e) b *= p;
        if (b > INT64_MAX) throw std::overflow_error("denominator bound overflows");
        return {static_cast<std::int64_t>(b)};
    }
};

/// Continued-fraction convergents of x, in order.
inline std::vector<Rational> convergents(const Rational& x) {
    std::vector<Rational> out;
    __int128 h0 = 0, h1 = 1, k0 = 1, k1 = 0;
    __int128 a_num = x.num(), a_den = x.den();
    while (a_den != 0) {
        __int128 a = a_num / a_den;
        if ((a_num % a_den != 0) && ((a_num < 0) != (a_den < 0))) --a;
        __int128 h2 = a * h1 + h0, k2 = a * k1 + k0;
        out.emplace_back(static_cast<std::int64_t>(h2), static_cast<std::int64_t>(k2));
        h0 = h1; h1 = h2; k0 = k1; k1 = k2;
        __int128 rem = a_num - a * a_den;
        a_num = a_den;
        a_den = rem;
    }
    return out;
}

/// Continued-fraction rounding: the last convergent of x whose denominator
/// is at most `bound`, provided it lies within `window` of x.
inline std::optional<Rational> rational_round(const Rational& x, std::int64_t bound, const Rational& window) {
    if (bound < 1) throw std::invalid_argument("denominator bound must be positive");
    std::optional<Rational> best;
    for (const auto& c : convergents(x)) {
        if (c.den() > bound) break;
        best = c;
    }
    if (best && (*best - x).abs() <= window) return best;
    return std::nullopt;
}

struct ResidualRow {
    std::uint64_t q = 0;
    std::uint64_t phi = 0;
    Rational per_q; // |phi(q) - e q^2| / q
};

struct Reconstruction {
    Rational estimate;  // (phi(q2) - phi(q1)) / (q2^2 - q1^2)
    Rational value;     // rounded e_HK
    Rational window;
    std::int64_t bound = 0;
    std::uint64_t q1 = 0, q2 = 0;
    std::vector<ResidualRow> residuals;
};

class ambiguous_reconstruction : public std::runtime_error {
public:
    ambiguous_reconstruction(Rational estimate, std::vector<Rational> candidates, Rational window, std::int64_t bound)
        : std::runtime_error(describe(estimate, candidates, window, bound)),
          estimate_(estimate), candidates_(std::move(candidates)) {}
    const Rational& estimate() const noexcept { return estimate_; }
    const std::vector<Rational>& candidates() const noexcept { return candidates_; }

private:
    static std::string describe(const Rational& e, const std::vector<Rational>& c, const Rational& w, std::int64_t b) {
        std::string s = "no rational with denominator <= " + std::to_string(b) + " within " + w.str() + " of " +
                        e.str() + "; nearest candidates:";
        for (const auto& x : c) s += " " + x.str();
        return s;
    }
    Rational estimate_;
    std::vector<Rational> candidates_;
};

/// Infers e_HK from exact values phi(q) using the two largest q.
///
/// The difference quotient cancels constant terms of phi; rounding accepts
/// the last convergent with denominator <= bound inside a window of
/// K / q1 around it.
inline Reconstruction estimate_ehk(const std::map<std::uint64_t, std::uint64_t>& phi, const DenominatorBound& bound,
                                   const Rational& window_constant) {
    if (phi.size() < 2) throw std::invalid_argument("need values at two or more q");
    auto hi = std::prev(phi.end());
    auto lo = std::prev(hi);
    Reconstruction r;
    r.q1 = lo->first;
    r.q2 = hi->first;
    r.bound = bound.bound;
    const Rational q1(static_cast<std::int64_t>(r.q1)), q2(static_cast<std::int64_t>(r.q2));
    r.estimate = (Rational(static_cast<std::int64_t>(hi->second)) - Rational(static_cast<std::int64_t>(lo->second))) /
                 (q2 * q2 - q1 * q1);
    r.window = window_constant / q1;
    auto rounded = rational_round(r.estimate, bound.bound, r.window);
    if (!rounded) {
        std::vector<Rational> cands;
        for (const auto& c : convergents(r.estimate)) {
            cands.push_back(c);
            if (c.den() > bound.bound) break;
        }
        throw ambiguous_reconstruction(r.estimate, cands, r.window, bound.bound);
    }
    r.value = *rounded;
    for (const auto& [q, v] : phi) {
        const Rational qq(static_cast<std::int64_t>(q));
        r.residuals.push_back({q, v, (Rational(static_cast<std::int64_t>(v)) - r.value * qq * qq).abs() / qq});
    }
    return r;
}

inline Reconstruction estimate_ehk(const HKFunctionTable& table, const DenominatorBound& bound,
                                   const Rational& window_constant) {
    std::map<std::uint64_t, std::uint64_t> phi;
    for (const auto& [q, row] : table.rows) phi.emplace(q, row.phi);
    return estimate_ehk(phi, bound, window_constant);
}

/// nu_2 = (3 + sqrt(D)) / 2 with D = 4 e / h - 3; exact when D is a square.
struct Nu2Value {
    Rational discriminant;
    std::optional<Rational> exact;

    double approx() const { return (3.0 + std::sqrt(discriminant.to_double())) / 2.0; }
    std::string str() const { return exact ? exact->str() : "(3 + sqrt(" + discriminant.str() + "))/2"; }
};

namespace detail {
inline std::optional<std::int64_t> exact_sqrt(std::int64_t v) {
    if (v < 0) return std::nullopt;
    auto r = static_cast<std::int64_t>(std::llround(std::sqrt(static_cast<long double>(v))));
    for (std::int64_t c = std::max<std::int64_t>(0, r - 2); c <= r + 2; ++c)
        if (static_cast<__int128>(c) * c == v) return c;
    return std::nullopt;
}
} // namespace detail

/// Inverts e_HK = h (nu^2 - 3 nu + 3) on the branch 3/2 <= nu <= 2.
inline Nu2Value nu2_from_ehk(std::int64_t h, const Rational& ehk) {
    if (h <= 0) throw std::invalid_argument("curve degree must be positive");
    const Rational hh(h);
    if (ehk < Rational(3, 4) * hh || ehk > hh) throw std::domain_error("e_HK outside [3h/4, h]");
    Nu2Value v;
    v.discriminant = Rational(4) * ehk / hh - Rational(3);
    auto sn = detail::exact_sqrt(v.discriminant.num());
    auto sd = detail::exact_sqrt(v.discriminant.den());
    if (sn && sd) v.exact = (Rational(3) + Rational(*sn, *sd)) / Rational(2);
    return v;
}

} // namespace hk
