#pragma once

#include <hk/rational.hpp>

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace hk {

/// Summary of the strong Harder-Narasimhan filtration of a syzygy bundle.
///
/// Slopes are stored as degree thresholds nu_k = -mu_k / deg(Y); ranks[k]
/// belongs to thresholds[k].
struct HNData {
    std::size_t n = 0;      // number of ideal generators
    std::int64_t deg_y = 1; // deg O_Y(1)
    std::vector<std::int64_t> ranks;
    std::vector<Rational> thresholds;

    std::size_t length() const noexcept { return thresholds.size(); }
    friend bool operator==(const HNData&, const HNData&) = default;
};

inline Rational slope_from_threshold(const Rational& nu, std::int64_t deg_y) { return -nu * Rational(deg_y); }
inline Rational threshold_from_slope(const Rational& mu, std::int64_t deg_y) { return -mu / Rational(deg_y); }

class hn_invariant_error : public std::domain_error {
public:
    hn_invariant_error(const std::vector<std::string>& violations)
        : std::domain_error(join(violations)), violations_(violations) {}
    const std::vector<std::string>& violations() const noexcept { return violations_; }

private:
    static std::string join(const std::vector<std::string>& v) {
        std::string s = "invalid HN data:";
        for (const auto& x : v) s += " [" + x + "]";
        return s;
    }
    std::vector<std::string> violations_;
};

namespace detail {
inline Rational sum_of(std::span<const std::int64_t> d) {
    return Rational(std::accumulate(d.begin(), d.end(), std::int64_t{0}));
}
inline Rational sum_of_squares(std::span<const std::int64_t> d) {
    Rational s;
    for (auto x : d) s += Rational(x) * Rational(x);
    return s;
}
} // namespace detail

/// Every violated invariant, in a fixed order; empty means valid.
inline std::vector<std::string> validate(const HNData& hn, std::span<const std::int64_t> degrees) {
    std::vector<std::string> bad;
    if (hn.deg_y <= 0) bad.emplace_back("deg(Y) must be positive");
    if (hn.n != degrees.size()) bad.emplace_back("generator count n does not match the degree list");
    if (hn.ranks.size() != hn.thresholds.size()) {
        bad.emplace_back("ranks and thresholds differ in length");
        return bad;
    }
    if (hn.thresholds.empty()) {
        bad.emplace_back("filtration is empty");
        return bad;
    }
    if (std::any_of(hn.ranks.begin(), hn.ranks.end(), [](auto r) { return r <= 0; }))
        bad.emplace_back("ranks must be positive");
    const std::int64_t rank_sum = std::accumulate(hn.ranks.begin(), hn.ranks.end(), std::int64_t{0});
    if (rank_sum != static_cast<std::int64_t>(degrees.size()) - 1) bad.emplace_back("sum r_k != n - 1");
    Rational weighted;
    for (std::size_t k = 0; k < hn.ranks.size(); ++k) weighted += Rational(hn.ranks[k]) * hn.thresholds[k];
    if (weighted != detail::sum_of(degrees)) bad.emplace_back("sum r_k nu_k != sum d_i");
    for (std::size_t k = 1; k < hn.thresholds.size(); ++k) {
        if (!(hn.thresholds[k - 1] < hn.thresholds[k])) {
            bad.emplace_back("thresholds not strictly increasing");
            break;
        }
    }
    if (!degrees.empty()) {
        const std::int64_t dmin = *std::min_element(degrees.begin(), degrees.end());
        if (hn.thresholds.front() < Rational(dmin)) bad.emplace_back("nu_1 < min d_i");
        std::int64_t pair = 0;
        for (std::size_t i = 0; i < degrees.size(); ++i)
            for (std::size_t j = i + 1; j < degrees.size(); ++j) pair = std::max(pair, degrees[i] + degrees[j]);
        if (degrees.size() >= 2 && hn.thresholds.back() > Rational(pair)) bad.emplace_back("nu_t > max_{i!=j}(d_i + d_j)");
    }
    return bad;
}

inline void require_valid(const HNData& hn, std::span<const std::int64_t> degrees) {
    auto bad = validate(hn, degrees);
    if (!bad.empty()) throw hn_invariant_error(bad);
}

/// e_HK = (deg Y / 2) (sum_k r_k nu_k^2 - sum_i d_i^2).
///
/// In characteristic zero this expression is taken as the definition.
inline Rational ehk_from_hn(const HNData& hn, std::span<const std::int64_t> degrees) {
    require_valid(hn, degrees);
    Rational s;
    for (std::size_t k = 0; k < hn.ranks.size(); ++k)
        s += Rational(hn.ranks[k]) * hn.thresholds[k] * hn.thresholds[k];
    return Rational(hn.deg_y, 2) * (s - detail::sum_of_squares(degrees));
}

/// Single-step filtration: nu_1 = sum d_i / (n - 1), r_1 = n - 1.
inline HNData semistable_hn(std::span<const std::int64_t> degrees, std::int64_t deg_y) {
    if (degrees.size() < 2) throw std::invalid_argument("need at least two generators");
    const auto r = static_cast<std::int64_t>(degrees.size()) - 1;
    return HNData{degrees.size(), deg_y, {r}, {detail::sum_of(degrees) / Rational(r)}};
}

/// e_HK when the syzygy bundle is strongly semistable:
/// (deg Y / 2) ((sum d_i)^2 / (n - 1) - sum d_i^2).
inline Rational ehk_strongly_semistable(std::span<const std::int64_t> degrees, std::size_t n, std::int64_t deg_y) {
    if (n != degrees.size()) throw std::invalid_argument("n does not match the degree list");
    if (n < 2) throw std::invalid_argument("need at least two generators");
    const Rational s = detail::sum_of(degrees);
    Rational v = Rational(deg_y, 2) * (s * s / Rational(static_cast<std::int64_t>(n) - 1) - detail::sum_of_squares(degrees));
    if (v != ehk_from_hn(semistable_hn(degrees, deg_y), degrees))
        throw std::logic_error("semistable formula disagrees with the general formula");
    return v;
}

/// Two-step filtration determined by (r_2, nu_2); the first step follows from
/// r_1 = n - 1 - r_2 and r_1 nu_1 = sum d_i - r_2 nu_2.
inline HNData t2_hn(std::int64_t r2, const Rational& nu2, std::span<const std::int64_t> degrees, std::int64_t deg_y) {
    const auto n = static_cast<std::int64_t>(degrees.size());
    const std::int64_t r1 = n - 1 - r2;
    if (r2 <= 0 || r1 <= 0) throw hn_invariant_error({"need 0 < r_2 < n - 1"});
    Rational nu1 = (detail::sum_of(degrees) - Rational(r2) * nu2) / Rational(r1);
    return HNData{degrees.size(), deg_y, {r1, r2}, {nu1, nu2}};
}

/// (deg Y / 2) (r_2 nu_2^2 + (sum d_i - r_2 nu_2)^2 / (n - 1 - r_2) - sum d_i^2)
inline Rational ehk_t2(std::int64_t r2, const Rational& nu2, std::span<const std::int64_t> degrees, std::size_t n,
                       std::int64_t deg_y) {
    if (n != degrees.size()) throw std::invalid_argument("n does not match the degree list");
    HNData hn = t2_hn(r2, nu2, degrees, deg_y);
    require_valid(hn, degrees);
    const Rational rest = detail::sum_of(degrees) - Rational(r2) * nu2;
    Rational v = Rational(deg_y, 2) *
                 (Rational(r2) * nu2 * nu2 + rest * rest / Rational(static_cast<std::int64_t>(n) - 1 - r2) -
                  detail::sum_of_squares(degrees));
    if (v != ehk_from_hn(hn, degrees)) throw std::logic_error("t = 2 formula disagrees with the general formula");
    return v;
}

/// Three generators: deg Y (nu_2^2 - nu_2 sum d_i + sum_{i<j} d_i d_j).
///
/// nu_2 = sum d_i / 2 is the semistable case and gives the same value.
inline Rational ehk_n3(const Rational& nu2, std::span<const std::int64_t> degrees, std::int64_t deg_y) {
    if (degrees.size() != 3) throw std::invalid_argument("ehk_n3 needs exactly three degrees");
    const Rational s = detail::sum_of(degrees);
    const Rational half = s / Rational(2);
    if (nu2 < half) throw hn_invariant_error({"nu_2 < sum d_i / 2 forces nu_1 > nu_2"});
    HNData hn = nu2 == half ? semistable_hn(degrees, deg_y) : t2_hn(1, nu2, degrees, deg_y);
    require_valid(hn, degrees);
    Rational pairs = Rational(degrees[0] * degrees[1] + degrees[0] * degrees[2] + degrees[1] * degrees[2]);
    Rational v = Rational(deg_y) * (nu2 * nu2 - nu2 * s + pairs);
    if (v != ehk_from_hn(hn, degrees)) throw std::logic_error("n = 3 formula disagrees with the general formula");
    return v;
}

/// Cone over a plane curve of degree h, maximal ideal: h (nu_2^2 - 3 nu_2 + 3),
/// defined for 3/2 <= nu_2 <= 2.
inline Rational ehk_plane_curve(std::int64_t h, const Rational& nu2) {
    if (h <= 0) throw std::invalid_argument("curve degree must be positive");
    if (nu2 < Rational(3, 2) || nu2 > Rational(2)) throw std::domain_error("nu_2 must lie in [3/2, 2]");
    return Rational(h) * (nu2 * nu2 - Rational(3) * nu2 + Rational(3));
}

/// Adjoining a redundant generator of degree e splits off O(-e): the new
/// threshold e gets rank 1, merging into an existing threshold equal to e.
inline std::pair<HNData, std::vector<std::int64_t>> add_generator(const HNData& hn, std::span<const std::int64_t> degrees,
                                                                  std::int64_t e) {
    require_valid(hn, degrees);
    if (e <= 0) throw std::invalid_argument("generator degree must be positive");
    if (e < *std::min_element(degrees.begin(), degrees.end()))
        throw std::invalid_argument("a redundant generator has degree at least min d_i");
    HNData out = hn;
    out.n = hn.n + 1;
    const Rational re(e);
    auto pos = std::lower_bound(out.thresholds.begin(), out.thresholds.end(), re);
    const auto k = static_cast<std::size_t>(pos - out.thresholds.begin());
    if (pos != out.thresholds.end() && *pos == re) {
        ++out.ranks[k];
    } else {
        out.thresholds.insert(pos, re);
        out.ranks.insert(out.ranks.begin() + static_cast<std::ptrdiff_t>(k), 1);
    }
    std::vector<std::int64_t> d(degrees.begin(), degrees.end());
    d.push_back(e);
    require_valid(out, d);
    return {std::move(out), std::move(d)};
}

} // namespace hk
