#pragma once

#include <hk/hk_engine.hpp>
#include <hk/hn_slopes.hpp>

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace hk {

/// Splitting Syz(f_1^q, ..., f_n^q) = (+)_j O(-e_j) on P^1, twists ascending.
struct SplittingType {
    std::uint64_t p = 0;
    std::uint64_t q = 0;
    std::vector<std::int64_t> twists;
    friend bool operator==(const SplittingType&, const SplittingType&) = default;
};

/// h^0 of (+)_j O(-e_j)(m) on P^1.
inline std::int64_t split_h0(std::span<const std::int64_t> twists, std::int64_t m) {
    std::int64_t s = 0;
    for (auto e : twists) s += std::max<std::int64_t>(0, m - e + 1);
    return s;
}

/// h^1 of (+)_j O(-e_j)(m) on P^1 (Serre duality, omega = O(-2)).
inline std::int64_t split_h1(std::span<const std::int64_t> twists, std::int64_t m) {
    std::int64_t s = 0;
    for (auto e : twists) s += std::max<std::int64_t>(0, e - m - 1);
    return s;
}

class p1_error : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

namespace detail {
inline void require_p1(const IdealSpec& ideal) {
    if (ideal.ring().kind() != GradedRing::Kind::Free || ideal.ring().nvars() != 2)
        throw ring_error("the P^1 engine needs the free ring K[x,y]");
}

/// h^0(Syz(m)) for m = 0..last. Above the first vanishing colength the map
/// is surjective, so the kernel dimension is domain - target there.
inline std::vector<std::int64_t> syzygy_profile(const FrobeniusMap& map, std::int64_t last) {
    std::vector<std::int64_t> h0;
    bool surjective = false;
    for (std::int64_t m = 0; m <= last; ++m) {
        if (!surjective) {
            DegreeCounts dc = map.degree(m);
            h0.push_back(static_cast<std::int64_t>(dc.syzygy_h0()));
            surjective = dc.colength() == 0 && m > 0;
        } else {
            std::int64_t domain = 0;
            for (auto d : map.degrees()) domain += static_cast<std::int64_t>(map.ring().hilbert_dim(m - static_cast<std::int64_t>(map.q()) * d));
            h0.push_back(domain - static_cast<std::int64_t>(map.ring().hilbert_dim(m)));
        }
    }
    return h0;
}
} // namespace detail

/// Reads the splitting type off the h^0 profile: the first difference of
/// m -> h^0(Syz(m)) counts the twists e_j <= m.
inline SplittingType splitting_type(const IdealSpec& ideal, std::uint64_t q, const EngineLimits& limits = {}) {
    detail::require_p1(ideal);
    const auto p = ideal.ring().field().characteristic();
    if (!is_power_of(q, p)) throw std::invalid_argument("q must be a power of p");
    const FrobeniusMap map = ideal.frobenius_map(q, limits.max_matrix_dim);
    const std::int64_t last = static_cast<std::int64_t>(q) * detail::max_pair_sum(ideal.degrees()) + 1;
    const auto h0 = detail::syzygy_profile(map, last);

    SplittingType st{p, q, {}};
    std::int64_t prev_delta = 0;
    for (std::int64_t m = 0; m <= last; ++m) {
        const std::int64_t delta = h0[static_cast<std::size_t>(m)] - (m > 0 ? h0[static_cast<std::size_t>(m - 1)] : 0);
        if (delta < prev_delta) throw p1_error("h0 profile is not convex; not a split bundle shape");
        for (std::int64_t k = prev_delta; k < delta; ++k) st.twists.push_back(m);
        prev_delta = delta;
    }
    const auto rank = static_cast<std::int64_t>(ideal.size()) - 1;
    if (static_cast<std::int64_t>(st.twists.size()) != rank)
        throw p1_error("recovered " + std::to_string(st.twists.size()) + " twists, expected rank " + std::to_string(rank));
    std::int64_t sum = std::accumulate(st.twists.begin(), st.twists.end(), std::int64_t{0});
    if (sum != static_cast<std::int64_t>(q) * detail::degree_sum(ideal.degrees()))
        throw p1_error("twists do not sum to q * sum d_i");
    for (std::int64_t m = 0; m <= last; ++m)
        if (split_h0(st.twists, m) != h0[static_cast<std::size_t>(m)])
            throw p1_error("h0 profile disagrees with the split formula at degree " + std::to_string(m));
    return st;
}

/// Both twist multisets when q2 / q1 does not scale one onto the other.
struct NotStabilized {
    SplittingType first, second;
};

inline std::variant<HNData, NotStabilized> hn_from_splittings(const SplittingType& s1, const SplittingType& s2) {
    if (s1.p != s2.p || s2.q <= s1.q || s2.q % s1.q != 0 || !is_power_of(s2.q / s1.q, s1.p))
        throw std::invalid_argument("q2 / q1 must be a positive power of p");
    if (s1.twists.size() != s2.twists.size()) return NotStabilized{s1, s2};
    const auto ratio = static_cast<std::int64_t>(s2.q / s1.q);
    std::vector<std::int64_t> a = s1.twists, b = s2.twists;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    for (std::size_t j = 0; j < a.size(); ++j)
        if (a[j] * ratio != b[j]) return NotStabilized{s1, s2};

    HNData hn;
    hn.n = a.size() + 1;
    hn.deg_y = 1;
    const auto q1 = static_cast<std::int64_t>(s1.q);
    for (std::size_t j = 0; j < a.size();) {
        std::size_t k = j;
        while (k < a.size() && a[k] == a[j]) ++k;
        hn.thresholds.emplace_back(a[j], q1);
        hn.ranks.push_back(static_cast<std::int64_t>(k - j));
        j = k;
    }
    return hn;
}

struct ProfileRow {
    std::int64_t m = 0;
    std::int64_t h0 = 0;          // measured kernel dimension
    std::int64_t h0_split = 0;    // sum_j max(0, m - e_j + 1)
    std::int64_t h1_split = 0;    // sum_j max(0, e_j - m - 1)
    std::int64_t colength = 0;    // measured cokernel dimension
};

struct ProfileReport {
    std::uint64_t q = 0;
    std::vector<ProfileRow> rows;
    std::vector<std::string> failures;
    bool ok() const noexcept { return failures.empty(); }
};

/// Checks the global syzygy description for a split bundle on P^1 (g = 0,
/// deg omega = -2) at every degree 0 <= m <= q nu_t + 2:
///  - h^0 matches the split formula;
///  - h^0 = 0 for m < q nu_1;
///  - between q nu_k - 2 < m < q nu_{k+1}, h^0 = sum_{l<=k} r_l (m - q nu_l + 1);
///  - h^1 = 0 for m > q nu_t - 2;
///  - colength = h^1(Syz(m)) - sum_i h^1(O(m - q d_i)) + h^1(O(m)).
inline ProfileReport verify_h0_profile(const IdealSpec& ideal, std::uint64_t q, const HNData& hn,
                                       const EngineLimits& limits = {}) {
    detail::require_p1(ideal);
    require_valid(hn, ideal.degrees());
    ProfileReport rep;
    rep.q = q;
    const Rational qq(static_cast<std::int64_t>(q));
    std::vector<Rational> scaled;
    std::vector<std::int64_t> twists;
    for (std::size_t k = 0; k < hn.length(); ++k) {
        Rational t = qq * hn.thresholds[k];
        scaled.push_back(t);
        if (!t.is_integer()) {
            rep.failures.push_back("q * nu_" + std::to_string(k + 1) + " is not an integer");
            return rep;
        }
        for (std::int64_t r = 0; r < hn.ranks[k]; ++r) twists.push_back(t.num());
    }
    const std::int64_t last = scaled.back().num() + 2;
    const FrobeniusMap map = ideal.frobenius_map(q, limits.max_matrix_dim);
    auto h1_line = [](std::int64_t k) { return std::max<std::int64_t>(0, -k - 1); };
    for (std::int64_t m = 0; m <= last; ++m) {
        DegreeCounts dc = map.degree(m);
        ProfileRow row{m, static_cast<std::int64_t>(dc.syzygy_h0()), split_h0(twists, m), split_h1(twists, m),
                       static_cast<std::int64_t>(dc.colength())};
        const std::string at = " at m = " + std::to_string(m);
        if (row.h0 != row.h0_split) rep.failures.push_back("h0 differs from split formula" + at);
        if (Rational(m) < scaled.front() && row.h0 != 0) rep.failures.push_back("h0 nonzero below q nu_1" + at);
        for (std::size_t k = 0; k + 1 < scaled.size(); ++k) {
            if (Rational(m) > scaled[k] - Rational(2) && Rational(m) < scaled[k + 1]) {
                std::int64_t expect = 0;
                for (std::size_t l = 0; l <= k; ++l) expect += hn.ranks[l] * (m - scaled[l].num() + 1);
                if (row.h0 != expect) rep.failures.push_back("interval formula fails" + at);
            }
        }
        if (Rational(m) > scaled.back() - Rational(2) && row.h1_split != 0)
            rep.failures.push_back("h1 nonzero above q nu_t - 2" + at);
        std::int64_t serre = row.h1_split + h1_line(m);
        for (auto d : ideal.degrees()) serre -= h1_line(m - static_cast<std::int64_t>(q) * d);
        if (serre != row.colength) rep.failures.push_back("cokernel differs from the h1 sequence" + at);
        rep.rows.push_back(row);
    }
    return rep;
}

struct P1Options {
    /// Largest e tried when searching for stabilization.
    unsigned max_e = 3;
    /// Additional exponents at which phi(q) is computed for the residual check.
    std::vector<std::uint64_t> qs;
    EngineLimits limits;
};

struct Residual {
    std::uint64_t q = 0;
    std::uint64_t phi = 0;
    Rational deviation; // |phi(q) - e_HK q^2|
    Rational per_q;     // deviation / q
};

/// Stabilization search plus the exact theorem check on P^1.
struct P1Analysis {
    std::vector<SplittingType> splittings;
    std::optional<HNData> hn;     // set when stabilized
    std::optional<Rational> ehk;  // formula value from hn
    std::uint64_t stabilized_q1 = 0, stabilized_q2 = 0;
    std::vector<Residual> residuals;
};

inline P1Analysis analyze_p1(const IdealSpec& ideal, const P1Options& opt = {}) {
    detail::require_p1(ideal);
    const auto& field = ideal.ring().field();
    P1Analysis out;
    for (unsigned e = 1; e <= opt.max_e; ++e) {
        const std::uint64_t q = frobenius_power(field, e);
        out.splittings.push_back(splitting_type(ideal, q, opt.limits));
        if (out.splittings.size() < 2) continue;
        const auto& s1 = out.splittings[out.splittings.size() - 2];
        const auto& s2 = out.splittings.back();
        auto res = hn_from_splittings(s1, s2);
        if (auto* hn = std::get_if<HNData>(&res)) {
            out.hn = *hn;
            out.ehk = ehk_from_hn(*hn, ideal.degrees());
            out.stabilized_q1 = s1.q;
            out.stabilized_q2 = s2.q;
            break;
        }
    }
    if (!out.ehk) return out;
    std::vector<std::uint64_t> qs = opt.qs;
    if (qs.empty())
        for (unsigned e = 1; e <= opt.max_e; ++e) qs.push_back(frobenius_power(field, e));
    for (auto q : qs) {
        HKRow row = hk_value(ideal, q, opt.limits);
        const Rational qq(static_cast<std::int64_t>(q));
        Rational dev = (Rational(static_cast<std::int64_t>(row.phi)) - *out.ehk * qq * qq).abs();
        out.residuals.push_back({q, row.phi, dev, dev / qq});
    }
    return out;
}

} // namespace hk
