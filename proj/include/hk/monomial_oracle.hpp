#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

namespace hk {

/// Monomial ideal in K[x, y], generators x^a y^b stored as (a, b).
class MonomialIdeal2 {
public:
    using Exponents = std::pair<std::uint64_t, std::uint64_t>;

    explicit MonomialIdeal2(std::vector<Exponents> gens) {
        // keep only generators not divisible by another one
        std::sort(gens.begin(), gens.end());
        gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
        for (const auto& g : gens) {
            bool redundant = std::any_of(gens.begin(), gens.end(), [&](const Exponents& h) {
                return h != g && h.first <= g.first && h.second <= g.second;
            });
            if (!redundant) gens_.push_back(g);
        }
    }

    const std::vector<Exponents>& gens() const noexcept { return gens_; }

    bool is_primary() const {
        bool x = false, y = false;
        for (auto [a, b] : gens_) {
            x |= (b == 0);
            y |= (a == 0);
        }
        return x && y;
    }

private:
    std::vector<Exponents> gens_;
};

/// Number of monomials x^a y^b outside (x^{q a_i} y^{q b_i})_i, counted row by
/// row in b.
inline std::uint64_t staircase_colength(const MonomialIdeal2& ideal, std::uint64_t q) {
    if (!ideal.is_primary()) throw std::invalid_argument("monomial ideal is not (x,y)-primary");
    if (q == 0) throw std::invalid_argument("q must be positive");
    std::uint64_t height = std::numeric_limits<std::uint64_t>::max();
    for (auto [a, b] : ideal.gens())
        if (a == 0) height = std::min(height, b * q);
    std::uint64_t total = 0;
    for (std::uint64_t b = 0; b < height; ++b) {
        std::uint64_t width = std::numeric_limits<std::uint64_t>::max();
        for (auto [ga, gb] : ideal.gens())
            if (gb * q <= b) width = std::min(width, ga * q);
        total += width;
    }
    return total;
}

} // namespace hk
