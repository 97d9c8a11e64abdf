#pragma once

#include <hk/graded_ring.hpp>
#include <hk/linalg.hpp>

#include <algorithm>
#include <cstdint>
#include <functional>
#include <future>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

namespace hk {

class not_primary_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A configured size or degree cap was hit.
class cap_exceeded_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Dimensions and rank of the multiplication map
/// (a_i) -> sum a_i f_i^q from  (+)_i R_{m - q d_i}  to  R_m.
struct DegreeCounts {
    std::int64_t m = 0;
    std::uint64_t target_dim = 0; // dim R_m
    std::uint64_t domain_dim = 0; // sum_i dim R_{m - q d_i}
    std::uint64_t rank = 0;

    /// length((R/I^[q])_m)
    std::uint64_t colength() const noexcept { return target_dim - rank; }
    /// h^0(Syz(f_1^q, ..., f_n^q)(m)), the kernel dimension
    std::uint64_t syzygy_h0() const noexcept { return domain_dim - rank; }
};

struct EngineLimits {
    /// Largest dim R_m the engine will eliminate; 0 means unlimited.
    std::uint64_t max_matrix_dim = 0;
    /// Hard cap on the summation degree; 0 picks q * max(d_i + d_j) + deg H + sum d_i.
    std::int64_t max_degree = 0;
    /// Extra zero degrees verified after the first vanishing one; 0 picks sum d_i.
    std::int64_t zero_slack = 0;
    /// Degrees evaluated concurrently by hk_value.
    unsigned workers = 1;
};

namespace detail {
inline std::int64_t degree_sum(const std::vector<std::int64_t>& d) { return std::accumulate(d.begin(), d.end(), std::int64_t{0}); }
inline std::int64_t max_pair_sum(const std::vector<std::int64_t>& d) {
    std::int64_t best = 0;
    for (std::size_t i = 0; i < d.size(); ++i)
        for (std::size_t j = i + 1; j < d.size(); ++j) best = std::max(best, d[i] + d[j]);
    if (d.size() == 1) best = 2 * d[0];
    return best;
}
} // namespace detail

/// Degree-m pieces of the map for the generators f_i raised to q.
class FrobeniusMap {
public:
    FrobeniusMap(const GradedRing& ring, const std::vector<Poly>& gens, std::vector<std::int64_t> degrees,
                 std::uint64_t q, std::uint64_t max_matrix_dim = 0)
        : ring_(ring), degrees_(std::move(degrees)), q_(q), max_matrix_dim_(max_matrix_dim) {
        if (gens.size() != degrees_.size()) throw std::invalid_argument("generator/degree count mismatch");
        for (const auto& g : gens) {
            Poly power = ring_.frobenius(g, q);
            std::vector<std::pair<Monomial, std::uint32_t>> terms(power.terms().begin(), power.terms().end());
            powers_.push_back(std::move(terms));
        }
    }

    std::uint64_t q() const noexcept { return q_; }
    const GradedRing& ring() const noexcept { return ring_; }
    const std::vector<std::int64_t>& degrees() const noexcept { return degrees_; }

    /// Feeds every column of the degree-m matrix to `sink` in a fixed order
    /// (generator-major, then descending grevlex on the multiplier). `sink`
    /// returns false to stop early.
    void for_each_column(std::int64_t m, const std::function<bool(const DegreePiece::Column&)>& sink) const {
        DegreePiece piece(ring_, m);
        DegreePiece::Column col;
        const bool fast_p1 = ring_.kind() == GradedRing::Kind::Free && ring_.nvars() == 2;
        for (std::size_t i = 0; i < powers_.size(); ++i) {
            const std::int64_t src = m - static_cast<std::int64_t>(q_) * degrees_[i];
            if (src < 0) continue;
            const auto& g = powers_[i];
            if (fast_p1) {
                // x^a y^b sits at index b of degree m; multipliers x^{src-b} y^b in order b = 0..src
                for (std::int64_t b = 0; b <= src; ++b) {
                    col.clear();
                    for (const auto& [t, c] : g) col.emplace_back(static_cast<std::uint32_t>(b + t[1]), c);
                    if (!sink(col)) return;
                }
                continue;
            }
            for (const Monomial& u : ring_.basis(src)) {
                col.clear();
                for (const auto& [t, c] : g) piece.append_normal_form(u * t, c, col);
                if (!sink(col)) return;
            }
        }
    }

    /// Pure per-degree evaluation; safe to call concurrently.
    DegreeCounts degree(std::int64_t m) const {
        DegreeCounts out;
        out.m = m;
        if (m < 0) return out;
        out.target_dim = ring_.hilbert_dim(m);
        for (auto d : degrees_) out.domain_dim += ring_.hilbert_dim(m - static_cast<std::int64_t>(q_) * d);
        if (out.target_dim == 0 || out.domain_dim == 0) return out;
        if (max_matrix_dim_ && out.target_dim > max_matrix_dim_)
            throw cap_exceeded_error("degree " + std::to_string(m) + " needs a " + std::to_string(out.target_dim) +
                                     "-row matrix, above max_matrix_dim " + std::to_string(max_matrix_dim_));
        EchelonBuilder eb(ring_.field(), out.target_dim);
        for_each_column(m, [&](const DegreePiece::Column& c) {
            eb.insert(c);
            return !eb.full();
        });
        out.rank = eb.rank();
        return out;
    }

private:
    GradedRing ring_;
    std::vector<std::int64_t> degrees_;
    std::uint64_t q_;
    std::uint64_t max_matrix_dim_;
    std::vector<std::vector<std::pair<Monomial, std::uint32_t>>> powers_;
};

/// First degree where (R/I)_m vanishes, searched up to `bound`.
inline std::int64_t check_primary(const GradedRing& ring, const std::vector<Poly>& gens,
                                  const std::vector<std::int64_t>& degrees, std::int64_t bound) {
    FrobeniusMap map(ring, gens, degrees, 1);
    for (std::int64_t m = 0; m <= bound; ++m) {
        if (map.degree(m).colength() == 0) return m;
    }
    throw not_primary_error("ideal is not primary to the irrelevant ideal: (R/I)_m != 0 for all m <= " +
                            std::to_string(bound));
}

/// A homogeneous ideal (f_1, ..., f_n), validated R_+-primary.
class IdealSpec {
public:
    /// bound = 0 selects 2 * sum d_i.
    IdealSpec(GradedRing ring, std::vector<Poly> gens, std::int64_t primarity_bound = 0)
        : ring_(std::move(ring)), gens_(std::move(gens)) {
        if (gens_.empty()) throw not_primary_error("ideal has no generators");
        for (const auto& g : gens_) {
            if (g.nvars() != ring_.nvars() || !(g.field() == ring_.field()))
                throw ring_error("generator does not live in the ring");
            if (g.is_zero()) throw ring_error("generators must be nonzero");
            if (!g.is_homogeneous()) throw ring_error("generators must be homogeneous");
            if (g.degree() < 1) throw ring_error("generators must have positive degree");
            degrees_.push_back(g.degree());
        }
        const std::int64_t sum = detail::degree_sum(degrees_);
        std::int64_t bound = primarity_bound > 0 ? primarity_bound : 2 * sum;
        if (bound < sum) throw std::invalid_argument("primarity bound must be at least sum d_i");
        primary_degree_ = check_primary(ring_, gens_, degrees_, bound);
        if (gens_.size() < 2) throw ring_error("need at least two generators");
    }

    const GradedRing& ring() const noexcept { return ring_; }
    const std::vector<Poly>& gens() const noexcept { return gens_; }
    const std::vector<std::int64_t>& degrees() const noexcept { return degrees_; }
    std::size_t size() const noexcept { return gens_.size(); }
    /// First m with (R/I)_m = 0.
    std::int64_t primary_degree() const noexcept { return primary_degree_; }

    FrobeniusMap frobenius_map(std::uint64_t q, std::uint64_t max_matrix_dim = 0) const {
        return FrobeniusMap(ring_, gens_, degrees_, q, max_matrix_dim);
    }

private:
    GradedRing ring_;
    std::vector<Poly> gens_;
    std::vector<std::int64_t> degrees_;
    std::int64_t primary_degree_ = 0;
};

inline std::uint64_t graded_piece_colength(const IdealSpec& ideal, std::uint64_t q, std::int64_t m) {
    return ideal.frobenius_map(q).degree(m).colength();
}

inline std::uint64_t syzygy_h0(const IdealSpec& ideal, std::uint64_t q, std::int64_t m) {
    return ideal.frobenius_map(q).degree(m).syzygy_h0();
}

/// phi(q) together with its degreewise breakdown.
struct HKRow {
    std::uint64_t q = 0;
    std::uint64_t phi = 0;
    /// First m with colength 0; all higher degrees vanish too.
    std::int64_t cutoff = 0;
    /// Per-degree data for m = 0 .. cutoff - 1 (plus the verified zero tail).
    std::vector<DegreeCounts> degrees;

    std::uint64_t colength(std::int64_t m) const {
        if (m < 0 || m >= static_cast<std::int64_t>(degrees.size())) return 0;
        return degrees[static_cast<std::size_t>(m)].colength();
    }
};

struct HKFunctionTable {
    std::map<std::uint64_t, HKRow> rows;
};

inline std::int64_t default_degree_cap(const IdealSpec& ideal, std::uint64_t q) {
    return static_cast<std::int64_t>(q) * detail::max_pair_sum(ideal.degrees()) + ideal.ring().relation_degree() +
           detail::degree_sum(ideal.degrees());
}

/// phi(q) = length(R / I^[q]) by summing colengths degree by degree.
///
/// Summation stops at the first vanishing degree, after checking that the
/// next `zero_slack` degrees vanish as well.
inline HKRow hk_value(const IdealSpec& ideal, std::uint64_t q, const EngineLimits& limits = {}) {
    if (!is_power_of(q, ideal.ring().field().characteristic())) throw std::invalid_argument("q must be a power of p");
    const FrobeniusMap map = ideal.frobenius_map(q, limits.max_matrix_dim);
    const std::int64_t cap = limits.max_degree > 0 ? limits.max_degree : default_degree_cap(ideal, q);
    const std::int64_t slack = limits.zero_slack > 0 ? limits.zero_slack : detail::degree_sum(ideal.degrees());
    const unsigned workers = std::max(1u, limits.workers);

    HKRow row;
    row.q = q;
    std::int64_t first_zero = -1;
    std::int64_t m = 0;
    while (true) {
        std::vector<DegreeCounts> batch;
        if (workers == 1) {
            batch.push_back(map.degree(m));
        } else {
            std::vector<std::future<DegreeCounts>> fut;
            for (unsigned w = 0; w < workers; ++w)
                fut.push_back(std::async(std::launch::async, [&map, mm = m + w] { return map.degree(mm); }));
            for (auto& f : fut) batch.push_back(f.get());
        }
        for (const auto& dc : batch) {
            if (first_zero < 0 && dc.m > cap)
                throw cap_exceeded_error("Hilbert-Kunz summation did not terminate by degree " + std::to_string(cap) +
                                         " (q = " + std::to_string(q) + ")");
            row.degrees.push_back(dc);
            if (first_zero < 0) {
                if (dc.colength() == 0) first_zero = dc.m;
                else row.phi += dc.colength();
            } else if (dc.colength() != 0) {
                throw std::logic_error("nonzero graded piece above a vanishing one at degree " + std::to_string(dc.m));
            }
            if (first_zero >= 0 && dc.m >= first_zero + slack) {
                row.cutoff = first_zero;
                return row;
            }
        }
        m += static_cast<std::int64_t>(batch.size());
    }
}

inline HKFunctionTable hk_table(const IdealSpec& ideal, const std::vector<std::uint64_t>& qs, const EngineLimits& limits = {}) {
    HKFunctionTable t;
    for (auto q : qs) t.rows.emplace(q, hk_value(ideal, q, limits));
    return t;
}

} // namespace hk
