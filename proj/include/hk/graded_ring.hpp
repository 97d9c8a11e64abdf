#pragma once

#include <hk/linalg.hpp>
#include <hk/poly.hpp>
#include <hk/poly_parser.hpp>

#include <algorithm>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace hk {

class ring_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// C(n, k) for small arguments; 0 when n < k or n < 0.
inline std::uint64_t binomial(std::int64_t n, std::int64_t k) {
    if (k < 0 || n < 0 || n < k) return 0;
    k = std::min(k, n - k);
    unsigned __int128 r = 1;
    for (std::int64_t i = 1; i <= k; ++i) {
        r = r * static_cast<unsigned __int128>(n - k + i) / static_cast<unsigned __int128>(i);
        if (r > UINT64_MAX) throw std::overflow_error("binomial overflow");
    }
    return static_cast<std::uint64_t>(r);
}

/// The free ring K[X_1..X_N] or a hypersurface quotient K[X_1..X_N]/(H).
///
/// H is stored monic with respect to the grevlex leading term.
class GradedRing {
public:
    enum class Kind { Free, Hypersurface };

    static GradedRing free(PrimeField field, std::vector<std::string> vars) {
        if (vars.empty()) throw ring_error("ring needs at least one variable");
        return GradedRing(field, std::move(vars), std::nullopt);
    }

    static GradedRing hypersurface(PrimeField field, std::vector<std::string> vars, const Poly& h) {
        if (h.nvars() != vars.size()) throw ring_error("relation uses a different variable count");
        if (h.is_zero()) throw ring_error("relation must be nonzero");
        if (!h.is_homogeneous()) throw ring_error("relation must be homogeneous");
        if (h.degree() < 1) throw ring_error("relation must have positive degree");
        Poly monic = h.scaled(field.inv(h.leading_coefficient()));
        return GradedRing(field, std::move(vars), std::move(monic));
    }

    Kind kind() const noexcept { return relation_ ? Kind::Hypersurface : Kind::Free; }
    const PrimeField& field() const noexcept { return field_; }
    const std::vector<std::string>& vars() const noexcept { return vars_; }
    std::size_t nvars() const noexcept { return vars_.size(); }
    const std::optional<Poly>& relation() const noexcept { return relation_; }
    std::int64_t relation_degree() const noexcept { return relation_ ? relation_->degree() : 0; }

    const Monomial& relation_leading_monomial() const {
        if (!relation_) throw ring_error("free ring has no relation");
        return relation_->leading_monomial();
    }

    /// deg O_Y(1) of the curve Proj R: h for a plane curve, 1 for P^1.
    std::int64_t curve_degree() const {
        if (kind() == Kind::Free && nvars() == 2) return 1;
        if (kind() == Kind::Hypersurface && nvars() == 3) return relation_degree();
        throw ring_error("ring is not two-dimensional (need K[x,y] or K[x,y,z]/(H))");
    }

    /// dim R_m, computed combinatorially; 0 for negative m.
    std::uint64_t hilbert_dim(std::int64_t m) const {
        if (m < 0) return 0;
        const auto n = static_cast<std::int64_t>(nvars());
        std::uint64_t d = binomial(m + n - 1, n - 1);
        if (relation_) d -= binomial(m - relation_degree() + n - 1, n - 1);
        return d;
    }

    Poly parse(std::string_view text) const { return parse_poly(text, vars_, field_); }

    /// Remainder of f under division by H. Only defined for hypersurfaces.
    Poly normal_form(const Poly& f) const {
        if (!relation_) throw ring_error("normal_form requires a hypersurface ring");
        return reduce(f);
    }

    /// Normal form for hypersurfaces, identity for the free ring.
    Poly reduce(const Poly& f) const {
        if (f.nvars() != nvars()) throw ring_error("polynomial has wrong variable count");
        if (!(f.field() == field_)) throw ring_error("polynomial lives over a different field");
        if (!relation_) return f;
        const Monomial& lt = relation_->leading_monomial();
        Poly work = f, rem(field_, nvars());
        while (!work.is_zero()) {
            auto it = work.terms().begin();
            Monomial m = it->first;
            auto c = it->second;
            if (lt.divides(m)) {
                work -= relation_->times_monomial(lt.quotient_of(m)).scaled(c);
            } else {
                rem.add_term(m, c);
                work -= Poly::monomial(field_, m, c);
            }
        }
        return rem;
    }

    /// Degree-m monomials not divisible by LT(H), descending grevlex.
    std::vector<Monomial> basis(std::int64_t m) const {
        auto all = graded_piece_basis(nvars(), m);
        if (!relation_) return all;
        const Monomial& lt = relation_->leading_monomial();
        std::erase_if(all, [&](const Monomial& u) { return lt.divides(u); });
        return all;
    }

    Poly multiply(const Poly& a, const Poly& b) const { return reduce(a * b); }

    /// f^q for q a power of the characteristic, via c^q = c and
    /// (a + b)^q = a^q + b^q, then reduced.
    Poly frobenius(const Poly& f, std::uint64_t q) const {
        if (!is_power_of(q, field_.characteristic())) throw ring_error("q must be a power of p");
        Poly r(field_, nvars());
        for (const auto& [m, c] : f.terms()) r.add_term(m.pow(q), c);
        return reduce(r);
    }

private:
    GradedRing(PrimeField field, std::vector<std::string> vars, std::optional<Poly> rel)
        : field_(field), vars_(std::move(vars)), relation_(std::move(rel)) {}

    PrimeField field_;
    std::vector<std::string> vars_;
    std::optional<Poly> relation_;
};

inline std::vector<Monomial> basis_mod_H(const GradedRing& ring, std::int64_t m) { return ring.basis(m); }

/// Coordinates on one graded piece R_m: monomial basis, index lookup and
/// memoized normal forms of arbitrary degree-m monomials as sparse columns.
class DegreePiece {
public:
    using Column = std::vector<SparseEntry>;

    DegreePiece(const GradedRing& ring, std::int64_t m) : ring_(&ring), degree_(m) {
        if (ring.kind() == GradedRing::Kind::Hypersurface) {
            basis_ = ring.basis(m);
            index_.reserve(basis_.size());
            for (std::size_t i = 0; i < basis_.size(); ++i) index_.emplace(basis_[i], static_cast<std::uint32_t>(i));
            const Poly& h = *ring.relation();
            lt_ = h.leading_monomial();
            for (auto it = std::next(h.terms().begin()); it != h.terms().end(); ++it)
                tail_.emplace_back(it->first, ring.field().neg(it->second));
        }
        dim_ = ring.hilbert_dim(m);
    }

    std::int64_t degree() const noexcept { return degree_; }
    std::size_t dim() const noexcept { return dim_; }

    /// Index of a reduced degree-m monomial in the basis.
    std::uint32_t index_of(const Monomial& u) const {
        if (ring_->kind() == GradedRing::Kind::Free) return free_rank(u);
        auto it = index_.find(u);
        if (it == index_.end()) throw ring_error("monomial is not a basis element of this degree");
        return it->second;
    }

    /// Adds c * NF(u) to `out` (entries may repeat rows).
    void append_normal_form(const Monomial& u, std::uint32_t c, Column& out) {
        if (ring_->kind() == GradedRing::Kind::Free) {
            out.emplace_back(free_rank(u), c);
            return;
        }
        const Column& nf = normal_form_of(u);
        const PrimeField& f = ring_->field();
        for (auto [r, v] : nf) out.emplace_back(r, f.mul(v, c));
    }

    /// Normal form of a degree-m monomial, memoized.
    const Column& normal_form_of(const Monomial& u) {
        if (auto it = memo_.find(u); it != memo_.end()) return it->second;
        Column col;
        if (!lt_.divides(u)) {
            col.emplace_back(index_of(u), 1);
        } else {
            // u = LT * w  ==>  u = -(H - LT) * w  (mod H); every term is smaller than u.
            Monomial w = lt_.quotient_of(u);
            Column raw;
            for (const auto& [t, c] : tail_) {
                const Column& sub = normal_form_of(t * w);
                for (auto [r, v] : sub) raw.emplace_back(r, ring_->field().mul(v, c));
            }
            col = combine(raw, ring_->field());
        }
        return memo_.emplace(u, std::move(col)).first->second;
    }

    /// Sort by row, sum duplicates, drop zeros.
    static Column combine(Column raw, const PrimeField& f) {
        std::sort(raw.begin(), raw.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        Column out;
        out.reserve(raw.size());
        for (auto [r, v] : raw) {
            if (!out.empty() && out.back().first == r) out.back().second = f.add(out.back().second, v);
            else out.emplace_back(r, v);
            if (out.back().second == 0) out.pop_back();
        }
        return out;
    }

private:
    // Position of u among degree-m monomials in descending grevlex: ascending
    // in the last exponent, then recursively in the remaining variables.
    std::uint32_t free_rank(const Monomial& u) const {
        const std::size_t n = u.nvars();
        std::uint64_t idx = 0;
        std::int64_t m = degree_;
        for (std::size_t v = n; v-- > 1;) {
            const std::int64_t e = u[v];
            const auto k = static_cast<std::int64_t>(v) - 1; // remaining vars minus one
            if (k == 0) {
                idx += static_cast<std::uint64_t>(e);
            } else {
                for (std::int64_t c = 0; c < e; ++c) idx += binomial(m - c + k, k);
            }
            m -= e;
        }
        return static_cast<std::uint32_t>(idx);
    }

    const GradedRing* ring_;
    std::int64_t degree_;
    std::size_t dim_ = 0;
    std::vector<Monomial> basis_;
    std::unordered_map<Monomial, std::uint32_t, MonomialHash> index_;
    Monomial lt_;
    std::vector<std::pair<Monomial, std::uint32_t>> tail_;
    std::unordered_map<Monomial, Column, MonomialHash> memo_;
};

} // namespace hk
