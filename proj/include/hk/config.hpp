#pragma once

#include <hk/hk_engine.hpp>
#include <hk/rational.hpp>

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace hk {

class config_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {
inline std::string trim(std::string s) {
    auto issp = [](unsigned char c) { return std::isspace(c) != 0; };
    s.erase(s.begin(), std::find_if_not(s.begin(), s.end(), issp));
    s.erase(std::find_if_not(s.rbegin(), s.rend(), issp).base(), s.end());
    return s;
}

inline std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep)) {
        cur = trim(cur);
        if (!cur.empty()) out.push_back(cur);
    }
    return out;
}

inline std::uint64_t to_u64(const std::string& key, const std::string& v) {
    try {
        std::size_t used = 0;
        auto x = std::stoull(v, &used);
        if (used != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw config_error("'" + key + "' expects a nonnegative integer, got '" + v + "'");
    }
}
} // namespace detail

/// Flat `key = value` run configuration.
///
///     p = 5
///     vars = x, y, z
///     hypersurface = x^3 + y^3 + z^3
///     gens = x; y; z
///     q = 5, 25, 125        # or: e = 1..3
///
/// Caps and tuning knobs are optional keys with conservative defaults.
class RunConfig {
public:
    static inline const std::set<std::string> known_keys = {
        "p", "vars", "hypersurface", "gens", "q", "e",
        "max_degree", "max_matrix_dim", "max_e", "max_q", "zero_slack", "workers", "primarity_bound",
        "window_constant", "denominator_bound", "per_degree"};

    static RunConfig parse(const std::string& text) {
        RunConfig c;
        c.raw_ = text;
        std::istringstream in(text);
        std::string line;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
            line = detail::trim(line);
            if (line.empty()) continue;
            auto eq = line.find('=');
            if (eq == std::string::npos) throw config_error("line " + std::to_string(lineno) + ": expected key = value");
            std::string key = detail::trim(line.substr(0, eq));
            std::string val = detail::trim(line.substr(eq + 1));
            if (!known_keys.count(key)) throw config_error("line " + std::to_string(lineno) + ": unknown key '" + key + "'");
            if (c.values_.count(key)) throw config_error("line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
            c.values_[key] = val;
        }
        c.validate();
        return c;
    }

    static RunConfig load(const std::string& path) {
        std::ifstream f(path);
        if (!f) throw config_error("cannot read config file '" + path + "'");
        std::stringstream ss;
        ss << f.rdbuf();
        return parse(ss.str());
    }

    /// The configuration text exactly as given.
    const std::string& raw() const noexcept { return raw_; }

    std::uint64_t p() const { return detail::to_u64("p", values_.at("p")); }
    PrimeField field() const { return PrimeField(p()); }
    std::vector<std::string> vars() const { return detail::split(values_.at("vars"), ','); }
    std::optional<std::string> hypersurface() const { return get("hypersurface"); }
    std::vector<std::string> gens() const { return detail::split(values_.at("gens"), ';'); }

    /// The q list; q values are checked to be powers of p within max_q.
    std::vector<std::uint64_t> qs() const {
        std::vector<std::uint64_t> out;
        if (auto q = get("q")) {
            for (const auto& s : detail::split(*q, ',')) out.push_back(detail::to_u64("q", s));
        } else if (auto e = get("e")) {
            auto dots = e->find("..");
            if (dots == std::string::npos) throw config_error("'e' expects a range like 1..3");
            auto lo = detail::to_u64("e", detail::trim(e->substr(0, dots)));
            auto hi = detail::to_u64("e", detail::trim(e->substr(dots + 2)));
            if (lo > hi) throw config_error("empty e range");
            PrimeField f = field();
            for (auto k = lo; k <= hi; ++k) out.push_back(frobenius_power(f, static_cast<unsigned>(k)));
        }
        for (auto q : out) {
            if (!is_power_of(q, p())) throw config_error("q = " + std::to_string(q) + " is not a power of p");
            if (q > max_q())
                throw cap_exceeded_error("q = " + std::to_string(q) + " exceeds max_q = " + std::to_string(max_q()));
        }
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }

    std::uint64_t max_q() const { return get_u64("max_q", 4096); }
    unsigned max_e() const { return static_cast<unsigned>(get_u64("max_e", 3)); }
    std::int64_t primarity_bound() const { return static_cast<std::int64_t>(get_u64("primarity_bound", 0)); }
    bool per_degree() const {
        auto v = get("per_degree");
        return v && (*v == "true" || *v == "yes" || *v == "1");
    }
    std::optional<Rational> window_constant() const {
        if (auto v = get("window_constant")) return Rational::parse(*v);
        return std::nullopt;
    }
    std::optional<std::int64_t> denominator_bound() const {
        if (auto v = get("denominator_bound")) return static_cast<std::int64_t>(detail::to_u64("denominator_bound", *v));
        return std::nullopt;
    }

    EngineLimits limits() const {
        EngineLimits l;
        l.max_matrix_dim = get_u64("max_matrix_dim", 6000);
        l.max_degree = static_cast<std::int64_t>(get_u64("max_degree", 0));
        l.zero_slack = static_cast<std::int64_t>(get_u64("zero_slack", 0));
        l.workers = static_cast<unsigned>(get_u64("workers", 1));
        return l;
    }

    GradedRing ring() const {
        PrimeField f = field();
        if (auto h = hypersurface()) return GradedRing::hypersurface(f, vars(), parse_poly(*h, vars(), f));
        return GradedRing::free(f, vars());
    }

    IdealSpec ideal() const {
        GradedRing r = ring();
        std::vector<Poly> g;
        for (const auto& s : gens()) g.push_back(r.parse(s));
        return IdealSpec(std::move(r), std::move(g), primarity_bound());
    }

    std::optional<std::string> get(const std::string& key) const {
        auto it = values_.find(key);
        if (it == values_.end()) return std::nullopt;
        return it->second;
    }

private:
    std::uint64_t get_u64(const std::string& key, std::uint64_t dflt) const {
        auto v = get(key);
        return v ? detail::to_u64(key, *v) : dflt;
    }

    void validate() const {
        for (const char* k : {"p", "vars", "gens"})
            if (!values_.count(k)) throw config_error(std::string("missing required key '") + k + "'");
        if (values_.count("q") && values_.count("e")) throw config_error("give either 'q' or 'e', not both");
        (void)field();
        if (vars().empty()) throw config_error("no variables declared");
        if (gens().empty()) throw config_error("no generators given");
    }

    std::string raw_;
    std::map<std::string, std::string> values_;
};

/// Every line of `text` prefixed with "# ".
inline std::string echo_as_comment(const std::string& text) {
    std::string out;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) out += "# " + line + "\n";
    return out;
}

} // namespace hk
