#pragma once

#include <hk/poly.hpp>

#include <cctype>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace hk {

/// Raised for malformed polynomial text; `position()` is a 0-based offset.
class parse_error : public poly_error {
public:
    parse_error(const std::string& what, std::size_t pos)
        : poly_error(what + " at position " + std::to_string(pos)), pos_(pos) {}
    std::size_t position() const noexcept { return pos_; }

private:
    std::size_t pos_;
};

/*
 * Grammar (whitespace is ignored between tokens):
 *
 *   expr    := [ '+' | '-' ] term { ( '+' | '-' ) term }
 *   term    := factor { [ '*' ] factor }
 *   factor  := primary [ '^' integer ]
 *   primary := integer | variable | '(' expr ')'
 *
 * A variable is the longest declared name matching at the current offset, so
 * with variables x, y the text `2xy^2` reads as 2 * x * y^2.
 */
class PolyParser {
public:
    static constexpr std::uint64_t max_exponent = 1u << 24;

    PolyParser(PrimeField field, std::vector<std::string> vars) : field_(field), vars_(std::move(vars)) {
        if (vars_.empty()) throw poly_error("no variables declared");
        for (const auto& v : vars_) {
            if (v.empty() || !std::isalpha(static_cast<unsigned char>(v[0])))
                throw poly_error("invalid variable name '" + v + "'");
        }
    }

    Poly parse(std::string_view text) {
        text_ = text;
        pos_ = 0;
        Poly r = expr();
        skip_ws();
        if (pos_ != text_.size()) throw parse_error("unexpected '" + std::string(1, text_[pos_]) + "'", pos_);
        return r;
    }

private:
    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    bool at(char c) {
        skip_ws();
        return pos_ < text_.size() && text_[pos_] == c;
    }
    bool starts_factor() {
        skip_ws();
        if (pos_ >= text_.size()) return false;
        char c = text_[pos_];
        return std::isdigit(static_cast<unsigned char>(c)) || std::isalpha(static_cast<unsigned char>(c)) || c == '(';
    }

    Poly expr() {
        Poly acc(field_, vars_.size());
        bool neg = false;
        if (at('+')) { ++pos_; }
        else if (at('-')) { ++pos_; neg = true; }
        Poly t = term();
        acc += neg ? -t : t;
        while (true) {
            if (at('+')) { ++pos_; acc += term(); }
            else if (at('-')) { ++pos_; acc -= term(); }
            else break;
        }
        return acc;
    }

    Poly term() {
        Poly acc = factor();
        while (true) {
            if (at('*')) {
                ++pos_;
                acc = acc * factor();
            } else if (starts_factor()) {
                acc = acc * factor();
            } else {
                break;
            }
        }
        return acc;
    }

    Poly factor() {
        Poly base = primary();
        if (at('^')) {
            ++pos_;
            skip_ws();
            std::size_t start = pos_;
            std::uint64_t e = integer();
            if (e > max_exponent) throw parse_error("exponent overflow", start);
            base = base.pow(e);
        }
        return base;
    }

    Poly primary() {
        skip_ws();
        if (pos_ >= text_.size()) throw parse_error("unexpected end of input", pos_);
        char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            Poly inner = expr();
            if (!at(')')) throw parse_error("expected ')'", pos_);
            ++pos_;
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::uint64_t residue = integer_mod();
            return Poly::constant(field_, vars_.size(), static_cast<std::int64_t>(residue));
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t best = vars_.size(), best_len = 0;
            for (std::size_t i = 0; i < vars_.size(); ++i) {
                const auto& v = vars_[i];
                if (v.size() > best_len && text_.substr(pos_, v.size()) == v) {
                    best = i;
                    best_len = v.size();
                }
            }
            if (best == vars_.size()) {
                std::size_t end = pos_;
                while (end < text_.size() && std::isalnum(static_cast<unsigned char>(text_[end]))) ++end;
                throw parse_error("unknown variable '" + std::string(text_.substr(pos_, end - pos_)) + "'", pos_);
            }
            pos_ += best_len;
            return Poly::variable(field_, vars_.size(), best);
        }
        throw parse_error("unexpected '" + std::string(1, c) + "'", pos_);
    }

    std::uint64_t integer() {
        std::size_t start = pos_;
        std::uint64_t v = 0;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            v = v * 10 + static_cast<std::uint64_t>(text_[pos_] - '0');
            if (v > (std::uint64_t{1} << 40)) throw parse_error("exponent overflow", start);
            ++pos_;
        }
        if (pos_ == start) throw parse_error("expected integer", pos_);
        return v;
    }

    // Coefficients may be arbitrarily long; only the residue matters.
    std::uint64_t integer_mod() {
        std::uint64_t p = field_.characteristic(), v = 0;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            v = (v * 10 + static_cast<std::uint64_t>(text_[pos_] - '0')) % p;
            ++pos_;
        }
        return v;
    }

    PrimeField field_;
    std::vector<std::string> vars_;
    std::string_view text_;
    std::size_t pos_ = 0;
};

inline Poly parse_poly(std::string_view text, const std::vector<std::string>& vars, const PrimeField& field) {
    return PolyParser(field, vars).parse(text);
}

} // namespace hk
