#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace isomat {

/// Variables of the polynomial ring used across the interlace/Tutte
/// machinery, in canonical display order x > y > u > s > z.
enum class Var : std::uint8_t { x = 0, y = 1, u = 2, s = 3, z = 4 };

inline const char* var_name(Var v) {
    static const char* names[5] = {"x", "y", "u", "s", "z"};
    return names[static_cast<std::size_t>(v)];
}

/// Sparse multivariate polynomial with exact integer coefficients.
/// Exponents are limited to 0..255 per variable, plenty for subset
/// expansions at desk scale; zero-coefficient terms are never stored.
class MultiPoly {
public:
    using Key = std::uint64_t;  // 8 bits per variable, x in the top byte

    MultiPoly() = default;

    static MultiPoly constant(long long c) {
        MultiPoly p;
        if (c) p.terms_[0] = c;
        return p;
    }

    static MultiPoly variable(Var v, unsigned exp = 1, long long coeff = 1) {
        MultiPoly p;
        if (coeff) p.terms_[key_of(v, exp)] = coeff;
        return p;
    }

    bool is_zero() const { return terms_.empty(); }

    long long coefficient(std::initializer_list<std::pair<Var, unsigned>> exps) const {
        Key k = 0;
        for (auto [v, e] : exps) k |= key_of(v, e);
        auto it = terms_.find(k);
        return it == terms_.end() ? 0 : it->second;
    }

    MultiPoly& operator+=(const MultiPoly& o) {
        for (auto [k, c] : o.terms_) add_term(k, c);
        return *this;
    }

    MultiPoly& operator-=(const MultiPoly& o) {
        for (auto [k, c] : o.terms_) add_term(k, -c);
        return *this;
    }

    friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
    friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }

    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
        MultiPoly out;
        for (auto [ka, ca] : a.terms_)
            for (auto [kb, cb] : b.terms_) out.add_term(add_keys(ka, kb), ca * cb);
        return out;
    }

    MultiPoly& operator*=(const MultiPoly& o) { return *this = *this * o; }

    MultiPoly pow(unsigned e) const {
        MultiPoly out = constant(1);
        for (unsigned i = 0; i < e; ++i) out *= *this;
        return out;
    }

    /// Substitute an integer value for one variable.
    MultiPoly substitute(Var v, long long value) const {
        MultiPoly out;
        for (auto [k, c] : terms_) {
            unsigned e = exponent_of(k, v);
            long long scale = 1;
            for (unsigned i = 0; i < e; ++i) scale *= value;
            out.add_term(k & ~mask_of(v), c * scale);
        }
        return out;
    }

    /// Terms in canonical order (exponent-lexicographic over x,y,u,s,z,
    /// highest first).
    std::vector<std::pair<Key, long long>> sorted_terms() const {
        std::vector<std::pair<Key, long long>> out(terms_.rbegin(), terms_.rend());
        return out;
    }

    static unsigned exponent_of(Key k, Var v) {
        return static_cast<unsigned>((k >> shift_of(v)) & 0xffu);
    }

    std::string to_string() const {
        if (terms_.empty()) return "0";
        std::string out;
        bool first = true;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            auto [k, c] = *it;
            long long mag = c < 0 ? -c : c;
            if (first) {
                if (c < 0) out += "-";
                first = false;
            } else {
                out += c < 0 ? " - " : " + ";
            }
            std::string vars;
            for (Var v : {Var::x, Var::y, Var::u, Var::s, Var::z}) {
                unsigned e = exponent_of(k, v);
                if (!e) continue;
                if (!vars.empty()) vars += "*";
                vars += var_name(v);
                if (e > 1) vars += "^" + std::to_string(e);
            }
            if (vars.empty()) {
                out += std::to_string(mag);
            } else if (mag == 1) {
                out += vars;
            } else {
                out += std::to_string(mag) + "*" + vars;
            }
        }
        return out;
    }

    friend bool operator==(const MultiPoly&, const MultiPoly&) = default;

private:
    static unsigned shift_of(Var v) { return 8 * (4 - static_cast<unsigned>(v)); }
    static Key mask_of(Var v) { return Key{0xff} << shift_of(v); }

    static Key key_of(Var v, unsigned exp) {
        if (exp > 255) throw std::overflow_error("exponent above 255");
        return Key{exp} << shift_of(v);
    }

    static Key add_keys(Key a, Key b) {
        for (Var v : {Var::x, Var::y, Var::u, Var::s, Var::z})
            if (exponent_of(a, v) + exponent_of(b, v) > 255)
                throw std::overflow_error("exponent above 255");
        return a + b;
    }

    void add_term(Key k, long long c) {
        if (!c) return;
        auto [it, inserted] = terms_.try_emplace(k, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    std::map<Key, long long> terms_;
};

}  // namespace isomat
