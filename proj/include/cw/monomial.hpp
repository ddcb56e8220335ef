#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>

#include "cw/errors.hpp"

namespace cw {

// Largest variable count any ring in the toolkit may declare.
constexpr std::size_t kMaxVars = 12;

// Exponent vector with cached total degree. Unused slots stay zero, so two
// monomials of the same ring compare correctly regardless of ring size.
struct Monomial {
    std::array<std::uint16_t, kMaxVars> e{};
    std::uint32_t deg = 0;

    static Monomial one() { return {}; }
    static Monomial var(std::size_t idx, unsigned power = 1) {
        Monomial m;
        m.set(idx, power);
        return m;
    }

    unsigned operator[](std::size_t i) const { return e[i]; }

    void set(std::size_t i, unsigned v) {
        if (i >= kMaxVars) throw DomainError("too many variables");
        if (v > 0xFFFF) throw ResourceError("exponent overflow");
        deg = deg - e[i] + v;
        e[i] = static_cast<std::uint16_t>(v);
    }

    Monomial operator*(const Monomial& o) const {
        Monomial r;
        for (std::size_t i = 0; i < kMaxVars; ++i) {
            unsigned s = unsigned(e[i]) + o.e[i];
            if (s > 0xFFFF) throw ResourceError("exponent overflow");
            r.e[i] = static_cast<std::uint16_t>(s);
        }
        r.deg = deg + o.deg;
        return r;
    }

    bool divides(const Monomial& o) const {
        if (deg > o.deg) return false;
        for (std::size_t i = 0; i < kMaxVars; ++i)
            if (e[i] > o.e[i]) return false;
        return true;
    }

    // Requires divides(o); returns o / *this.
    Monomial quotient_of(const Monomial& o) const {
        Monomial r;
        for (std::size_t i = 0; i < kMaxVars; ++i) r.e[i] = static_cast<std::uint16_t>(o.e[i] - e[i]);
        r.deg = o.deg - deg;
        return r;
    }

    Monomial lcm(const Monomial& o) const {
        Monomial r;
        std::uint32_t d = 0;
        for (std::size_t i = 0; i < kMaxVars; ++i) {
            r.e[i] = std::max(e[i], o.e[i]);
            d += r.e[i];
        }
        r.deg = d;
        return r;
    }

    bool coprime(const Monomial& o) const {
        for (std::size_t i = 0; i < kMaxVars; ++i)
            if (e[i] && o.e[i]) return false;
        return true;
    }

    bool operator==(const Monomial& o) const { return e == o.e; }
    bool operator!=(const Monomial& o) const { return e != o.e; }
};

// Three-way comparisons; positive means a > b.
inline int lex_cmp(const Monomial& a, const Monomial& b, std::size_t from = 0, std::size_t to = kMaxVars) {
    for (std::size_t i = from; i < to; ++i)
        if (a.e[i] != b.e[i]) return a.e[i] > b.e[i] ? 1 : -1;
    return 0;
}

inline int grlex_cmp(const Monomial& a, const Monomial& b) {
    if (a.deg != b.deg) return a.deg > b.deg ? 1 : -1;
    return lex_cmp(a, b);
}

// Graded reverse lex restricted to slots [from, to).
inline int grevlex_cmp(const Monomial& a, const Monomial& b, std::size_t from = 0, std::size_t to = kMaxVars) {
    std::uint32_t da = 0, db = 0;
    if (from == 0 && to == kMaxVars) {
        da = a.deg;
        db = b.deg;
    } else {
        for (std::size_t i = from; i < to; ++i) {
            da += a.e[i];
            db += b.e[i];
        }
    }
    if (da != db) return da > db ? 1 : -1;
    for (std::size_t i = to; i-- > from;)
        if (a.e[i] != b.e[i]) return a.e[i] < b.e[i] ? 1 : -1;
    return 0;
}

struct MonomialHash {
    std::size_t operator()(const Monomial& m) const noexcept {
        std::size_t h = 1469598103934665603ull;
        for (auto v : m.e) h = (h ^ v) * 1099511628211ull;
        return h;
    }
};

}  // namespace cw
