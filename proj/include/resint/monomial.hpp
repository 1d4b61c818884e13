#ifndef RESINT_MONOMIAL_HPP
#define RESINT_MONOMIAL_HPP

#include <array>
#include <cstdint>
#include <stdexcept>

namespace resint {

// Hard cap on ambient variables (base ring plus T-extension plus helper vars).
inline constexpr int kMaxVars = 24;

/* Exponent vector with cached total degree.  Fixed-size POD so monomials can
   be copied and compared without allocation; the ring knows how many entries
   are live. */
struct Monomial {
    std::int32_t deg = 0;
    std::array<std::uint8_t, kMaxVars> e{};

    static Monomial one() { return Monomial{}; }
    static Monomial var(int i, int pow = 1) {
        Monomial m;
        m.e[i] = static_cast<std::uint8_t>(pow);
        m.deg = pow;
        return m;
    }
    bool is_one() const { return deg == 0; }
    bool operator==(const Monomial& o) const { return deg == o.deg && e == o.e; }
    bool operator!=(const Monomial& o) const { return !(*this == o); }
    // structural order for container keys only; ring semantics live in mono_cmp
    bool operator<(const Monomial& o) const { return deg != o.deg ? deg < o.deg : e < o.e; }
};

inline Monomial mono_mul(const Monomial& a, const Monomial& b, int n) {
    Monomial r;
    r.deg = a.deg + b.deg;
    for (int i = 0; i < n; ++i) {
        int s = a.e[i] + b.e[i];
        if (s > 255)
            throw std::overflow_error("monomial exponent overflow");
        r.e[i] = static_cast<std::uint8_t>(s);
    }
    return r;
}

inline bool mono_divides(const Monomial& a, const Monomial& b, int n) {
    if (a.deg > b.deg)
        return false;
    for (int i = 0; i < n; ++i)
        if (a.e[i] > b.e[i])
            return false;
    return true;
}

// b / a, assuming divisibility
inline Monomial mono_div(const Monomial& b, const Monomial& a, int n) {
    Monomial r;
    r.deg = b.deg - a.deg;
    for (int i = 0; i < n; ++i)
        r.e[i] = static_cast<std::uint8_t>(b.e[i] - a.e[i]);
    return r;
}

inline Monomial mono_lcm(const Monomial& a, const Monomial& b, int n) {
    Monomial r;
    int d = 0;
    for (int i = 0; i < n; ++i) {
        r.e[i] = a.e[i] > b.e[i] ? a.e[i] : b.e[i];
        d += r.e[i];
    }
    r.deg = d;
    return r;
}

inline bool mono_coprime(const Monomial& a, const Monomial& b, int n) {
    for (int i = 0; i < n; ++i)
        if (a.e[i] && b.e[i])
            return false;
    return true;
}

/* Monomial orders.  `grevlex` and `lex` are global orders on all n
   variables; `elim(split)` is the block order that compares the suffix
   block [split, n) grevlex-first and then the prefix [0, split) grevlex --
   the T-elimination order used inside the Groebner engine. */
enum class OrderKind { grevlex, lex, elim };

struct MonoOrder {
    OrderKind kind = OrderKind::grevlex;
    int split = 0; // first index of the dominant suffix block (elim only)
};

namespace detail {
// grevlex comparison restricted to variables [lo, hi)
inline int cmp_grevlex_range(const Monomial& a, const Monomial& b, int lo, int hi) {
    int da = 0, db = 0;
    for (int i = lo; i < hi; ++i) {
        da += a.e[i];
        db += b.e[i];
    }
    if (da != db)
        return da < db ? -1 : 1;
    for (int i = hi - 1; i >= lo; --i)
        if (a.e[i] != b.e[i])
            return a.e[i] > b.e[i] ? -1 : 1; // larger exponent in a *later* var is smaller
    return 0;
}
} // namespace detail

// Returns <0, 0, >0 as a < b, a == b, a > b in the given order.
inline int mono_cmp(const MonoOrder& ord, int n, const Monomial& a, const Monomial& b) {
    switch (ord.kind) {
    case OrderKind::grevlex:
        return detail::cmp_grevlex_range(a, b, 0, n);
    case OrderKind::lex:
        for (int i = 0; i < n; ++i)
            if (a.e[i] != b.e[i])
                return a.e[i] < b.e[i] ? -1 : 1;
        return 0;
    case OrderKind::elim: {
        int c = detail::cmp_grevlex_range(a, b, ord.split, n);
        if (c)
            return c;
        return detail::cmp_grevlex_range(a, b, 0, ord.split);
    }
    }
    return 0;
}

} // namespace resint

#endif
