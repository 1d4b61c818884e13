#ifndef RESINT_FIELD_HPP
#define RESINT_FIELD_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace resint {

/* Coefficient fields.  Everything downstream is templated on one of these
   two policy classes; arithmetic is exact in both. */

// Prime field Z/p for a word-size prime p.  Elements are stored in [0,p).
class Fp {
  public:
    using Elem = std::int64_t;

    explicit Fp(std::int64_t p = 32003) : p_(p) {
        if (p < 2)
            throw std::invalid_argument("Fp: modulus must be >= 2");
        for (std::int64_t d = 2; d * d <= p; ++d)
            if (p % d == 0)
                throw std::invalid_argument("Fp: modulus is not prime");
    }

    std::int64_t modulus() const { return p_; }

    Elem zero() const { return 0; }
    Elem one() const { return 1; }
    Elem from_int(std::int64_t v) const {
        v %= p_;
        return v < 0 ? v + p_ : v;
    }
    // num/den as a field element; den must be invertible
    Elem from_ratio(std::int64_t num, std::int64_t den) const {
        return mul(from_int(num), inv(from_int(den)));
    }
    bool is_zero(Elem a) const { return a == 0; }
    bool is_one(Elem a) const { return a == 1; }
    Elem add(Elem a, Elem b) const {
        Elem r = a + b;
        return r >= p_ ? r - p_ : r;
    }
    Elem sub(Elem a, Elem b) const {
        Elem r = a - b;
        return r < 0 ? r + p_ : r;
    }
    Elem neg(Elem a) const { return a == 0 ? 0 : p_ - a; }
    Elem mul(Elem a, Elem b) const { return (a * b) % p_; }
    Elem inv(Elem a) const {
        if (a == 0)
            throw std::domain_error("Fp: division by zero");
        // extended Euclid
        std::int64_t t = 0, nt = 1, r = p_, nr = a;
        while (nr != 0) {
            std::int64_t q = r / nr;
            std::int64_t tmp = t - q * nt;
            t = nt;
            nt = tmp;
            tmp = r - q * nr;
            r = nr;
            nr = tmp;
        }
        return t < 0 ? t + p_ : t;
    }
    Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
    bool eq(Elem a, Elem b) const { return a == b; }

    std::string to_string(Elem a) const { return std::to_string(a); }
    static constexpr const char* name() { return "ZZ/p"; }

  private:
    std::int64_t p_;
};

// The rationals, backed by arbitrary-precision integers.
class QQ {
  public:
    using Elem = boost::multiprecision::cpp_rational;

    Elem zero() const { return Elem(0); }
    Elem one() const { return Elem(1); }
    Elem from_int(std::int64_t v) const { return Elem(v); }
    Elem from_ratio(std::int64_t num, std::int64_t den) const {
        if (den == 0)
            throw std::domain_error("QQ: zero denominator");
        return Elem(num) / Elem(den);
    }
    bool is_zero(const Elem& a) const { return a == 0; }
    bool is_one(const Elem& a) const { return a == 1; }
    Elem add(const Elem& a, const Elem& b) const { return a + b; }
    Elem sub(const Elem& a, const Elem& b) const { return a - b; }
    Elem neg(const Elem& a) const { return -a; }
    Elem mul(const Elem& a, const Elem& b) const { return a * b; }
    Elem inv(const Elem& a) const {
        if (a == 0)
            throw std::domain_error("QQ: division by zero");
        return Elem(1) / a;
    }
    Elem div(const Elem& a, const Elem& b) const { return mul(a, inv(b)); }
    bool eq(const Elem& a, const Elem& b) const { return a == b; }

    std::string to_string(const Elem& a) const { return a.str(); }
    static constexpr const char* name() { return "QQ"; }
};

} // namespace resint

#endif
