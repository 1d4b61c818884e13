#ifndef RESINT_POLY_HPP
#define RESINT_POLY_HPP

#include "resint/field.hpp"
#include "resint/monomial.hpp"

#include <algorithm>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace resint {

struct ring_mismatch : std::invalid_argument {
    ring_mismatch() : std::invalid_argument("operands live in different rings") {}
};

template <class K> struct PolyRing {
    K field;
    int n = 0;
    std::vector<std::string> vars;
    MonoOrder order;

    PolyRing(K f, std::vector<std::string> vs, MonoOrder ord = {})
        : field(std::move(f)), n(static_cast<int>(vs.size())), vars(std::move(vs)), order(ord) {
        if (n < 1 || n > kMaxVars)
            throw std::invalid_argument("PolyRing: variable count out of range");
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (vars[i] == vars[j])
                    throw std::invalid_argument("PolyRing: duplicate variable name");
    }

    int cmp(const Monomial& a, const Monomial& b) const { return mono_cmp(order, n, a, b); }
    int var_index(const std::string& name) const {
        for (int i = 0; i < n; ++i)
            if (vars[i] == name)
                return i;
        return -1;
    }
};

template <class K> using RingPtr = std::shared_ptr<const PolyRing<K>>;

template <class K>
RingPtr<K> make_ring(K field, std::vector<std::string> vars, MonoOrder ord = {}) {
    return std::make_shared<const PolyRing<K>>(std::move(field), std::move(vars), ord);
}

template <class K> struct Term {
    Monomial m;
    typename K::Elem c;
};

/* A polynomial: terms sorted in strictly descending monomial order, no zero
   coefficients.  Immutable by convention once built. */
template <class K> class Poly {
  public:
    RingPtr<K> ring;
    std::vector<Term<K>> t;

    Poly() = default;
    explicit Poly(RingPtr<K> R) : ring(std::move(R)) {}

    bool is_zero() const { return t.empty(); }
    const Term<K>& lead() const { return t.front(); }
    int degree() const { // total degree; -1 for the zero polynomial
        int d = -1;
        for (auto& tm : t)
            d = std::max(d, tm.m.deg);
        return d;
    }
};

/* ---- construction helpers ---- */

template <class K> Poly<K> poly_zero(const RingPtr<K>& R) { return Poly<K>(R); }

template <class K> Poly<K> poly_const(const RingPtr<K>& R, typename K::Elem c) {
    Poly<K> p(R);
    if (!R->field.is_zero(c))
        p.t.push_back({Monomial::one(), c});
    return p;
}

template <class K> Poly<K> poly_one(const RingPtr<K>& R) { return poly_const(R, R->field.one()); }

template <class K> Poly<K> poly_term(const RingPtr<K>& R, const Monomial& m, typename K::Elem c) {
    Poly<K> p(R);
    if (!R->field.is_zero(c))
        p.t.push_back({m, c});
    return p;
}

template <class K> Poly<K> poly_var(const RingPtr<K>& R, int i, int pow = 1) {
    if (pow == 0)
        return poly_one(R);
    return poly_term(R, Monomial::var(i, pow), R->field.one());
}

// Sorts/merges an arbitrary term list into canonical form.
template <class K> Poly<K> poly_normalize(const RingPtr<K>& R, std::vector<Term<K>> terms) {
    std::sort(terms.begin(), terms.end(),
              [&](const Term<K>& a, const Term<K>& b) { return R->cmp(a.m, b.m) > 0; });
    Poly<K> p(R);
    for (auto& tm : terms) {
        if (!p.t.empty() && p.t.back().m == tm.m)
            p.t.back().c = R->field.add(p.t.back().c, tm.c);
        else
            p.t.push_back(tm);
        if (!p.t.empty() && R->field.is_zero(p.t.back().c))
            p.t.pop_back();
    }
    return p;
}

/* ---- arithmetic ---- */

namespace detail {
template <class K> void check_same_ring(const Poly<K>& a, const Poly<K>& b) {
    if (a.ring != b.ring)
        throw ring_mismatch{};
}
} // namespace detail

template <class K> Poly<K> poly_add(const Poly<K>& a, const Poly<K>& b) {
    detail::check_same_ring(a, b);
    const auto& R = *a.ring;
    Poly<K> r(a.ring);
    r.t.reserve(a.t.size() + b.t.size());
    std::size_t i = 0, j = 0;
    while (i < a.t.size() && j < b.t.size()) {
        int c = R.cmp(a.t[i].m, b.t[j].m);
        if (c > 0)
            r.t.push_back(a.t[i++]);
        else if (c < 0)
            r.t.push_back(b.t[j++]);
        else {
            auto s = R.field.add(a.t[i].c, b.t[j].c);
            if (!R.field.is_zero(s))
                r.t.push_back({a.t[i].m, s});
            ++i, ++j;
        }
    }
    for (; i < a.t.size(); ++i)
        r.t.push_back(a.t[i]);
    for (; j < b.t.size(); ++j)
        r.t.push_back(b.t[j]);
    return r;
}

template <class K> Poly<K> poly_neg(const Poly<K>& a) {
    Poly<K> r = a;
    for (auto& tm : r.t)
        tm.c = a.ring->field.neg(tm.c);
    return r;
}

template <class K> Poly<K> poly_sub(const Poly<K>& a, const Poly<K>& b) {
    return poly_add(a, poly_neg(b));
}

template <class K> Poly<K> poly_scale(const Poly<K>& a, const typename K::Elem& c) {
    const auto& F = a.ring->field;
    if (F.is_zero(c))
        return Poly<K>(a.ring);
    Poly<K> r = a;
    for (auto& tm : r.t)
        tm.c = F.mul(tm.c, c);
    return r;
}

// a * (c * m) -- the workhorse of reduction loops
template <class K>
Poly<K> poly_mul_term(const Poly<K>& a, const Monomial& m, const typename K::Elem& c) {
    const auto& R = *a.ring;
    if (R.field.is_zero(c))
        return Poly<K>(a.ring);
    Poly<K> r(a.ring);
    r.t.reserve(a.t.size());
    for (auto& tm : a.t)
        r.t.push_back({mono_mul(tm.m, m, R.n), R.field.mul(tm.c, c)});
    return r;
}

template <class K> Poly<K> poly_mul(const Poly<K>& a, const Poly<K>& b) {
    detail::check_same_ring(a, b);
    const auto& R = *a.ring;
    std::vector<Term<K>> acc;
    acc.reserve(a.t.size() * b.t.size());
    for (auto& ta : a.t)
        for (auto& tb : b.t)
            acc.push_back({mono_mul(ta.m, tb.m, R.n), R.field.mul(ta.c, tb.c)});
    return poly_normalize(a.ring, std::move(acc));
}

template <class K> Poly<K> poly_pow(const Poly<K>& a, int e) {
    Poly<K> r = poly_one(a.ring);
    for (int i = 0; i < e; ++i)
        r = poly_mul(r, a);
    return r;
}

template <class K> bool poly_eq(const Poly<K>& a, const Poly<K>& b) {
    detail::check_same_ring(a, b);
    if (a.t.size() != b.t.size())
        return false;
    for (std::size_t i = 0; i < a.t.size(); ++i)
        if (a.t[i].m != b.t[i].m || !a.ring->field.eq(a.t[i].c, b.t[i].c))
            return false;
    return true;
}

template <class K> Poly<K> poly_monic(const Poly<K>& a) {
    if (a.is_zero())
        return a;
    return poly_scale(a, a.ring->field.inv(a.lead().c));
}

/* degree_info: (is_homogeneous, common degree).  The zero polynomial is
   homogeneous with undefined degree (nullopt). */
template <class K> std::pair<bool, std::optional<int>> degree_info(const Poly<K>& p) {
    if (p.is_zero())
        return {true, std::nullopt};
    int d = p.t.front().m.deg;
    for (auto& tm : p.t)
        if (tm.m.deg != d)
            return {false, std::nullopt};
    return {true, d};
}

template <class K> bool is_homogeneous(const Poly<K>& p) { return degree_info(p).first; }

/* Substitution homomorphism: variable i of p's ring maps to images[i] in the
   target ring. */
template <class K>
Poly<K> ring_map(const RingPtr<K>& target, const std::vector<Poly<K>>& images, const Poly<K>& p) {
    if (static_cast<int>(images.size()) != p.ring->n)
        throw std::invalid_argument("ring_map: one image per source variable required");
    for (auto& im : images)
        if (im.ring != target)
            throw ring_mismatch{};
    Poly<K> r = poly_zero(target);
    for (auto& tm : p.t) {
        Poly<K> piece = poly_const(target, tm.c);
        for (int i = 0; i < p.ring->n; ++i)
            for (int k = 0; k < tm.m.e[i]; ++k)
                piece = poly_mul(piece, images[i]);
        r = poly_add(r, piece);
    }
    return r;
}

/* ---- text form ----
   Canonical: terms in ring order (descending), `*` between factors, `^` for
   powers, e.g.  x^2*y - 3*z.  The parser also accepts parenthesised sums and
   omitted `*`. */

template <class K> std::string poly_to_string(const Poly<K>& p) {
    if (p.is_zero())
        return "0";
    const auto& R = *p.ring;
    std::ostringstream os;
    bool first = true;
    for (auto& tm : p.t) {
        std::string cs = R.field.to_string(tm.c);
        bool neg = !cs.empty() && cs[0] == '-';
        if (first)
            os << (neg ? "-" : "");
        else
            os << (neg ? " - " : " + ");
        if (neg)
            cs = cs.substr(1);
        first = false;
        bool unit_coeff = (cs == "1");
        if (!unit_coeff || tm.m.is_one())
            os << cs;
        bool need_star = !unit_coeff;
        for (int i = 0; i < R.n; ++i) {
            if (!tm.m.e[i])
                continue;
            if (need_star)
                os << "*";
            os << R.vars[i];
            if (tm.m.e[i] > 1)
                os << "^" << int(tm.m.e[i]);
            need_star = true;
        }
    }
    return os.str();
}

struct parse_error : std::runtime_error {
    int pos;
    parse_error(const std::string& msg, int at)
        : std::runtime_error(msg + " at position " + std::to_string(at)), pos(at) {}
};

namespace detail {

template <class K> class PolyParser {
  public:
    PolyParser(const RingPtr<K>& R, const std::string& s) : R_(R), s_(s) {}

    Poly<K> parse() {
        auto p = expr();
        skip_ws();
        if (pos_ != s_.size())
            throw parse_error("trailing input", static_cast<int>(pos_));
        return p;
    }

  private:
    RingPtr<K> R_;
    const std::string& s_;
    std::size_t pos_ = 0;

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
    }
    bool peek(char c) {
        skip_ws();
        return pos_ < s_.size() && s_[pos_] == c;
    }
    bool eat(char c) {
        if (peek(c)) {
            ++pos_;
            return true;
        }
        return false;
    }

    Poly<K> expr() { // sum of signed products
        skip_ws();
        bool neg = false;
        while (peek('+') || peek('-')) {
            if (eat('-'))
                neg = !neg;
            else
                eat('+');
        }
        Poly<K> acc = product();
        if (neg)
            acc = poly_neg(acc);
        while (peek('+') || peek('-')) {
            bool minus = eat('-');
            if (!minus)
                eat('+');
            Poly<K> rhs = product();
            acc = minus ? poly_sub(acc, rhs) : poly_add(acc, rhs);
        }
        return acc;
    }

    Poly<K> product() {
        Poly<K> acc = factor();
        for (;;) {
            skip_ws();
            if (eat('*')) {
                acc = poly_mul(acc, factor());
                continue;
            }
            // juxtaposition: a factor may start without '*'
            if (pos_ < s_.size() &&
                (std::isalpha(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '(' ||
                 s_[pos_] == '_'))
                acc = poly_mul(acc, factor());
            else
                break;
        }
        return acc;
    }

    Poly<K> factor() {
        skip_ws();
        if (pos_ >= s_.size())
            throw parse_error("unexpected end of polynomial", static_cast<int>(pos_));
        Poly<K> base;
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            base = expr();
            if (!eat(')'))
                throw parse_error("expected ')'", static_cast<int>(pos_));
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            std::int64_t v = 0;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
                v = v * 10 + (s_[pos_++] - '0');
            if (eat('/')) { // rational literal
                std::int64_t d = 0;
                skip_ws();
                if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
                    throw parse_error("expected denominator", static_cast<int>(pos_));
                while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
                    d = d * 10 + (s_[pos_++] - '0');
                base = poly_const(R_, R_->field.from_ratio(v, d));
            } else {
                base = poly_const(R_, R_->field.from_int(v));
            }
        } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::string name;
            while (pos_ < s_.size() &&
                   (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
                name += s_[pos_++];
            int vi = R_->var_index(name);
            if (vi < 0)
                throw parse_error("unknown variable '" + name + "'", static_cast<int>(pos_));
            base = poly_var(R_, vi);
        } else {
            throw parse_error(std::string("unexpected character '") + c + "'",
                              static_cast<int>(pos_));
        }
        if (eat('^')) {
            skip_ws();
            bool negexp = eat('-');
            int e = 0;
            if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
                throw parse_error("expected exponent", static_cast<int>(pos_));
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
                e = e * 10 + (s_[pos_++] - '0');
            if (negexp)
                throw parse_error("negative exponents are not allowed", static_cast<int>(pos_));
            base = poly_pow(base, e);
        }
        return base;
    }
};

} // namespace detail

template <class K> Poly<K> poly_parse(const RingPtr<K>& R, const std::string& s) {
    return detail::PolyParser<K>(R, s).parse();
}

} // namespace resint

#endif
