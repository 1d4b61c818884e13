#ifndef RESINT_RESIDUAL_HPP
#define RESINT_RESIDUAL_HPP

#include "resint/koszul.hpp"

#include <random>

namespace resint {

/* Residual intersection data: a = (a_1..a_s) inside I = (f_1..f_r), the
   lifting matrix c with a_i = sum_j c[j][i] f_j, and J = (a : I).  Generator
   order is significant (the complexes depend on it), so the ordered
   sequences are kept alongside the Ideal views. */
template <class K> struct ResidualDatum {
    RingPtr<K> ring;
    std::vector<Poly<K>> f;     // ordered generators of I
    std::vector<Poly<K>> agens; // ordered generators of a, possibly zero-padded
    int s = 0;
    int g = 0; // height(I), recomputed
    std::vector<std::vector<Poly<K>>> lifting; // r x s
    Ideal<K> I, a, J;

    int r() const { return static_cast<int>(f.size()); }
};

template <class K>
ResidualDatum<K> make_residual(const RingPtr<K>& R, std::vector<Poly<K>> fgens,
                               std::vector<Poly<K>> agens, int s,
                               const std::vector<std::vector<Poly<K>>>* lifting = nullptr) {
    ResidualDatum<K> rd;
    rd.ring = R;
    for (auto& p : fgens) {
        if (p.is_zero())
            throw std::invalid_argument("make_residual: zero generator of I");
        if (!is_homogeneous(p))
            throw std::invalid_argument("make_residual: inhomogeneous generator of I");
    }
    if (s < 1)
        throw std::invalid_argument("make_residual: s must be at least 1");
    if (static_cast<int>(agens.size()) > s)
        throw std::invalid_argument("make_residual: more than s generators for a");
    rd.f = std::move(fgens);
    rd.agens = std::move(agens);
    while (static_cast<int>(rd.agens.size()) < s)
        rd.agens.push_back(poly_zero(R)); // padding
    rd.s = s;
    rd.I = make_ideal(R, rd.f);
    {
        std::vector<Poly<K>> nz;
        for (auto& p : rd.agens)
            if (!p.is_zero())
                nz.push_back(p);
        rd.a = make_ideal(R, nz);
    }
    rd.g = height(rd.I);
    int r = rd.r();
    if (lifting) {
        if (static_cast<int>(lifting->size()) != r ||
            (r > 0 && static_cast<int>((*lifting)[0].size()) != s))
            throw std::invalid_argument("make_residual: lifting matrix must be r x s");
        rd.lifting = *lifting;
    } else {
        rd.lifting.assign(r, std::vector<Poly<K>>(s, poly_zero(R)));
        for (int i = 0; i < s; ++i) {
            if (rd.agens[i].is_zero())
                continue;
            auto dv = divide_with_cofactors(rd.agens[i], rd.f);
            if (!dv.remainder.is_zero())
                throw std::invalid_argument("make_residual: generator " + std::to_string(i + 1) +
                                            " of a is not in I: " + poly_to_string(rd.agens[i]));
            for (int j = 0; j < r; ++j)
                rd.lifting[j][i] = dv.cofactors[j];
        }
    }
    // the lifting identity is re-verified exactly, every time
    for (int i = 0; i < s; ++i) {
        Poly<K> acc = poly_zero(R);
        for (int j = 0; j < r; ++j)
            acc = poly_add(acc, poly_mul(rd.lifting[j][i], rd.f[j]));
        if (!poly_eq(acc, rd.agens[i]))
            throw std::invalid_argument("make_residual: lifting identity fails for a_" +
                                        std::to_string(i + 1));
    }
    rd.J = ideal_colon(rd.a, rd.I);
    return rd;
}

/* ---- classification ---- */

template <class K> struct Classification {
    bool is_algebraic = false;
    bool is_geometric = false;
    bool is_arithmetic = false;
    int ht_J = 0;
    int ht_I_plus_J = 0;
    int ht_fitt0 = 0, ht_fitt1 = 0; // heights of Fitt_0(I/a), Fitt_1(I/a)
};

// presentation of I/a: coker[ Syz(f) | c ], an r-row matrix
template <class K> std::vector<std::vector<Poly<K>>> quotient_presentation(const ResidualDatum<K>& rd) {
    const RingPtr<K>& R = rd.ring;
    int r = rd.r();
    std::vector<Vec<K>> fcols;
    for (auto& p : rd.f)
        fcols.push_back(vec_from_poly(p));
    auto syz = syzygy_generators(R, 1, fcols);
    std::vector<std::vector<Poly<K>>> P(r, std::vector<Poly<K>>(syz.size() + rd.s, poly_zero(R)));
    for (std::size_t c = 0; c < syz.size(); ++c)
        for (int j = 0; j < r; ++j)
            P[j][c] = poly_from_vec(R, syz[c], j);
    for (int i = 0; i < rd.s; ++i)
        for (int j = 0; j < r; ++j)
            P[j][syz.size() + i] = rd.lifting[j][i];
    return P;
}

template <class K> Classification<K> classify_residual(const ResidualDatum<K>& rd) {
    Classification<K> c;
    c.ht_J = height(rd.J);
    c.is_algebraic = !is_unit_ideal(rd.J) && c.ht_J >= rd.s;
    c.ht_I_plus_J = height(ideal_sum(rd.I, rd.J));
    c.is_geometric = c.is_algebraic && c.ht_I_plus_J >= rd.s + 1;
    auto P = quotient_presentation(rd);
    c.ht_fitt0 = height(fitting_ideal(P, rd.ring, 0));
    c.ht_fitt1 = height(fitting_ideal(P, rd.ring, 1));
    c.is_arithmetic = c.is_algebraic && c.ht_fitt0 >= rd.s && c.ht_fitt1 >= rd.s + 1;
    return c;
}

/* ---- the symmetric-algebra presentation Sym(I) = S/L ---- */

template <class K> struct SymPresentation {
    TExtension<K> ext;            // S = R[T_1..T_r], bigraded deg T_j = (deg f_j, 1)
    std::vector<Poly<K>> L;       // linear forms sum u_j T_j, (u_j) in Syz(f)
    std::vector<Poly<K>> gamma;   // gamma_i = sum_j c_{ji} T_j
    std::vector<Poly<K>> g_ideal; // T_1..T_r
};

template <class K> SymPresentation<K> sym_defining_ideal(const ResidualDatum<K>& rd) {
    const RingPtr<K>& R = rd.ring;
    SymPresentation<K> sp;
    std::vector<int> tdeg;
    for (auto& p : rd.f)
        tdeg.push_back(p.degree());
    sp.ext = make_t_extension(R, rd.r(), tdeg);
    const RingPtr<K>& S = sp.ext.combined;
    std::vector<Vec<K>> fcols;
    for (auto& p : rd.f)
        fcols.push_back(vec_from_poly(p));
    for (auto& u : syzygy_generators(R, 1, fcols)) {
        Poly<K> form = poly_zero(S);
        for (auto& tm : u.t) {
            Monomial mt = mono_mul(tm.m, Monomial::var(sp.ext.t_index(tm.comp)), S->n);
            form = poly_add(form, poly_term(S, mt, tm.c));
        }
        if (!form.is_zero())
            sp.L.push_back(form);
    }
    for (int i = 0; i < rd.s; ++i) {
        Poly<K> gi = poly_zero(S);
        for (int j = 0; j < rd.r(); ++j)
            gi = poly_add(gi, poly_mul(promote(S, rd.lifting[j][i]),
                                       poly_var(S, sp.ext.t_index(j))));
        sp.gamma.push_back(gi);
    }
    for (int j = 0; j < rd.r(); ++j)
        sp.g_ideal.push_back(poly_var(S, sp.ext.t_index(j)));
    return sp;
}

/* ---- the saturation variants of the residual ideal ---- */

/* middle ideal of the inclusion chain: ((L + (gamma)) : g^oo) cap R */
template <class K> Ideal<K> sym_saturation_residual(const ResidualDatum<K>& rd) {
    SymPresentation<K> sp = sym_defining_ideal(rd);
    const RingPtr<K>& S = sp.ext.combined;
    std::vector<Poly<K>> q = sp.L;
    for (auto& gm : sp.gamma)
        if (!gm.is_zero())
            q.push_back(gm);
    Ideal<K> Q = make_ideal(S, q);
    Ideal<K> G = make_ideal(S, sp.g_ideal);
    Ideal<K> sat = saturation(Q, G);
    std::vector<int> tblock;
    for (int j = 0; j < sp.ext.t_count; ++j)
        tblock.push_back(sp.ext.t_index(j));
    Ideal<K> elim = eliminate(sat, tblock);
    std::vector<Poly<K>> out;
    for (auto& p : elim.gens())
        out.push_back(restrict_poly(rd.ring, p));
    return make_ideal(rd.ring, std::move(out));
}

template <class K> struct ReesSaturationResult {
    Ideal<K> ideal;
    int iterations = 0;
    bool stabilized = false;
};

/* right ideal of the chain: stable value of (a I^i : I^{i+1}) */
template <class K>
ReesSaturationResult<K> rees_saturation_residual(const ResidualDatum<K>& rd, int max_iter = 10) {
    ReesSaturationResult<K> res;
    Ideal<K> prev;
    for (int i = 0; i < max_iter; ++i) {
        Ideal<K> cur = ideal_colon(ideal_product(rd.a, ideal_power(rd.I, i)),
                                   ideal_power(rd.I, i + 1));
        res.iterations = i + 1;
        if (i > 0 && ideal_equal(cur, prev)) {
            res.ideal = cur;
            res.stabilized = true;
            return res;
        }
        prev = cur;
    }
    res.ideal = prev;
    return res;
}

template <class K> struct InclusionChainReport {
    Ideal<K> J, middle, rees;
    bool j_in_middle = false, middle_in_rees = false;
    bool proper = false;     // J proper, i.e. the datum is a candidate residual
    bool rees_stabilized = false;
};

template <class K> InclusionChainReport<K> inclusion_chain_check(const ResidualDatum<K>& rd) {
    InclusionChainReport<K> rep;
    rep.J = rd.J;
    rep.proper = !is_unit_ideal(rd.J);
    rep.middle = sym_saturation_residual(rd);
    auto rees = rees_saturation_residual(rd);
    rep.rees = rees.ideal;
    rep.rees_stabilized = rees.stabilized;
    rep.j_in_middle = ideal_subset(rep.J, rep.middle);
    rep.middle_in_rees = ideal_subset(rep.middle, rep.rees);
    return rep;
}

/* ---- random sections for Hilbert-function experiments ---- */

template <class K> struct RandomSectionResult {
    std::optional<ResidualDatum<K>> datum;
    std::uint64_t seed = 0;
    int tries_used = 0;
};

/* a_i = sum_j u_{ij} f_j with sparse random coefficient forms of the right
   degree, retried until ht(a : I) >= s with J proper */
template <class K>
RandomSectionResult<K> random_section(const RingPtr<K>& R, const std::vector<Poly<K>>& fgens,
                                      const std::vector<int>& degrees, int tries,
                                      std::uint64_t seed) {
    RandomSectionResult<K> out;
    out.seed = seed;
    std::mt19937_64 rng(seed);
    int s = static_cast<int>(degrees.size());
    auto random_form = [&](int deg) { // 1-2 sparse terms
        std::vector<Monomial> monos;
        for_each_monomial(R->n, deg, [&](const Monomial& m) { monos.push_back(m); });
        if (monos.empty())
            return poly_zero(R);
        std::vector<Term<K>> ts;
        int nterms = 1 + static_cast<int>(rng() % 2);
        for (int t = 0; t < nterms; ++t) {
            auto c = R->field.from_int(1 + static_cast<std::int64_t>(rng() % 1000));
            ts.push_back({monos[rng() % monos.size()], c});
        }
        return poly_normalize(R, std::move(ts));
    };
    for (int attempt = 0; attempt < tries; ++attempt) {
        out.tries_used = attempt + 1;
        std::vector<Poly<K>> agens;
        std::vector<std::vector<Poly<K>>> lifting(fgens.size(),
                                                  std::vector<Poly<K>>(s, poly_zero(R)));
        bool ok = true;
        for (int i = 0; i < s && ok; ++i) {
            Poly<K> ai = poly_zero(R);
            for (std::size_t j = 0; j < fgens.size(); ++j) {
                int cd = degrees[i] - fgens[j].degree();
                if (cd < 0)
                    continue;
                Poly<K> u = random_form(cd);
                lifting[j][i] = u;
                ai = poly_add(ai, poly_mul(u, fgens[j]));
            }
            if (ai.is_zero())
                ok = false;
            else
                agens.push_back(ai);
        }
        if (!ok)
            continue;
        ResidualDatum<K> rd = make_residual(R, fgens, agens, s, &lifting);
        if (!is_unit_ideal(rd.J) && height(rd.J) >= s) {
            out.datum = std::move(rd);
            return out;
        }
    }
    return out;
}

/* ---- single-element colon witness for arithmetic residuals ---- */

template <class K>
std::optional<Poly<K>> find_single_b(const ResidualDatum<K>& rd, int tries = 64,
                                     std::uint64_t seed = 1) {
    if (is_unit_ideal(rd.J))
        return std::nullopt; // degenerate: no proper residual at all
    Classification<K> c = classify_residual(rd);
    if (!c.is_arithmetic)
        throw std::invalid_argument("find_single_b: residual is not arithmetic");
    auto works = [&](const Poly<K>& b) {
        return !b.is_zero() && ideal_equal(ideal_colon_elem(rd.a, b), rd.J);
    };
    for (auto& b : rd.f)
        if (works(b))
            return b;
    std::mt19937_64 rng(seed);
    for (int t = 0; t < tries; ++t) {
        Poly<K> b = poly_zero(rd.ring);
        for (auto& fj : rd.f)
            if (rng() % 2)
                b = poly_add(b, poly_scale(fj, rd.ring->field.from_int(
                                                   1 + static_cast<std::int64_t>(rng() % 97))));
        if (!b.is_zero() && is_homogeneous(b) && works(b))
            return b;
    }
    return std::nullopt;
}

} // namespace resint

#endif
