#pragma once

#include "twisting.hpp"

#include <cstdlib>
#include <future>
#include <string>
#include <thread>

namespace bggkit {

// Sign per Bruhat cover (lower, upper index), product -1 around every square.
struct SignAssignment {
    std::map<std::pair<int, int>, int> sign;
    int at(int a, int b) const { return sign.at({a, b}); }
};

inline bool signs_valid(const BruhatPoset& p, const SignAssignment& s)
{
    for (auto& [a, b, c, d] : bruhat_squares(p))
        if (s.at(a, b) * s.at(b, d) * s.at(a, c) * s.at(c, d) != -1)
            return false;
    return true;
}

// Lexicographically least assignment in cover order, with +1 before -1.
inline SignAssignment assign_signs(const BruhatPoset& p)
{
    std::size_t n = p.covers.size();
    if (n >= 24)
        throw UnsupportedError("sign search is limited to rank <= 2");
    for (unsigned long mask = 0; mask < (1ul << n); ++mask) {
        SignAssignment s;
        for (std::size_t k = 0; k < n; ++k)
            s.sign[{p.covers[k].first, p.covers[k].second}] = (mask >> (n - 1 - k)) & 1 ? -1 : 1;
        if (signs_valid(p, s))
            return s;
    }
    throw InconsistencyError("no valid sign assignment");
}

struct ComplexTerm {
    int element;       // poset index
    ModulePtr module;
};

// Terms D(Im w) in degree l(w), all on the window of M(lam); components are
// the duals of the inclusions Im w' in Im w along covers w < w'.
struct ComplexOfModules {
    std::string id;
    BruhatPoset poset;
    Field field;
    Weight lam;
    int depth = 0;
    std::vector<std::vector<ComplexTerm>> terms;                  // by degree
    std::map<std::pair<int, int>, ModuleMap> components;          // unsigned, by cover
    SignAssignment signs;

    int degrees() const { return static_cast<int>(terms.size()); }

    // Matrix of d^m on the weight space mu, blocks ordered as the terms.
    Matrix differential(int m, const Weight& mu) const
    {
        const auto& src = terms[static_cast<std::size_t>(m)];
        std::size_t cols = 0, rows = 0;
        for (auto& t : src)
            cols += t.module->dim(mu);
        if (m + 1 >= degrees())
            return zero_matrix(0, cols, field);
        const auto& tgt = terms[static_cast<std::size_t>(m + 1)];
        for (auto& t : tgt)
            rows += t.module->dim(mu);
        Matrix d(rows, cols, field);
        std::size_t c0 = 0;
        for (auto& s : src) {
            std::size_t r0 = 0;
            for (auto& t : tgt) {
                auto it = components.find({s.element, t.element});
                if (it != components.end()) {
                    Matrix blk = it->second.block(mu) * Scalar::in(field, signs.at(s.element, t.element));
                    for (std::size_t r = 0; r < blk.rows(); ++r)
                        for (std::size_t c = 0; c < blk.cols(); ++c)
                            d(r0 + r, c0 + c) = blk(r, c);
                }
                r0 += t.module->dim(mu);
            }
            c0 += s.module->dim(mu);
        }
        return d.to_field(field);
    }

    std::size_t term_dim(int m, const Weight& mu) const
    {
        std::size_t s = 0;
        for (auto& t : terms[static_cast<std::size_t>(m)])
            s += t.module->dim(mu);
        return s;
    }
};

// Z-forms from the saturated lattice over Q, reduced into the field.
inline ComplexOfModules lattice_complex(const BruhatPoset& p, const Weight& lam, int depth, const Field& f, std::string id)
{
    const RootDatum& rd = p.rd;
    if (!is_regular_dominant(rd, lam))
        throw DomainError("complex needs a regular dominant weight");
    auto lat = submodule_lattice(p, lam, depth);
    auto M = verma(rd, lam, depth);
    std::vector<ModulePtr> subs, duals;
    for (std::size_t k = 0; k < p.size(); ++k) {
        subs.push_back(submodule(M, lat.lattices[k]).first);
        duals.push_back(share(contragredient(*subs.back())));
    }
    ComplexOfModules c{id, p, f, lam, depth, {}, {}, assign_signs(p)};
    std::size_t top_len = longest_element(p).length();
    c.terms.resize(top_len + 1);
    std::vector<ModulePtr> terms(p.size());
    for (std::size_t k = 0; k < p.size(); ++k) {
        terms[k] = f.is_rational() ? duals[k] : share(duals[k]->reduce(f));
        c.terms[p.elements[k].length()].push_back({static_cast<int>(k), terms[k]});
    }
    for (auto& [a, b] : p.covers) {
        ModuleMap inc{subs[static_cast<std::size_t>(b)], subs[static_cast<std::size_t>(a)], {}};
        for (auto& mu : M->weights()) {
            auto x = lat.lattices[static_cast<std::size_t>(a)].at(mu).solve(lat.lattices[static_cast<std::size_t>(b)].at(mu));
            if (!x)
                throw InconsistencyError("lattice containment fails along a cover");
            if (!x->is_integral())
                throw InconsistencyError("lattice inclusion is not integral");
            inc.blocks[mu] = *x;
        }
        ModuleMap d = contragredient_map(inc, duals[static_cast<std::size_t>(b)], duals[static_cast<std::size_t>(a)]);
        c.components[{a, b}] = f.is_rational() ? d : reduce_map(d, terms[static_cast<std::size_t>(a)], terms[static_cast<std::size_t>(b)]);
    }
    return c;
}

inline std::string weight_str(const Weight& w)
{
    std::string s = "[";
    for (std::size_t k = 0; k < w.size(); ++k)
        s += (k ? "," : "") + std::to_string(w[k]);
    return s + "]";
}

inline ComplexOfModules assemble_bgg(const RootDatum& rd, const Weight& lam, int depth, const Field& f = {})
{
    return lattice_complex(enumerate_weyl(rd), lam, depth, f, "bgg:" + rd.label() + ":" + weight_str(lam));
}

inline ComplexOfModules assemble_cousin(const RootDatum& rd, const Weight& lam, int depth, unsigned p)
{
    return lattice_complex(enumerate_weyl(rd), lam, depth, Field::prime(p),
                           "cousin:" + rd.label() + ":" + weight_str(lam) + ":p" + std::to_string(p));
}

struct ComplexReport {
    std::string id;
    int depth = 0, margin = 0;
    bool d2_ok = true, euler_ok = true, exact_ok = true;
    std::map<int, std::map<Weight, long>> cohomology;   // nonzero entries only
    FormalCharacter h0;
    std::vector<std::string> failures;
    bool ok() const { return d2_ok && euler_ok && exact_ok; }
};

inline unsigned worker_count()
{
    if (const char* s = std::getenv("BGGKIT_THREADS")) {
        int n = std::atoi(s);
        if (n > 0)
            return static_cast<unsigned>(n);
    }
    return 1;
}

// Ranks per weight of the margin window; d^2 is checked on the whole window.
inline ComplexReport verify_complex(const ComplexOfModules& c, int margin)
{
    if (margin < 0 || margin >= c.depth)
        throw DomainError("margin must lie in [0, depth)");
    const RootDatum& rd = c.poset.rd;
    TruncatedModule window(rd, c.field, c.lam, c.depth);
    const auto& ws = window.weights();
    struct PerWeight {
        bool d2 = true;
        std::vector<long> h;
        long euler = 0;
    };
    std::vector<PerWeight> res(ws.size());
    auto work = [&](std::size_t k) {
        const Weight& mu = ws[k];
        PerWeight r;
        int D = c.degrees();
        std::vector<Matrix> d;
        for (int m = 0; m < D; ++m)
            d.push_back(c.differential(m, mu));
        for (int m = 0; m + 1 < D; ++m)
            if (!(d[static_cast<std::size_t>(m + 1)] * d[static_cast<std::size_t>(m)]).is_zero())
                r.d2 = false;
        if (window.depth_of(mu) <= c.depth - margin) {
            std::vector<long> rk(static_cast<std::size_t>(D), 0);
            for (int m = 0; m < D; ++m)
                rk[static_cast<std::size_t>(m)] = static_cast<long>(d[static_cast<std::size_t>(m)].rank());
            for (int m = 0; m < D; ++m) {
                long dim = static_cast<long>(c.term_dim(m, mu));
                long in = m ? rk[static_cast<std::size_t>(m - 1)] : 0;
                r.h.push_back(dim - rk[static_cast<std::size_t>(m)] - in);
                r.euler += (m % 2 ? -1 : 1) * dim;
            }
        }
        res[k] = std::move(r);
    };
    unsigned nt = std::min<unsigned>(worker_count(), static_cast<unsigned>(ws.size()));
    if (nt <= 1) {
        for (std::size_t k = 0; k < ws.size(); ++k)
            work(k);
    } else {
        std::vector<std::future<void>> fs;
        for (unsigned t = 0; t < nt; ++t)
            fs.push_back(std::async(std::launch::async, [&, t] {
                for (std::size_t k = t; k < ws.size(); k += nt)
                    work(k);
            }));
        for (auto& x : fs)
            x.get();
    }
    ComplexReport rep;
    rep.id = c.id;
    rep.depth = c.depth;
    rep.margin = margin;
    rep.h0 = FormalCharacter{rd, c.lam, c.depth - margin, {}};
    FormalCharacter weyl = weyl_character(rd, c.lam);
    for (std::size_t k = 0; k < ws.size(); ++k) {
        const Weight& mu = ws[k];
        if (!res[k].d2) {
            rep.d2_ok = false;
            rep.failures.push_back("d^2 != 0 at " + weight_str(mu));
        }
        if (res[k].h.empty())
            continue;
        long expect = weyl.mult.count(mu) ? weyl.mult.at(mu) : 0;
        for (std::size_t m = 0; m < res[k].h.size(); ++m)
            if (res[k].h[m])
                rep.cohomology[static_cast<int>(m)][mu] = res[k].h[m];
        rep.h0.add(mu, res[k].h[0]);
        if (res[k].euler != expect) {
            rep.euler_ok = false;
            rep.failures.push_back("Euler characteristic differs at " + weight_str(mu));
        }
        if (res[k].h[0] != expect) {
            rep.exact_ok = false;
            rep.failures.push_back("H^0 differs from the Weyl character at " + weight_str(mu));
        }
        for (std::size_t m = 1; m < res[k].h.size(); ++m)
            if (res[k].h[m]) {
                rep.exact_ok = false;
                rep.failures.push_back("H^" + std::to_string(m) + " != 0 at " + weight_str(mu));
            }
    }
    return rep;
}

// Negative controls.
inline ComplexOfModules flip_sign(ComplexOfModules c, std::pair<int, int> cover)
{
    c.signs.sign.at(cover) *= -1;
    return c;
}

// Adds 1 to entry (0,0) of a component at the first weight where it is nonzero.
inline ComplexOfModules perturb_component(ComplexOfModules c, std::pair<int, int> cover)
{
    // zero the first nonzero entry of the block nearest the top
    ModuleMap& f = c.components.at(cover);
    for (auto it = f.blocks.rbegin(); it != f.blocks.rend(); ++it) {
        Matrix& b = it->second;
        for (std::size_t r = 0; r < b.rows(); ++r)
            for (std::size_t k = 0; k < b.cols(); ++k)
                if (!b(r, k).is_zero()) {
                    b(r, k) = Scalar::in(c.field, 0L);
                    return c;
                }
    }
    throw DomainError("component is zero everywhere");
}

// Some A = c B with c a nonzero scalar, over the common blocks.
inline std::optional<Scalar> proportional(const ModuleMap& a, const ModuleMap& b)
{
    std::optional<Scalar> c;
    for (auto& [mu, blk] : b.blocks) {
        if (!a.has_block(mu))
            continue;
        Matrix x = a.block(mu);
        for (std::size_t r = 0; r < blk.rows(); ++r)
            for (std::size_t k = 0; k < blk.cols(); ++k) {
                if (blk(r, k).is_zero()) {
                    if (!x(r, k).is_zero())
                        return std::nullopt;
                    continue;
                }
                Scalar q = x(r, k) / blk(r, k);
                if (!c)
                    c = q;
                else if (!(q == *c))
                    return std::nullopt;
            }
    }
    if (!c || c->is_zero())
        return std::nullopt;
    return c;
}

// Levi pieces of the rank-one complex for sl2 at lam1 (Z-forms over Q):
// source D(M(lam1)), target D(Im s), component between them.
struct Sl2Differential {
    ModulePtr src, tgt;
    ModuleMap d;
};

inline Sl2Differential sl2_differential(int lam1, int depth)
{
    RootDatum a1 = build_root_datum(TypeTag::A1);
    auto c = lattice_complex(enumerate_weyl(a1), {lam1}, depth, {}, "sl2");
    auto& d = c.components.begin()->second;
    return {c.terms[0][0].module, c.terms[1][0].module, d};
}

struct InducedDifferential {
    InducedData src, tgt;
    ModuleMap map;
};

namespace detail {

inline InducedDifferential induced_pieces(const BruhatPoset& p, std::size_t i, const Weight& lam, int depth,
                                          const Field& f, bool twist)
{
    const RootDatum& rd = p.rd;
    if (rd.rank() != 2)
        throw DomainError("induction from a Levi sl2 needs rank 2");
    if (!is_regular_dominant(rd, lam))
        throw DomainError("needs a regular dominant weight");
    const WeylElement& w0 = longest_element(p);
    const WeylElement& x = p.multiply(p.from_word({static_cast<int>(i)}), w0);
    Weight mu = dot_action(rd, x, lam);
    int lam1 = mu[i];
    std::size_t j = 1 - i;
    Weight top = twist ? dot_action(rd, p.from_word({static_cast<int>(j)}), mu) : mu;
    // Levi levels needed: every vector of the window has level <= depth + lam1 + 2
    auto sl2 = sl2_differential(lam1, depth + lam1 + 4);
    InducedSource s{i, mu, sl2.src}, t{i, mu, sl2.tgt};
    auto a = build_induced(rd, s, j, twist, twist, top, depth, f);
    auto b = build_induced(rd, t, j, twist, twist, top, depth, f);
    std::map<int, Matrix> levels;
    for (auto& [nu, blk] : sl2.d.blocks)
        levels[(lam1 - nu[0]) / 2] = blk;
    return {a, b, induced_map(a, b, levels)};
}

} // namespace detail

// Ind from the minimal parabolic of the rank-one differential at the Levi
// weight of s_i w0 . lam: D~M(s_i w0.lam) -> D~M(w0.lam).
inline InducedDifferential induced_differential_sl2_to_g(const BruhatPoset& p, std::size_t i, const Weight& lam, int depth,
                                                         const Field& f = {})
{
    return detail::induced_pieces(p, i, lam, depth, f, false);
}

// Theta_w of the induced differential for w = e or w = s_j (j != i).
inline InducedDifferential twisted_differential(const BruhatPoset& p, const WeylElement& w, std::size_t i, const Weight& lam,
                                                int depth, const Field& f = {})
{
    if (w.length() == 0)
        return induced_differential_sl2_to_g(p, i, lam, depth, f);
    if (w.length() != 1 || static_cast<std::size_t>(w.word[0]) == i)
        throw UnsupportedError("twisted differentials are implemented for w = e or w = s_j with j != i");
    return detail::induced_pieces(p, i, lam, depth, f, true);
}

} // namespace bggkit
