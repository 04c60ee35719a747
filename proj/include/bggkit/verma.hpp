#pragma once

#include "hyperalgebra.hpp"
#include "module.hpp"

#include <functional>
#include <memory>
#include <mutex>

namespace bggkit {

// One shared algebra per root datum (default convex order).
inline const Hyperalgebra& hyperalgebra_for(const RootDatum& rd)
{
    static std::map<TypeTag, std::unique_ptr<Hyperalgebra>> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lk(mu);
    auto& slot = cache[rd.tag];
    if (!slot)
        slot = std::make_unique<Hyperalgebra>(rd);
    return *slot;
}

// Divided PBW monomials in the negative root vectors with weight top - beta,
// grouped by weight; within a weight, lexicographically decreasing exponents.
inline std::map<Weight, std::vector<std::vector<int>>> negative_monomials(const Hyperalgebra& U, const Weight& top, int depth)
{
    const RootDatum& rd = U.root_datum();
    std::size_t N = U.convex_order().size();
    std::map<Weight, std::vector<std::vector<int>>> out;
    std::vector<int> a(N, 0);
    std::function<void(std::size_t, int)> rec = [&](std::size_t k, int left) {
        if (k == N) {
            Weight mu = top;
            for (std::size_t j = 0; j < N; ++j)
                mu = mu - a[j] * U.convex_order()[j];
            out[mu].push_back(a);
            return;
        }
        int h = *height(rd, U.convex_order()[k]);
        for (int e = 0; e * h <= left; ++e) {
            a[k] = e;
            rec(k + 1, left - e * h);
        }
        a[k] = 0;
    };
    rec(0, depth);
    for (auto& [mu, v] : out)
        std::sort(v.begin(), v.end(), std::greater<>());
    return out;
}

namespace detail {

// Coordinates of x_g * F^(a) v in the divided monomial basis of M(lam).
inline std::map<std::vector<int>, mpq_class> act_on_verma(const Hyperalgebra& U, std::size_t g,
                                                          const std::vector<int>& a, const Weight& lam)
{
    std::size_t N = U.convex_order().size(), r = U.root_datum().rank();
    std::vector<int> full(U.num_generators(), 0), gm(U.num_generators(), 0);
    mpq_class c = 1;
    for (std::size_t k = 0; k < N; ++k) {
        full[k] = a[k];
        c /= mpq_class(factorial(a[k]));
    }
    gm[g] = 1;
    QElement prod = U.multiply({{gm, 1}}, {{full, c}});
    std::map<std::vector<int>, mpq_class> out;
    for (auto& [m, coef] : prod) {
        bool killed = false;
        for (std::size_t k = N + r; k < m.size(); ++k)
            killed = killed || m[k];
        if (killed)
            continue;
        mpq_class v = coef;
        for (std::size_t i = 0; i < r; ++i)
            for (int e = 0; e < m[N + i]; ++e)
                v *= lam[i];
        std::vector<int> fa(m.begin(), m.begin() + static_cast<long>(N));
        for (std::size_t k = 0; k < N; ++k)
            v *= mpq_class(factorial(fa[k]));
        if (v != 0)
            out[fa] += v;
    }
    return out;
}

// Fill E_i^(n), F_i^(n) from the single-step matrices by E^(n) = E E^(n-1) / n.
inline void fill_divided_powers(TruncatedModule& m, const std::map<std::tuple<int, std::size_t, Weight>, Matrix>& step)
{
    const RootDatum& rd = m.root_datum();
    for (auto& mu : m.weights())
        for (int dir : {+1, -1})
            for (std::size_t i = 0; i < rd.rank(); ++i) {
                Matrix acc = Matrix::identity(m.dim(mu), m.field());
                Weight cur = mu;
                for (int n = 1; n <= m.depth(); ++n) {
                    Weight nxt = TruncatedModule::shift(rd, dir, i, 1, cur);
                    if (!m.in_window(nxt))
                        break;
                    acc = step.at({dir, i, cur}) * acc * Scalar(mpq_class(1, n));
                    m.set_op(dir, i, n, mu, acc);
                    cur = nxt;
                }
            }
}

} // namespace detail

inline TruncatedModule build_verma_q(const RootDatum& rd, const Weight& lam, int depth)
{
    const Hyperalgebra& U = hyperalgebra_for(rd);
    TruncatedModule m(rd, Field::rationals(), lam, depth);
    auto monos = negative_monomials(U, lam, depth);
    for (auto& mu : m.weights())
        m.set_dim(mu, monos[mu].size());
    std::map<std::tuple<int, std::size_t, Weight>, Matrix> step;
    for (auto& mu : m.weights())
        for (int dir : {+1, -1})
            for (std::size_t i = 0; i < rd.rank(); ++i) {
                Weight nu = TruncatedModule::shift(rd, dir, i, 1, mu);
                if (!m.in_window(nu))
                    continue;
                std::size_t g = dir > 0 ? U.positive_simple(i) : U.negative_simple(i);
                Matrix x(m.dim(nu), m.dim(mu));
                const auto& tb = monos[nu];
                for (std::size_t c = 0; c < monos[mu].size(); ++c)
                    for (auto& [fa, v] : detail::act_on_verma(U, g, monos[mu][c], lam)) {
                        auto it = std::find(tb.begin(), tb.end(), fa);
                        if (it == tb.end())
                            throw InconsistencyError("straightening left the weight space");
                        x(static_cast<std::size_t>(it - tb.begin()), c) += Scalar(v);
                    }
                step[{dir, i, mu}] = x;
            }
    detail::fill_divided_powers(m, step);
    return m;
}

// Verma module in the divided PBW basis (a Z-form), reduced into the field.
inline ModulePtr verma(const RootDatum& rd, const Weight& lam, int depth, const Field& f = {})
{
    check_weight(rd, lam);
    if (depth < 0)
        throw DomainError("negative depth");
    static std::map<std::tuple<TypeTag, Weight, int, unsigned>, ModulePtr> cache;
    static std::mutex mu;
    auto key = std::make_tuple(rd.tag, lam, depth, f.p);
    {
        std::lock_guard<std::mutex> lk(mu);
        auto it = cache.find(key);
        if (it != cache.end())
            return it->second;
    }
    ModulePtr out;
    if (f.is_rational())
        out = share(build_verma_q(rd, lam, depth));
    else
        out = share(verma(rd, lam, depth)->reduce(f));
    std::lock_guard<std::mutex> lk(mu);
    cache.emplace(key, out);
    return out;
}

// Gram matrices of the contravariant form on M(lam) over Q: the canonical
// map M -> DM sending the generator to the dual generator.
inline std::map<Weight, Matrix> shapovalov(const TruncatedModule& m)
{
    if (!m.field().is_rational())
        throw DomainError("Shapovalov form is computed over Q");
    const RootDatum& rd = m.root_datum();
    std::map<Weight, Matrix> s;
    for (auto& mu : m.weights()) {
        if (mu == m.top()) {
            s[mu] = Matrix::identity(m.dim(mu));
            continue;
        }
        Matrix a(0, m.dim(mu)), b(0, m.dim(mu));
        for (std::size_t i = 0; i < rd.rank(); ++i) {
            Weight nu = TruncatedModule::shift(rd, +1, i, 1, mu);
            if (!m.in_window(nu))
                continue;
            a = a.vstack(m.F(i, 1, nu).transpose());
            b = b.vstack(s.at(nu) * m.E(i, 1, mu));
        }
        auto x = a.solve(b);
        if (!x)
            throw InconsistencyError("contravariant form recursion is inconsistent");
        s[mu] = *x;
    }
    return s;
}

inline ModuleMap canonical_map_to_dual(ModulePtr m, ModulePtr dm)
{
    auto s = shapovalov(*verma(m->root_datum(), m->top(), m->depth()));
    ModuleMap f{m, dm, {}};
    for (auto& [mu, b] : s)
        f.blocks[mu] = b.to_field(m->field());
    return f;
}

inline int full_depth(const RootDatum& rd, const Weight& lam)
{
    BruhatPoset p = enumerate_weyl(rd);
    return *height(rd, lam - act(rd, longest_element(p), lam));
}

// Radical of the contravariant form: ker_Z(S) reduced into the field.
inline Subspace shapovalov_radical(const RootDatum& rd, const Weight& lam, int depth, const Field& f)
{
    auto s = shapovalov(*verma(rd, lam, depth));
    Subspace rad;
    for (auto& [mu, b] : s) {
        Matrix k = b.kernel();
        rad[mu] = (f.is_rational() ? k : saturate_columns(k)).to_field(f);
    }
    return rad;
}

// W(lam) = M(lam) / rad, with rad the saturated radical of the contravariant form.
inline ModulePtr weyl_module(const RootDatum& rd, const Weight& lam, const Field& f = {}, int depth = -1)
{
    if (!is_dominant(rd, lam))
        throw DomainError("Weyl module needs a dominant weight");
    if (depth < 0)
        depth = full_depth(rd, lam);
    auto q = quotient(verma(rd, lam, depth, f), shapovalov_radical(rd, lam, depth, f));
    return q.module;
}

inline ModulePtr coweyl_module(const RootDatum& rd, const Weight& lam, const Field& f = {}, int depth = -1)
{
    return share(contragredient(*weyl_module(rd, lam, f, depth)));
}

// Image of M_F(lam) -> DM_F(lam); this is the simple module, which is smaller
// than W_F(lam) in small characteristic.
inline ModulePtr canonical_image(const RootDatum& rd, const Weight& lam, const Field& f = {}, int depth = -1)
{
    if (depth < 0)
        depth = full_depth(rd, lam);
    auto m = verma(rd, lam, depth, f);
    auto dm = share(contragredient(*m));
    return map_image(canonical_map_to_dual(m, dm)).first;
}

// Rank one: M(lam) modulo the submodule generated by F^(n) v for all n > lam.
inline ModulePtr weyl_module_rank1(int lam, const Field& f = {}, int depth = -1)
{
    RootDatum rd = build_root_datum(TypeTag::A1);
    if (lam < 0)
        throw DomainError("Weyl module needs a dominant weight");
    if (depth < 0)
        depth = lam + 1;
    auto m = verma(rd, {lam}, depth, f);
    Subspace seeds;
    for (int n = lam + 1; n <= depth; ++n) {
        Matrix v(1, 1, f);
        v(0, 0) = Scalar::in(f, 1);
        seeds[{lam - 2 * n}] = v.to_field(f);
    }
    return quotient(m, generated_submodule(*m, seeds)).module;
}

// Vectors of weight mu killed by every E_i^(n).
inline Matrix singular_vectors(const TruncatedModule& m, const Weight& mu)
{
    if (!m.in_window(mu))
        throw DomainError("weight outside the truncation window");
    const RootDatum& rd = m.root_datum();
    Matrix stack(0, m.dim(mu), m.field());
    for (std::size_t i = 0; i < rd.rank(); ++i)
        for (int n = 1; n <= m.depth(); ++n) {
            Weight nu = TruncatedModule::shift(rd, +1, i, n, mu);
            if (!m.in_window(nu))
                break;
            stack = stack.vstack(m.E(i, n, mu));
        }
    return stack.to_field(m.field()).kernel();
}

// Primitive integral vector on the rational line spanned by v, with positive leading entry.
inline Matrix primitive_integral(const Matrix& v)
{
    mpz_class den = 1;
    for (std::size_t r = 0; r < v.rows(); ++r)
        mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), v(r, 0).rational().get_den().get_mpz_t());
    mpz_class g = 0;
    Matrix w = v * Scalar(den);
    for (std::size_t r = 0; r < w.rows(); ++r)
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), w(r, 0).rational().get_num().get_mpz_t());
    if (g == 0)
        throw DomainError("zero vector has no primitive multiple");
    for (std::size_t r = 0; r < w.rows(); ++r)
        if (!w(r, 0).is_zero()) {
            if (sgn(w(r, 0).rational()) < 0)
                g = -g;
            break;
        }
    return w * Scalar(mpq_class(1, 1) / mpq_class(g));
}

// Hom from a Verma module determined by the image of its generator, over Q.
inline ModuleMap map_from_generator(ModulePtr src, ModulePtr tgt, const Matrix& image)
{
    const RootDatum& rd = src->root_datum();
    ModuleMap f{src, tgt, {}};
    for (auto& mu : src->weights()) {
        if (!tgt->known_dim(mu))
            continue;
        if (mu == src->top()) {
            f.blocks[mu] = image;
            continue;
        }
        Matrix a(src->dim(mu), 0, src->field()), b(*tgt->known_dim(mu), 0, src->field());
        for (std::size_t i = 0; i < rd.rank(); ++i) {
            Weight nu = TruncatedModule::shift(rd, +1, i, 1, mu);
            if (!src->in_window(nu))
                continue;
            a = a.hstack(src->F(i, 1, nu));
            b = b.hstack(tgt->F(i, 1, nu) * f.block(nu));
        }
        auto x = solve_left(a, b);
        if (!x)
            throw InconsistencyError("generator image does not extend to a module map");
        f.blocks[mu] = *x;
    }
    return f;
}

inline ModuleMap reduce_map(const ModuleMap& f, ModulePtr src, ModulePtr tgt)
{
    ModuleMap g{src, tgt, {}};
    for (auto& [mu, b] : f.blocks) {
        if (!b.is_integral())
            throw InconsistencyError("non-integral block in a Z-form map");
        g.blocks[mu] = b.to_field(src->field());
    }
    return g;
}

inline int dot_height(const RootDatum& rd, const WeylElement& w, const Weight& lam)
{
    return *height(rd, lam - dot_action(rd, w, lam));
}

// M(w'.lam) -> M(w.lam) for a cover w' = w s_i, both truncated on the window
// of M(lam) of the given depth. Over Q the generator goes to the singular
// vector with leading coefficient 1; over F_p to the reduction of the
// primitive integral singular vector (this reduction may fail to be injective).
inline ModuleMap verma_embedding(const BruhatPoset& p, const WeylElement& wp, const WeylElement& w,
                                 const Weight& lam, int depth, const Field& f = {})
{
    const RootDatum& rd = p.rd;
    if (!is_regular_dominant(rd, lam))
        throw DomainError("embedding needs a regular dominant weight");
    if (wp.length() != w.length() + 1 || !bruhat_leq(p, w, wp))
        throw DomainError("elements do not form a Bruhat cover");
    bool right_simple = false;
    for (std::size_t i = 0; i < rd.rank(); ++i)
        right_simple = right_simple || p.multiply(w, p.from_word({static_cast<int>(i)})) == wp;
    if (!right_simple)
        throw DomainError("cover is not a right multiplication by a simple reflection");
    int hw = dot_height(rd, w, lam), hp = dot_height(rd, wp, lam);
    if (hp > depth)
        throw DomainError("window too shallow for this embedding");
    Weight top_src = dot_action(rd, wp, lam), top_tgt = dot_action(rd, w, lam);
    auto src = verma(rd, top_src, depth - hp), tgt = verma(rd, top_tgt, depth - hw);
    Matrix sing = singular_vectors(*tgt, top_src);
    if (sing.cols() != 1)
        throw InconsistencyError("expected a unique singular vector");
    Matrix v = sing;
    for (std::size_t r = 0; r < v.rows(); ++r)
        if (!v(r, 0).is_zero()) {
            v = v * v(r, 0).inverse();
            break;
        }
    if (!f.is_rational())
        v = primitive_integral(v);
    ModuleMap q = map_from_generator(src, tgt, v);
    if (f.is_rational())
        return q;
    return reduce_map(q, verma(rd, top_src, depth - hp, f), verma(rd, top_tgt, depth - hw, f));
}

struct SubmoduleLattice {
    ModulePtr verma;                 // M(lam) over the requested field
    std::vector<Subspace> images;    // indexed like the poset elements
    std::vector<Subspace> lattices;  // Q: saturated integral bases (Z-forms) of the rational images
};

// Image of M(w.lam) in M(lam) along chain_to_identity(w); over F_p the
// saturated integral image reduced mod p.
inline SubmoduleLattice submodule_lattice(const BruhatPoset& p, const Weight& lam, int depth, const Field& f = {})
{
    const RootDatum& rd = p.rd;
    SubmoduleLattice out{verma(rd, lam, depth, f), {}, {}};
    for (auto& w : p.elements) {
        if (dot_height(rd, w, lam) > depth) {
            // M(w.lam) has no vectors in the window
            Subspace zero;
            for (auto& mu : out.verma->weights())
                zero[mu] = zero_matrix(out.verma->dim(mu), 0, Field::rationals());
            out.lattices.push_back(zero);
            for (auto& [mu, z] : zero)
                z = z.to_field(f);
            out.images.push_back(zero);
            continue;
        }
        auto chain = chain_to_identity(p, w);
        ModulePtr top_src = verma(rd, dot_action(rd, w, lam), depth - dot_height(rd, w, lam));
        ModuleMap comp = identity_map(top_src);
        for (std::size_t k = 0; k + 1 < chain.size(); ++k)
            comp = compose(verma_embedding(p, chain[k], chain[k + 1], lam, depth), comp);
        Subspace img, sat;
        for (auto& mu : out.verma->weights()) {
            Matrix im = comp.blocks.count(mu) ? comp.blocks.at(mu).image() : Matrix(out.verma->dim(mu), 0);
            Matrix z = saturate_columns(im);
            sat[mu] = z;
            img[mu] = f.is_rational() ? im : z.to_field(f);
        }
        out.images.push_back(img);
        out.lattices.push_back(sat);
    }
    return out;
}

} // namespace bggkit
