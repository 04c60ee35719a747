#pragma once

#include "verma.hpp"

#include <functional>
#include <memory>
#include <mutex>
#include <optional>

namespace bggkit {

// Reduced word of w0 alternating from index j; its convex order starts with
// alpha_j and, at rank 2, ends with the other simple root.
inline std::vector<int> alternating_word(const RootDatum& rd, std::size_t j)
{
    std::vector<int> w;
    std::size_t len = default_longest_word(rd).size();
    for (std::size_t k = 0; k < len; ++k)
        w.push_back(static_cast<int>(k % 2 == 0 ? j : 1 - j));
    return w;
}

inline const Hyperalgebra& hyperalgebra_with_word(const RootDatum& rd, const std::vector<int>& word)
{
    static std::map<std::pair<TypeTag, std::vector<int>>, std::unique_ptr<Hyperalgebra>> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lk(mu);
    auto& slot = cache[{rd.tag, word}];
    if (!slot)
        slot = std::make_unique<Hyperalgebra>(rd, word);
    return *slot;
}

using LieElement = std::vector<mpq_class>;   // coefficients on the generators

inline LieElement lie_generator(const Hyperalgebra& U, std::size_t g)
{
    LieElement x(U.num_generators(), 0);
    x[g] = 1;
    return x;
}

inline LieElement lie_bracket(const Hyperalgebra& U, const LieElement& x, const LieElement& y)
{
    LieElement out(U.num_generators(), 0);
    for (std::size_t a = 0; a < x.size(); ++a)
        if (x[a] != 0)
            for (std::size_t b = 0; b < y.size(); ++b)
                if (y[b] != 0) {
                    const auto& br = U.bracket(a, b);
                    for (std::size_t c = 0; c < br.size(); ++c)
                        out[c] += x[a] * y[b] * br[c];
                }
    return out;
}

inline bool lie_is_zero(const LieElement& x)
{
    for (auto& c : x)
        if (c != 0)
            return false;
    return true;
}

// Terms D^t(x), D = -ad(e), until they vanish; u e^m = sum_t C(m,t) e^(m-t) D^t(u)
// holds for every integer m in the localization at e.
inline std::vector<LieElement> commutation_series(const Hyperalgebra& U, const LieElement& x, std::size_t e, int bound = 8)
{
    std::vector<LieElement> out;
    LieElement cur = x;
    LieElement ge = lie_generator(U, e);
    while (!lie_is_zero(cur)) {
        if (static_cast<int>(out.size()) >= bound)
            throw DomainError("commutation series exceeds the bound");
        out.push_back(cur);
        LieElement nxt = lie_bracket(U, ge, cur);
        for (auto& c : nxt)
            c = -c;
        cur = nxt;
    }
    return out;
}

// [e^-1, u] as a finite sum of terms e^(exponent) * (Lie element); length is
// the number of nonzero D^t(u), t >= 0.
struct LocalizedSeries {
    std::vector<std::pair<int, LieElement>> terms;
    std::size_t length = 0;
};

inline LocalizedSeries localized_commutator(const Hyperalgebra& U, const LieElement& u, std::size_t e, int bound = 8)
{
    if (U.generators()[e].kind != GenKind::Negative)
        throw DomainError("localization needs a negative root generator");
    auto series = commutation_series(U, u, e, bound);
    LocalizedSeries out;
    out.length = series.size();
    // e^-1 u - u e^-1 = -sum_{t>=1} C(-1,t) e^(-1-t) D^t(u)
    for (std::size_t t = 1; t < series.size(); ++t) {
        LieElement term = series[t];
        mpq_class c = -mpq_class(binomial(-1, static_cast<long>(t)));
        for (auto& x : term)
            x *= c;
        out.terms.push_back({-1 - static_cast<int>(t), term});
    }
    return out;
}

// Adjoint action of the lift exp(E_j) exp(-F_j) exp(E_j) on the realization.
inline Matrix reflection_lift(const Hyperalgebra& U, std::size_t j)
{
    auto expo = [](const Matrix& x) {
        Matrix out = Matrix::identity(x.rows()), term = Matrix::identity(x.rows());
        for (int k = 1; !term.is_zero(); ++k) {
            term = term * x * Scalar(mpq_class(1, k));
            out += term;
        }
        return out;
    };
    const Matrix& e = U.generator_matrix(U.positive_simple(j));
    const Matrix& f = U.generator_matrix(U.negative_simple(j));
    return expo(e) * expo(f * Scalar(-1)) * expo(e);
}

// Ad(lift)(x_g) = c * x_g' for a root generator g.
inline std::pair<std::size_t, mpq_class> conjugate_generator(const Hyperalgebra& U, std::size_t j, std::size_t g)
{
    Matrix s = reflection_lift(U, j);
    Matrix img = s * U.generator_matrix(g) * *s.inverse();
    for (std::size_t h = 0; h < U.num_generators(); ++h) {
        if (U.generators()[h].kind == GenKind::Cartan)
            continue;
        const Matrix& x = U.generator_matrix(h);
        for (std::size_t r = 0; r < x.rows(); ++r)
            for (std::size_t c = 0; c < x.cols(); ++c)
                if (!x(r, c).is_zero()) {
                    Scalar ratio = img(r, c) / x(r, c);
                    if (!ratio.is_zero() && img == x * ratio)
                        return {h, ratio.rational()};
                    goto next;
                }
    next:;
    }
    throw InconsistencyError("reflection lift does not permute root vectors");
}

// Module U (x)_{U(p)} V, with p the Borel or the minimal parabolic of a
// simple index, optionally localized at the first negative generator modulo
// the unlocalized part, optionally twisted by the reflection of that
// generator. Labels (m, rest, level, b) stand for the Z-form basis vector
// scale * e^m * rest_ordinary (x) v_{level, b}, with e^(m) the divided power
// (also for m < 0: e^(-k) = (-1)^(k-1) (k-1)! e^-k).
struct InducedSource {
    std::optional<std::size_t> levi;   // simple index of the Levi sl2, if any
    Weight top;                        // highest weight of V
    ModulePtr v;                       // rank-one module over Q (Levi case only)
};

struct InducedData {
    using Label = std::tuple<int, std::vector<int>, int, std::size_t>;
    ModulePtr module;                            // over the requested field
    ModulePtr rational;                          // same module over Q
    std::map<Weight, std::vector<Label>> labels; // basis order per (new) weight
};

namespace detail {

using Label = InducedData::Label;
using Element = std::map<Label, mpq_class>;

class InducedEngine {
public:
    InducedEngine(const RootDatum& rd, const InducedSource& src, std::size_t first, bool localize, bool twist)
        : rd_(rd), src_(src), localize_(localize), twist_(twist),
          U_(hyperalgebra_with_word(rd, rd.rank() == 1 ? std::vector<int>{0} : alternating_word(rd, first))),
          first_(first)
    {
        N_ = U_.convex_order().size();
        if (src.levi) {
            if (rd.rank() != 2 || *src.levi == first)
                throw DomainError("Levi index must differ from the localized index");
            if (!src.v || src.v->field().is_rational() == false)
                throw DomainError("Levi module must be given over Q");
            if (U_.convex_order().back() != rd.simple_roots[*src.levi])
                throw InconsistencyError("convex order does not end with the Levi root");
        }
        rest_end_ = src.levi ? N_ - 1 : N_;
    }

    const Hyperalgebra& algebra() const { return U_; }

    Weight old_weight(const Label& l) const
    {
        auto& [m, rest, level, b] = l;
        Weight w = src_.top - level * (src_.levi ? rd_.simple_roots[*src_.levi] : Weight(rd_.rank(), 0));
        w = w - m * U_.convex_order()[0];
        for (std::size_t k = 1; k < rest_end_; ++k)
            w = w - rest[k - 1] * U_.convex_order()[k];
        return w;
    }
    Weight new_weight(const Label& l) const
    {
        Weight w = old_weight(l);
        return twist_ ? reflect(rd_, first_, w) : w;
    }

    mpq_class scale(const Label& l) const
    {
        auto& [m, rest, level, b] = l;
        mpq_class s = 1;
        if (m >= 0)
            s /= mpq_class(factorial(m));
        else
            s = mpq_class(factorial(-m - 1)) * ((-m - 1) % 2 ? -1 : 1);
        for (int r : rest)
            s /= mpq_class(factorial(r));
        return s;
    }

    std::size_t level_dim(int level) const
    {
        if (!src_.levi)
            return level == 0 ? 1 : 0;
        return src_.v->dim({src_.v->top()[0] - 2 * level});
    }

    // x * (e^m rest (x) v) in ordinary coordinates, for a Lie generator x of U.
    Element act(std::size_t g, const Label& l) const
    {
        auto& [m, rest, level, b] = l;
        Element out;
        auto series = commutation_series(U_, lie_generator(U_, g), 0);
        for (std::size_t t = 0; t < series.size(); ++t) {
            mpq_class bin(binomial(m, static_cast<long>(t)));
            if (bin == 0)
                continue;
            for (std::size_t h = 0; h < series[t].size(); ++h) {
                if (series[t][h] == 0)
                    continue;
                for (auto& [lab, c] : act_rest(h, rest, level, b)) {
                    auto nl = lab;
                    std::get<0>(nl) += m - static_cast<int>(t);
                    if (localize_ && std::get<0>(nl) >= 0)
                        continue;
                    mpq_class& slot = out[nl];
                    slot += c * bin * series[t][h];
                    if (slot == 0)
                        out.erase(nl);
                }
            }
        }
        return out;
    }

private:
    // x_h * (rest (x) v_{level,b}); labels carry the new exponent of e in slot 0.
    Element act_rest(std::size_t h, const std::vector<int>& rest, int level, std::size_t b) const
    {
        auto key = std::make_tuple(h, rest, level, b);
        {
            std::lock_guard<std::mutex> lk(memo_mu_);
            auto it = memo_.find(key);
            if (it != memo_.end())
                return it->second;
        }
        std::vector<int> mono(U_.num_generators(), 0);
        for (std::size_t k = 1; k < rest_end_; ++k)
            mono[k] = rest[k - 1];
        std::vector<int> gm(U_.num_generators(), 0);
        gm[h] = 1;
        QElement prod = U_.multiply({{gm, 1}}, {{mono, 1}});
        std::size_t r = rd_.rank();
        Element out;
        for (auto& [pm, c] : prod) {
            // positive part acts first on v, then the Cartan part, then the Levi F
            std::map<std::size_t, mpq_class> vec{{b, c}};
            int lev = level;
            bool dead = false;
            for (std::size_t k = N_ + r; k < pm.size() && !dead; ++k) {
                if (!pm[k])
                    continue;
                if (!src_.levi || U_.generators()[k].weight != rd_.simple_roots[*src_.levi]) {
                    dead = true;
                    break;
                }
                for (int e = 0; e < pm[k] && !dead; ++e) {
                    vec = levi_step(+1, lev, vec);
                    --lev;
                    dead = vec.empty();
                }
            }
            if (dead)
                continue;
            Weight wt = src_.top - lev * (src_.levi ? rd_.simple_roots[*src_.levi] : Weight(r, 0));
            mpq_class hs = 1;
            for (std::size_t i = 0; i < r; ++i)
                for (int e = 0; e < pm[N_ + i]; ++e)
                    hs *= wt[i];
            if (hs == 0)
                continue;
            if (src_.levi)
                for (int e = 0; e < pm[N_ - 1] && !vec.empty(); ++e) {
                    vec = levi_step(-1, lev, vec);
                    ++lev;
                }
            std::vector<int> nrest(pm.begin() + 1, pm.begin() + static_cast<long>(rest_end_));
            for (auto& [bb, vc] : vec) {
                Label nl{pm[0], nrest, lev, bb};
                mpq_class& slot = out[nl];
                slot += hs * vc;
                if (slot == 0)
                    out.erase(nl);
            }
        }
        std::lock_guard<std::mutex> lk(memo_mu_);
        memo_[key] = out;
        return out;
    }

    // Ordinary E_i (dir = +1) or F_i (dir = -1) of the Levi on V.
    std::map<std::size_t, mpq_class> levi_step(int dir, int level, const std::map<std::size_t, mpq_class>& vec) const
    {
        int t = src_.v->top()[0];
        Weight mu{t - 2 * level};
        Weight nu{t - 2 * (level - dir)};
        if (!src_.v->known_dim(nu))
            throw DomainError("Levi module window too shallow for the induced window");
        Matrix a = src_.v->op(dir, 0, 1, mu);
        std::map<std::size_t, mpq_class> out;
        for (std::size_t row = 0; row < a.rows(); ++row) {
            mpq_class s = 0;
            for (auto& [c, v] : vec)
                s += a(row, c).rational() * v;
            if (s != 0)
                out[row] = s;
        }
        return out;
    }

    RootDatum rd_;
    InducedSource src_;
    bool localize_, twist_;
    const Hyperalgebra& U_;
    std::size_t first_;
    std::size_t N_ = 0, rest_end_ = 0;
    mutable std::mutex memo_mu_;
    mutable std::map<std::tuple<std::size_t, std::vector<int>, int, std::size_t>, Element> memo_;
};

} // namespace detail

// Builds the (localized, twisted) induced module on the window of the given
// top and depth; the action of a simple generator is read through the lift
// when twisted. Over F_p the integral Z-form is reduced.
inline InducedData build_induced(const RootDatum& rd, const InducedSource& src, std::size_t first, bool localize,
                                 bool twist, const Weight& top, int depth, const Field& f = {})
{
    detail::InducedEngine eng(rd, src, first, localize, twist);
    const Hyperalgebra& U = eng.algebra();
    std::size_t N = U.convex_order().size();
    std::size_t nrest = (src.levi ? N - 1 : N) - 1;
    TruncatedModule m(rd, Field::rationals(), top, depth);
    InducedData out;
    // enumerate labels
    std::vector<int> rest(nrest, 0);
    int lim = depth + 1;
    std::function<void(std::size_t)> rec = [&](std::size_t k) {
        if (k < nrest) {
            for (int e = 0; e <= lim; ++e) {
                rest[k] = e;
                rec(k + 1);
            }
            rest[k] = 0;
            return;
        }
        int mlo = localize ? -lim - 1 : 0, mhi = localize ? -1 : lim;
        int lmax = src.levi ? lim : 0;
        for (int mm = mlo; mm <= mhi; ++mm)
            for (int lev = 0; lev <= lmax; ++lev) {
                if (src.levi && !src.v->known_dim({src.v->top()[0] - 2 * lev}))
                    continue;
                for (std::size_t b = 0; b < eng.level_dim(lev); ++b) {
                    detail::Label l{mm, rest, lev, b};
                    Weight w = eng.new_weight(l);
                    if (m.in_window(w))
                        out.labels[w].push_back(l);
                    else if (m.outside_above(w))
                        throw InconsistencyError("induced module has a vector above the declared top");
                }
            }
    };
    rec(0);
    for (auto& [w, ls] : out.labels) {
        std::sort(ls.begin(), ls.end(), std::greater<>());
        m.set_dim(w, ls.size());
    }
    // single-step matrices of the (twisted) simple generators
    std::map<std::tuple<int, std::size_t, Weight>, Matrix> step;
    for (auto& mu : m.weights())
        for (int dir : {+1, -1})
            for (std::size_t i = 0; i < rd.rank(); ++i) {
                Weight nu = TruncatedModule::shift(rd, dir, i, 1, mu);
                if (!m.in_window(nu))
                    continue;
                std::size_t g = dir > 0 ? U.positive_simple(i) : U.negative_simple(i);
                mpq_class c = 1;
                if (twist)
                    std::tie(g, c) = conjugate_generator(U, first, g);
                Matrix x(m.dim(nu), m.dim(mu));
                const auto& tl = out.labels[nu];
                const auto& sl = out.labels[mu];
                for (std::size_t col = 0; col < sl.size(); ++col)
                    for (auto& [lab, v] : eng.act(g, sl[col])) {
                        auto it = std::find(tl.begin(), tl.end(), lab);
                        if (it == tl.end())
                            throw InconsistencyError("induced action left the weight space");
                        // ordinary coordinates to Z-form coordinates
                        x(static_cast<std::size_t>(it - tl.begin()), col) +=
                            Scalar(c * v * eng.scale(sl[col]) / eng.scale(lab));
                    }
                step[{dir, i, mu}] = x;
            }
    detail::fill_divided_powers(m, step);
    out.rational = share(m);
    out.module = f.is_rational() ? out.rational : share(m.reduce(f));
    return out;
}

// Map Ind(V) -> Ind(V') induced by a weight-preserving map of Levi modules,
// given per V-level as a matrix. Both sides must share all other parameters.
inline ModuleMap induced_map(const InducedData& a, const InducedData& b, const std::map<int, Matrix>& levels)
{
    ModuleMap g{a.module, b.module, {}};
    const Field& f = a.module->field();
    for (auto& mu : a.module->weights()) {
        auto db = b.module->known_dim(mu);
        if (!db)
            continue;
        Matrix blk(*db, a.module->dim(mu), f);
        if (a.labels.count(mu))
            for (std::size_t c = 0; c < a.labels.at(mu).size(); ++c) {
                auto [m, rest, lev, bb] = a.labels.at(mu)[c];
                if (!levels.count(lev))
                    continue;
                const Matrix& d = levels.at(lev);
                for (std::size_t r = 0; r < d.rows(); ++r) {
                    if (d(r, bb).is_zero())
                        continue;
                    if (!b.labels.count(mu))
                        throw InconsistencyError("induced map target label missing");
                    const auto& tl = b.labels.at(mu);
                    auto it = std::find(tl.begin(), tl.end(), InducedData::Label{m, rest, lev, r});
                    if (it == tl.end())
                        throw InconsistencyError("induced map target label missing");
                    blk(static_cast<std::size_t>(it - tl.begin()), c) += d(r, bb);
                }
            }
        g.blocks[mu] = blk.to_field(f);
    }
    return g;
}

inline bool twist_supported(const BruhatPoset& p, const WeylElement& w) { (void)p; return w.length() <= 1; }

// Theta_w applied to a Verma module: w = e is the identity; w = s_j localizes
// at F_j, quotients by the module and twists the grading by s_j.
inline ModulePtr twist_verma(const RootDatum& rd, const WeylElement& w, const Weight& mu, int depth, const Field& f = {})
{
    if (w.length() == 0)
        return verma(rd, mu, depth, f);
    if (w.length() != 1)
        throw UnsupportedError("twisting is implemented for the identity and simple reflections");
    std::size_t j = static_cast<std::size_t>(w.word[0]);
    InducedSource src{std::nullopt, mu, nullptr};
    Weight top = dot_action(rd, w, mu);
    return build_induced(rd, src, j, true, true, top, depth, f).module;
}

// Theta_w(m) for a Verma module m given as a module.
inline ModulePtr twist_module(const RootDatum& rd, const WeylElement& w, ModulePtr m, int depth)
{
    auto ref = verma(rd, m->top(), m->depth(), m->field());
    if (ref->ops() != m->ops())
        throw UnsupportedError("twisting is implemented on Verma modules");
    return twist_verma(rd, w, m->top(), depth, m->field());
}

// Theta_w(M(w0.lam)), whose character is that of M(w w0 . lam).
inline ModulePtr quasi_verma(const BruhatPoset& p, const WeylElement& w, const Weight& lam, int depth, const Field& f = {})
{
    if (!is_regular_dominant(p.rd, lam))
        throw DomainError("quasi-Verma module needs a regular dominant weight");
    return twist_verma(p.rd, w, dot_action(p.rd, longest_element(p), lam), depth, f);
}

// Restriction of m to the window of a lower top; m must vanish above it.
inline ModulePtr retop(ModulePtr m, const Weight& top, int depth)
{
    const RootDatum& rd = m->root_datum();
    TruncatedModule out(rd, m->field(), top, depth);
    for (auto& mu : out.weights()) {
        auto d = m->known_dim(mu);
        if (!d)
            throw DomainError("new window reaches below the module's window");
        out.set_dim(mu, *d);
    }
    for (auto& mu : m->weights())
        if (!out.in_window(mu) && out.outside_above(mu) && m->dim(mu))
            throw DomainError("module has vectors above the new top");
    for (auto& [key, a] : m->ops()) {
        auto [dir, i, n, mu] = key;
        if (out.in_window(mu) && n <= depth && out.known_dim(TruncatedModule::shift(rd, dir, i, n, mu)))
            out.set_op(dir, i, n, mu, a);
    }
    return share(std::move(out));
}

inline ModuleMap retop_map(const ModuleMap& f, ModulePtr src, ModulePtr tgt)
{
    ModuleMap g{src, tgt, {}};
    for (auto& mu : src->weights())
        if (auto d = tgt->known_dim(mu)) {
            if (f.has_block(mu))
                g.blocks[mu] = f.block(mu);
            else
                g.blocks[mu] = zero_matrix(*d, src->dim(mu), src->field());
        }
    return g;
}

// Semiregular bimodule over Q: S = U localized at F_j modulo U (w = s_j), or
// U itself (w = e), truncated to PBW monomials of total height <= depth with
// the localized exponent in [-depth-1, -1]. Elements are ordinary PBW
// coordinates with the first negative generator's exponent possibly negative.
class SemiregularModule {
public:
    SemiregularModule(const RootDatum& rd, std::optional<std::size_t> j, int depth)
        : rd_(rd), j_(j), depth_(depth),
          U_(hyperalgebra_with_word(rd, rd.rank() == 1 || !j ? default_longest_word(rd) : alternating_word(rd, *j)))
    {
        if (j && U_.generators()[0].weight != Weight(rd.rank(), 0) - rd.simple_roots[*j])
            throw InconsistencyError("localized generator is not first in the PBW order");
        std::size_t G = U_.num_generators();
        std::vector<int> a(G, 0);
        std::function<void(std::size_t, int)> rec = [&](std::size_t k, int left) {
            if (k == G) {
                basis_.push_back(a);
                return;
            }
            if (k == 0 && j_) {
                for (int e = 1; e - 1 <= left; ++e) {
                    a[0] = -e;
                    rec(1, left - (e - 1));
                }
                a[0] = 0;
                return;
            }
            int h = U_.generators()[k].height;
            for (int e = 0; e * h <= left; ++e) {
                a[k] = e;
                rec(k + 1, left - e * h);
            }
            a[k] = 0;
        };
        rec(0, depth);
        std::sort(basis_.begin(), basis_.end());
    }

    const Hyperalgebra& algebra() const { return U_; }
    const std::vector<std::vector<int>>& basis() const { return basis_; }
    int depth() const { return depth_; }

    // Weight of a monomial under the adjoint action.
    Weight weight(const std::vector<int>& m) const { return U_.weight(m); }

    QElement left(std::size_t g, const QElement& x) const
    {
        QElement out;
        for (auto& [m, c] : x) {
            if (!j_) {
                for (auto& [pm, pc] : U_.multiply({{unit(g), 1}}, {{m, c}}))
                    add_term(out, pm, pc);
                continue;
            }
            int e = m[0];
            std::vector<int> tail = m;
            tail[0] = 0;
            auto series = commutation_series(U_, lie_generator(U_, g), 0);
            for (std::size_t t = 0; t < series.size(); ++t) {
                mpq_class bin(binomial(e, static_cast<long>(t)));
                for (std::size_t h = 0; h < series[t].size(); ++h) {
                    if (series[t][h] == 0 || bin == 0)
                        continue;
                    for (auto& [pm, pc] : U_.multiply({{unit(h), 1}}, {{tail, 1}})) {
                        auto nm = pm;
                        nm[0] += e - static_cast<int>(t);
                        if (nm[0] < 0)
                            add_term(out, nm, pc * c * bin * series[t][h]);
                    }
                }
            }
        }
        return out;
    }

    QElement right(const QElement& x, std::size_t g) const
    {
        QElement out;
        for (auto& [m, c] : x) {
            std::vector<int> tail = m;
            int e = j_ ? m[0] : 0;
            tail[0] = j_ ? 0 : tail[0];
            for (auto& [pm, pc] : U_.multiply({{tail, c}}, {{unit(g), 1}})) {
                auto nm = pm;
                nm[0] += e;
                if (!j_ || nm[0] < 0)
                    add_term(out, nm, pc);
            }
        }
        return out;
    }

    // Number of (basis element, left generator, right generator) triples
    // where x (b y) != (x b) y.
    std::size_t commutation_defects() const
    {
        std::size_t bad = 0;
        for (auto& b : basis_)
            for (std::size_t g = 0; g < U_.num_generators(); ++g)
                for (std::size_t h = 0; h < U_.num_generators(); ++h) {
                    QElement x{{b, 1}};
                    if (left(g, right(x, h)) != right(left(g, x), h))
                        ++bad;
                }
        return bad;
    }

    std::map<Weight, std::size_t> weight_dims() const
    {
        std::map<Weight, std::size_t> out;
        for (auto& b : basis_)
            ++out[weight(b)];
        return out;
    }

private:
    std::vector<int> unit(std::size_t g) const
    {
        std::vector<int> u(U_.num_generators(), 0);
        u[g] = 1;
        return u;
    }

    RootDatum rd_;
    std::optional<std::size_t> j_;
    int depth_;
    const Hyperalgebra& U_;
    std::vector<std::vector<int>> basis_;
};

inline SemiregularModule build_semiregular(const BruhatPoset& p, const WeylElement& w, int depth, const Field& f = {})
{
    if (!f.is_rational())
        throw UnsupportedError("the semiregular bimodule is built over Q only");
    if (w.length() > 1)
        throw UnsupportedError("semiregular bimodules are implemented for length <= 1");
    std::optional<std::size_t> j;
    if (w.length() == 1)
        j = static_cast<std::size_t>(w.word[0]);
    return SemiregularModule(p.rd, j, depth);
}

// sl2: Hom_g(S_s, N)^ss for N = T_s^-1(m), over Q. A hom is a chain y_n = phi(F^-n-1)
// with F y_n = y_(n-1), F y_0 = 0; it is fixed by its entry at the bottom weight of m.
// Chains of weight nu = -top-2-2k have that entry anywhere in m's bottom space.
inline ModulePtr hom_from_semiregular(const BruhatPoset& p, const WeylElement& w, ModulePtr m, int depth)
{
    const RootDatum& rd = p.rd;
    if (rd.tag != TypeTag::A1)
        throw UnsupportedError("hom from the semiregular module is implemented for sl2");
    if (!m->field().is_rational())
        throw UnsupportedError("hom from the semiregular module is computed over Q");
    if (w.length() == 0)
        return m;
    int t = m->top()[0], d = m->depth();
    Weight bottom{t - 2 * d};
    std::size_t n = m->dim(bottom);
    TruncatedModule out(rd, Field::rationals(), {-t - 2}, depth);
    for (auto& mu : out.weights())
        out.set_dim(mu, n);
    // untwisted F is -E on m, untwisted E is -F on m; chain index of the
    // bottom entry for weight -t-2-2k is K = d + k
    Matrix fe = n ? m->F(0, 1, {t - 2 * d + 2}) * m->E(0, 1, bottom) : Matrix(0, 0);
    int h = 2 * d - t;   // untwisted weight of the bottom entry
    std::map<std::tuple<int, std::size_t, Weight>, Matrix> step;
    for (int k = 0; k <= depth; ++k) {
        Weight nu{-t - 2 - 2 * k};
        if (k < depth)
            step[{-1, 0, nu}] = Matrix::identity(n);
        if (k > 0) {
            int K = d + k;
            // (E phi)_(K-1) = E y_(K-1) + K (H - K - 1) y_K with y_(K-1) = F y_K
            step[{+1, 0, nu}] = fe + Matrix::identity(n) * Scalar(mpq_class(K * (h - K - 1)));
        }
    }
    detail::fill_divided_powers(out, step);
    return share(std::move(out));
}

} // namespace bggkit
