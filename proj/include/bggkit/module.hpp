#pragma once

#include "charring.hpp"
#include "matrix.hpp"

#include <map>
#include <memory>
#include <optional>
#include <tuple>
#include <vector>

namespace bggkit {

// Solve X A = B.
inline std::optional<Matrix> solve_left(const Matrix& a, const Matrix& b)
{
    auto x = a.transpose().solve(b.transpose());
    if (!x)
        return std::nullopt;
    return x->transpose();
}

inline Matrix zero_matrix(std::size_t r, std::size_t c, const Field& f) { return Matrix(r, c, f).to_field(f); }

// Weight-graded module on the window top - beta, ht(beta) <= depth, with
// action matrices of E_i^(n) and F_i^(n) (simple i, 1 <= n <= depth).
// Cartan elements act through the weight and are not stored.
class TruncatedModule {
public:
    TruncatedModule(const RootDatum& rd, const Field& f, const Weight& top, int depth)
        : rd_(rd), field_(f), top_(top), depth_(depth)
    {
        check_weight(rd, top);
        if (depth < 0)
            throw DomainError("negative depth");
        for (auto& c : cone_window(rd, depth)) {
            index_[top - from_root_coords(rd, c)] = weights_.size();
            weights_.push_back(top - from_root_coords(rd, c));
        }
        dims_.assign(weights_.size(), 0);
    }

    const RootDatum& root_datum() const { return rd_; }
    const Field& field() const { return field_; }
    const Weight& top() const { return top_; }
    int depth() const { return depth_; }
    const std::vector<Weight>& weights() const { return weights_; }

    std::optional<std::size_t> index(const Weight& mu) const
    {
        auto it = index_.find(mu);
        if (it == index_.end())
            return std::nullopt;
        return it->second;
    }
    bool in_window(const Weight& mu) const { return index_.count(mu) > 0; }
    // Weights not below top carry no vectors.
    bool outside_above(const Weight& mu) const { return !height(rd_, top_ - mu).has_value(); }
    int depth_of(const Weight& mu) const { return *height(rd_, top_ - mu); }

    std::size_t dim(const Weight& mu) const
    {
        if (auto i = index(mu))
            return dims_[*i];
        if (outside_above(mu))
            return 0;
        throw DomainError("weight lies below the truncation window");
    }
    std::optional<std::size_t> known_dim(const Weight& mu) const
    {
        if (auto i = index(mu))
            return dims_[*i];
        if (outside_above(mu))
            return 0;
        return std::nullopt;
    }
    void set_dim(const Weight& mu, std::size_t d)
    {
        auto i = index(mu);
        if (!i)
            throw DomainError("weight outside the window");
        dims_[*i] = d;
    }
    std::size_t total_dim() const
    {
        std::size_t s = 0;
        for (auto d : dims_)
            s += d;
        return s;
    }

    FormalCharacter character() const
    {
        FormalCharacter ch{rd_, top_, depth_, {}};
        for (std::size_t k = 0; k < weights_.size(); ++k)
            if (dims_[k])
                ch.add(weights_[k], static_cast<long>(dims_[k]));
        return ch;
    }

    // dir = +1 for E_i^(n), -1 for F_i^(n).
    static Weight shift(const RootDatum& rd, int dir, std::size_t i, int n, const Weight& mu)
    {
        return mu + (dir * n) * rd.simple_roots[i];
    }
    bool has_op(int dir, std::size_t i, int n, const Weight& mu) const
    {
        if (!in_window(mu))
            return false;
        return known_dim(shift(rd_, dir, i, n, mu)).has_value() && n <= depth_;
    }
    Matrix op(int dir, std::size_t i, int n, const Weight& mu) const
    {
        Weight nu = shift(rd_, dir, i, n, mu);
        std::size_t rows = dim(nu), cols = dim(mu);
        if (n > depth_ && rows && cols)
            throw DomainError("divided power exceeds the stored range");
        auto it = ops_.find({dir, i, n, mu});
        if (it != ops_.end())
            return it->second;
        return zero_matrix(rows, cols, field_);
    }
    Matrix E(std::size_t i, int n, const Weight& mu) const { return op(+1, i, n, mu); }
    Matrix F(std::size_t i, int n, const Weight& mu) const { return op(-1, i, n, mu); }
    void set_op(int dir, std::size_t i, int n, const Weight& mu, const Matrix& m)
    {
        Weight nu = shift(rd_, dir, i, n, mu);
        if (m.rows() != dim(nu) || m.cols() != dim(mu))
            throw DomainError("action matrix has the wrong shape");
        if (m.is_zero())
            ops_.erase({dir, i, n, mu});
        else
            ops_[{dir, i, n, mu}] = m.to_field(field_);
    }

    // Z-form with integral matrices reduced into another field.
    TruncatedModule reduce(const Field& f) const
    {
        if (!field_.is_rational())
            throw DomainError("only rational modules can be reduced");
        TruncatedModule out(rd_, f, top_, depth_);
        out.dims_ = dims_;
        for (auto& [k, m] : ops_) {
            if (!m.is_integral())
                throw InconsistencyError("non-integral action matrix in a Z-form");
            Matrix r = m.to_field(f);
            if (!r.is_zero())
                out.ops_[k] = r;
        }
        return out;
    }

    // Restriction to the weights within new_depth of the top.
    TruncatedModule truncate(int new_depth) const
    {
        TruncatedModule out(rd_, field_, top_, std::min(new_depth, depth_));
        for (auto& mu : out.weights_)
            out.set_dim(mu, dim(mu));
        for (auto& [k, m] : ops_)
            if (out.in_window(std::get<3>(k)) && std::get<2>(k) <= out.depth_
                && out.known_dim(shift(rd_, std::get<0>(k), std::get<1>(k), std::get<2>(k), std::get<3>(k))))
                out.ops_[k] = m;
        return out;
    }

    const std::map<std::tuple<int, std::size_t, int, Weight>, Matrix>& ops() const { return ops_; }

private:
    RootDatum rd_;
    Field field_;
    Weight top_;
    int depth_;
    std::vector<Weight> weights_;
    std::map<Weight, std::size_t> index_;
    std::vector<std::size_t> dims_;
    std::map<std::tuple<int, std::size_t, int, Weight>, Matrix> ops_;
};

using ModulePtr = std::shared_ptr<const TruncatedModule>;
using Subspace = std::map<Weight, Matrix>;   // column basis per weight

inline ModulePtr share(TruncatedModule m) { return std::make_shared<const TruncatedModule>(std::move(m)); }

// Weight-preserving map; blocks[mu] : src(mu) -> tgt(mu) for every mu in
// the source window where the target dimension is known.
struct ModuleMap {
    ModulePtr src, tgt;
    std::map<Weight, Matrix> blocks;

    Matrix block(const Weight& mu) const
    {
        auto it = blocks.find(mu);
        if (it != blocks.end())
            return it->second;
        auto r = tgt->known_dim(mu), c = src->known_dim(mu);
        if (!r || !c)
            throw DomainError("map block outside the known window");
        return zero_matrix(*r, *c, src->field());
    }
    bool has_block(const Weight& mu) const
    {
        return src->known_dim(mu) && tgt->known_dim(mu);
    }
};

inline ModuleMap zero_map(ModulePtr src, ModulePtr tgt)
{
    ModuleMap f{src, tgt, {}};
    for (auto& mu : src->weights())
        if (auto d = tgt->known_dim(mu))
            f.blocks[mu] = zero_matrix(*d, src->dim(mu), src->field());
    return f;
}

inline ModuleMap identity_map(ModulePtr m)
{
    ModuleMap f{m, m, {}};
    for (auto& mu : m->weights())
        f.blocks[mu] = Matrix::identity(m->dim(mu), m->field());
    return f;
}

inline ModuleMap compose(const ModuleMap& g, const ModuleMap& f)
{
    ModuleMap h{f.src, g.tgt, {}};
    for (auto& [mu, b] : f.blocks)
        if (g.has_block(mu))
            h.blocks[mu] = g.block(mu) * b;
    return h;
}

inline ModuleMap scale(const ModuleMap& f, const Scalar& s)
{
    ModuleMap g = f;
    for (auto& [mu, b] : g.blocks)
        b = b * s;
    return g;
}

inline ModuleMap add(const ModuleMap& f, const ModuleMap& g)
{
    ModuleMap h = f;
    for (auto& [mu, b] : h.blocks)
        if (g.blocks.count(mu))
            b = b + g.blocks.at(mu);
    return h;
}

inline bool maps_equal(const ModuleMap& f, const ModuleMap& g)
{
    for (auto& [mu, b] : f.blocks)
        if (g.has_block(mu) && !(b == g.block(mu)))
            return false;
    return true;
}

inline bool is_zero_map(const ModuleMap& f)
{
    for (auto& [mu, b] : f.blocks)
        if (!b.is_zero())
            return false;
    return true;
}

// Commutation with every stored E_i^(n), F_i^(n) wherever all four spaces are known.
inline bool is_module_map(const ModuleMap& f)
{
    const TruncatedModule& a = *f.src;
    const TruncatedModule& b = *f.tgt;
    const RootDatum& rd = a.root_datum();
    for (auto& mu : a.weights()) {
        if (!f.has_block(mu))
            continue;
        for (int dir : {+1, -1})
            for (std::size_t i = 0; i < rd.rank(); ++i)
                for (int n = 1; n <= std::min(a.depth(), b.depth()); ++n) {
                    Weight nu = TruncatedModule::shift(rd, dir, i, n, mu);
                    if (!a.known_dim(nu) || !f.has_block(nu) || !b.in_window(mu))
                        continue;
                    if (!a.has_op(dir, i, n, mu) || !b.has_op(dir, i, n, mu))
                        continue;
                    if (!(b.op(dir, i, n, mu) * f.block(mu) == f.block(nu) * a.op(dir, i, n, mu)))
                        return false;
                }
    }
    return true;
}

inline void require_module_map(const ModuleMap& f)
{
    if (!is_module_map(f))
        throw InconsistencyError("map does not commute with the action");
}

// Window on which a rank statement is asserted: ht(top - mu) <= depth - margin.
inline bool within_margin(const TruncatedModule& m, const Weight& mu, int margin)
{
    return m.in_window(mu) && m.depth_of(mu) <= m.depth() - margin;
}

inline bool map_is_injective(const ModuleMap& f, int margin = 0)
{
    for (auto& [mu, b] : f.blocks)
        if (within_margin(*f.src, mu, margin) && b.rank() != b.cols())
            return false;
    return true;
}

inline bool map_is_surjective(const ModuleMap& f, int margin = 0)
{
    for (auto& mu : f.tgt->weights()) {
        if (!within_margin(*f.tgt, mu, margin) || !f.tgt->dim(mu))
            continue;
        if (!f.has_block(mu))
            throw DomainError("surjectivity check outside the source window");
        if (f.block(mu).rank() != f.tgt->dim(mu))
            return false;
    }
    return true;
}

// Submodule with the given column bases; throws unless it is stable.
inline std::pair<ModulePtr, ModuleMap> submodule(ModulePtr m, const Subspace& s)
{
    const RootDatum& rd = m->root_datum();
    TruncatedModule out(rd, m->field(), m->top(), m->depth());
    Subspace basis;
    for (auto& mu : m->weights()) {
        auto it = s.find(mu);
        Matrix b = it == s.end() ? zero_matrix(m->dim(mu), 0, m->field()) : it->second.to_field(m->field()).image();
        basis[mu] = b;
        out.set_dim(mu, b.cols());
    }
    for (auto& [key, a] : m->ops()) {
        auto [dir, i, n, mu] = key;
        Weight nu = TruncatedModule::shift(rd, dir, i, n, mu);
        if (!basis.count(nu) || !basis[mu].cols())
            continue;
        auto x = basis[nu].solve(a * basis[mu]);
        if (!x)
            throw DomainError("subspace is not stable under the action");
        out.set_op(dir, i, n, mu, *x);
    }
    auto sub = share(std::move(out));
    ModuleMap inc{sub, m, {}};
    for (auto& [mu, b] : basis)
        inc.blocks[mu] = b;
    return {sub, inc};
}

struct QuotientData {
    ModulePtr module;
    ModuleMap projection;                  // m -> quotient
    std::map<Weight, Matrix> section;      // quotient -> m, weightwise linear
};

inline QuotientData quotient(ModulePtr m, const Subspace& s)
{
    const RootDatum& rd = m->root_datum();
    const Field& f = m->field();
    TruncatedModule out(rd, f, m->top(), m->depth());
    std::map<Weight, Matrix> proj, sec;
    for (auto& mu : m->weights()) {
        std::size_t d = m->dim(mu);
        auto it = s.find(mu);
        Matrix sb = it == s.end() ? zero_matrix(d, 0, f) : it->second.to_field(f).image();
        Matrix full = sb.hstack(Matrix::identity(d, f));
        Matrix basis = full.image();
        Matrix comp = basis.columns([&] {
            std::vector<std::size_t> c;
            for (std::size_t k = sb.cols(); k < basis.cols(); ++k)
                c.push_back(k);
            return c;
        }());
        Matrix inv = *basis.inverse();
        Matrix p(comp.cols(), d, f);
        for (std::size_t r = 0; r < comp.cols(); ++r)
            for (std::size_t c = 0; c < d; ++c)
                p(r, c) = inv(sb.cols() + r, c);
        proj[mu] = p.to_field(f);
        sec[mu] = comp;
        out.set_dim(mu, comp.cols());
    }
    for (auto& [key, a] : m->ops()) {
        auto [dir, i, n, mu] = key;
        Weight nu = TruncatedModule::shift(rd, dir, i, n, mu);
        if (!proj.count(nu))
            continue;
        // descent check: the image of the subspace must land in the subspace
        auto it = s.find(mu);
        if (it != s.end() && it->second.cols() && !(proj[nu] * a * it->second.to_field(f)).is_zero())
            throw InconsistencyError("action does not descend to the quotient");
        out.set_op(dir, i, n, mu, proj[nu] * a * sec[mu]);
    }
    auto q = share(std::move(out));
    ModuleMap pi{m, q, {}};
    for (auto& [mu, b] : proj)
        pi.blocks[mu] = b;
    return {q, pi, sec};
}

inline Subspace image_subspace(const ModuleMap& f)
{
    Subspace s;
    for (auto& [mu, b] : f.blocks)
        if (f.tgt->in_window(mu))
            s[mu] = b.image();
    return s;
}

inline Subspace kernel_subspace(const ModuleMap& f)
{
    Subspace s;
    for (auto& [mu, b] : f.blocks)
        s[mu] = b.kernel();
    return s;
}

inline QuotientData map_cokernel(const ModuleMap& f) { return quotient(f.tgt, image_subspace(f)); }
inline std::pair<ModulePtr, ModuleMap> map_kernel(const ModuleMap& f) { return submodule(f.src, kernel_subspace(f)); }
inline std::pair<ModulePtr, ModuleMap> map_image(const ModuleMap& f) { return submodule(f.tgt, image_subspace(f)); }

// Smallest submodule containing the seed vectors.
inline Subspace generated_submodule(const TruncatedModule& m, const Subspace& seeds)
{
    const RootDatum& rd = m.root_datum();
    const Field& f = m.field();
    Subspace cur;
    for (auto& mu : m.weights())
        cur[mu] = zero_matrix(m.dim(mu), 0, f);
    for (auto& [mu, b] : seeds)
        if (m.in_window(mu))
            cur[mu] = cur[mu].hstack(b.to_field(f)).image();
    bool changed = true;
    while (changed) {
        changed = false;
        for (auto& [key, a] : m.ops()) {
            auto [dir, i, n, mu] = key;
            Weight nu = TruncatedModule::shift(rd, dir, i, n, mu);
            if (!cur.count(nu) || !cur[mu].cols())
                continue;
            Matrix img = a * cur[mu];
            if (span_contains(cur[nu], img))
                continue;
            cur[nu] = cur[nu].hstack(img).image();
            changed = true;
        }
    }
    return cur;
}

inline bool subspace_contains(const Subspace& big, const Subspace& small)
{
    for (auto& [mu, b] : small) {
        if (!b.cols())
            continue;
        auto it = big.find(mu);
        if (it == big.end() || !span_contains(it->second, b))
            return false;
    }
    return true;
}

inline bool subspace_equal(const Subspace& a, const Subspace& b)
{
    return subspace_contains(a, b) && subspace_contains(b, a);
}

// Graded dual: E^(n) on DM is the transpose of F^(n) on M and vice versa.
inline TruncatedModule contragredient(const TruncatedModule& m)
{
    const RootDatum& rd = m.root_datum();
    TruncatedModule out(rd, m.field(), m.top(), m.depth());
    for (auto& mu : m.weights())
        out.set_dim(mu, m.dim(mu));
    for (auto& [key, a] : m.ops()) {
        auto [dir, i, n, mu] = key;
        Weight nu = TruncatedModule::shift(rd, dir, i, n, mu);
        if (out.in_window(nu))
            out.set_op(-dir, i, n, nu, a.transpose());
    }
    return out;
}

// Dual map DB -> DA of f : A -> B.
inline ModuleMap contragredient_map(const ModuleMap& f, ModulePtr da, ModulePtr db)
{
    ModuleMap g{db, da, {}};
    for (auto& mu : db->weights()) {
        auto d = da->known_dim(mu);
        if (!d)
            continue;
        if (f.has_block(mu))
            g.blocks[mu] = f.block(mu).transpose();
        else
            g.blocks[mu] = zero_matrix(*d, db->dim(mu), db->field());
    }
    return g;
}

// Basis of Hom(A, B) restricted to the common window, by solving the
// commutation equations of all stored generators at once.
inline std::vector<ModuleMap> solve_homs(ModulePtr a, ModulePtr b)
{
    const RootDatum& rd = a->root_datum();
    const Field& f = a->field();
    std::vector<Weight> ws;
    std::map<Weight, std::size_t> offset;
    std::size_t nvar = 0;
    for (auto& mu : a->weights())
        if (b->in_window(mu)) {
            ws.push_back(mu);
            offset[mu] = nvar;
            nvar += a->dim(mu) * b->dim(mu);
        }
    std::vector<std::vector<std::pair<std::size_t, Scalar>>> eqs;
    for (auto& mu : ws) {
        std::size_t ra = a->dim(mu), rb = b->dim(mu);
        for (int dir : {+1, -1})
            for (std::size_t i = 0; i < rd.rank(); ++i)
                for (int n = 1; n <= std::min(a->depth(), b->depth()); ++n) {
                    Weight nu = TruncatedModule::shift(rd, dir, i, n, mu);
                    auto da = a->known_dim(nu), db = b->known_dim(nu);
                    if (!da || !db)
                        continue;
                    // X_nu is a variable only inside both windows; otherwise it has a zero dimension
                    bool in_both = offset.count(nu) > 0;
                    Matrix opa = a->op(dir, i, n, mu), opb = b->op(dir, i, n, mu);
                    std::size_t sa = *da, sb = *db;
                    // opb * X_mu - X_nu * opa = 0, entries (r, c) with r < sb, c < ra
                    for (std::size_t r = 0; r < sb; ++r)
                        for (std::size_t c = 0; c < ra; ++c) {
                            std::vector<std::pair<std::size_t, Scalar>> eq;
                            for (std::size_t k = 0; k < rb; ++k)
                                if (!opb(r, k).is_zero())
                                    eq.push_back({offset[mu] + k * ra + c, opb(r, k)});
                            if (in_both)
                                for (std::size_t k = 0; k < sa; ++k)
                                    if (!opa(k, c).is_zero())
                                        eq.push_back({offset[nu] + r * sa + k, -opa(k, c)});
                            if (!eq.empty())
                                eqs.push_back(std::move(eq));
                        }
                }
    }
    Matrix sys(eqs.size(), nvar, f);
    for (std::size_t r = 0; r < eqs.size(); ++r)
        for (auto& [c, v] : eqs[r])
            sys(r, c) += v;
    Matrix ker = sys.to_field(f).kernel();
    std::vector<ModuleMap> out;
    for (std::size_t k = 0; k < ker.cols(); ++k) {
        ModuleMap g{a, b, {}};
        for (auto& mu : ws) {
            std::size_t ra = a->dim(mu), rb = b->dim(mu);
            Matrix blk(rb, ra, f);
            for (std::size_t r = 0; r < rb; ++r)
                for (std::size_t c = 0; c < ra; ++c)
                    blk(r, c) = ker(offset[mu] + r * ra + c, k);
            g.blocks[mu] = blk.to_field(f);
        }
        out.push_back(std::move(g));
    }
    return out;
}

// Some isomorphism A -> B on the common window, if the hom space contains one.
inline std::optional<ModuleMap> find_isomorphism(ModulePtr a, ModulePtr b)
{
    if (!(a->top() == b->top()))
        return std::nullopt;
    for (auto& mu : a->weights())
        if (b->in_window(mu) && a->dim(mu) != b->dim(mu))
            return std::nullopt;
    auto homs = solve_homs(a, b);
    auto invertible = [&](const ModuleMap& g) {
        for (auto& [mu, blk] : g.blocks)
            if (blk.rank() != blk.rows() || blk.rows() != blk.cols())
                return false;
        return true;
    };
    for (auto& g : homs)
        if (invertible(g))
            return g;
    // try small integer combinations of the first two basis maps
    if (homs.size() >= 2)
        for (long s = 1; s <= 3; ++s) {
            ModuleMap g = add(homs[0], scale(homs[1], Scalar(s)));
            if (invertible(g))
                return g;
        }
    return std::nullopt;
}

struct AuditReport {
    std::size_t checks = 0;
    std::vector<std::string> failures;
    bool ok() const { return failures.empty(); }
};

// Exact check of the defining relations of the hyperalgebra on the window:
// divided-power products, [E_i^(a), F_j^(b)] (Kostant's formula for i = j),
// and the divided-power Serre relations.
inline AuditReport audit_relations(const TruncatedModule& m, int max_power = 3)
{
    const RootDatum& rd = m.root_datum();
    const Field& f = m.field();
    AuditReport rep;
    int top_n = std::min(max_power, m.depth());
    auto known = [&](const Weight& mu) { return m.known_dim(mu).has_value(); };
    auto check = [&](bool ok, const std::string& what, const Weight& mu) {
        ++rep.checks;
        if (!ok) {
            std::string w;
            for (int x : mu)
                w += std::to_string(x) + " ";
            rep.failures.push_back(what + " at weight " + w);
        }
    };
    for (auto& mu : m.weights()) {
        for (std::size_t i = 0; i < rd.rank(); ++i) {
            // products of divided powers
            for (int dir : {+1, -1})
                for (int a = 1; a <= top_n; ++a)
                    for (int b = 1; a + b <= top_n; ++b) {
                        Weight mid = TruncatedModule::shift(rd, dir, i, b, mu);
                        Weight end = TruncatedModule::shift(rd, dir, i, a + b, mu);
                        if (!known(mid) || !known(end))
                            continue;
                        Matrix lhs = m.op(dir, i, a, mid) * m.op(dir, i, b, mu);
                        Matrix rhs = m.op(dir, i, a + b, mu) * Scalar::in(f, mpq_class(binomial(a + b, a)));
                        check(lhs == rhs, "divided power product", mu);
                    }
            // E_i^(a) F_j^(b)
            for (std::size_t j = 0; j < rd.rank(); ++j)
                for (int a = 1; a <= top_n; ++a)
                    for (int b = 1; b <= top_n; ++b) {
                        Weight down = TruncatedModule::shift(rd, -1, j, b, mu);
                        Weight up = TruncatedModule::shift(rd, +1, i, a, mu);
                        Weight end = TruncatedModule::shift(rd, +1, i, a, down);
                        if (!m.in_window(down) || !known(up) || !known(end))
                            continue;
                        Matrix lhs = m.op(+1, i, a, down) * m.op(-1, j, b, mu);
                        Matrix rhs = zero_matrix(m.dim(end), m.dim(mu), f);
                        if (i != j) {
                            if (m.in_window(up))
                                rhs = m.op(-1, j, b, up) * m.op(+1, i, a, mu);
                        } else {
                            for (int k = 0; k <= std::min(a, b); ++k) {
                                Weight w1 = TruncatedModule::shift(rd, +1, i, a - k, mu);
                                if (m.dim(w1) == 0)
                                    continue;
                                Matrix ek = k == a ? Matrix::identity(m.dim(mu), f) : m.op(+1, i, a - k, mu);
                                // binom(H - a - b + 2k, k) evaluated at weight w1
                                long hv = w1[i] - a - b + 2 * k;
                                Scalar c = Scalar::in(f, mpq_class(binomial(hv, k)));
                                Matrix fk = k == b ? Matrix::identity(m.dim(w1), f) : m.op(-1, i, b - k, w1);
                                rhs = rhs + fk * ek * c;
                            }
                        }
                        check(lhs == rhs, "commutation E" + std::to_string(i + 1) + " F" + std::to_string(j + 1), mu);
                    }
            // Serre: sum_k (-1)^k X_i^(r-k) X_j X_i^(k) = 0 with r = 1 - a_ij
            for (std::size_t j = 0; j < rd.rank(); ++j) {
                if (i == j)
                    continue;
                int r = 1 - rd.cartan[j][i];
                for (int dir : {+1, -1}) {
                    Weight end = TruncatedModule::shift(rd, dir, j, 1, TruncatedModule::shift(rd, dir, i, r, mu));
                    if (!known(end))
                        continue;
                    Matrix sum = zero_matrix(m.dim(end), m.dim(mu), f);
                    bool ok = true;
                    for (int k = 0; k <= r; ++k) {
                        Weight w1 = TruncatedModule::shift(rd, dir, i, k, mu);
                        Weight w2 = TruncatedModule::shift(rd, dir, j, 1, w1);
                        if (!known(w1) || !known(w2)) {
                            ok = false;
                            break;
                        }
                        if (m.dim(w1) == 0 || m.dim(w2) == 0)
                            continue;
                        Matrix x1 = k ? m.op(dir, i, k, mu) : Matrix::identity(m.dim(mu), f);
                        Matrix x3 = r - k ? m.op(dir, i, r - k, w2) : Matrix::identity(m.dim(w2), f);
                        Matrix term = x3 * m.op(dir, j, 1, w1) * x1;
                        sum = sum + term * Scalar::in(f, (k % 2) ? -1 : 1);
                    }
                    if (ok)
                        check(sum.is_zero(), "Serre relation", mu);
                }
            }
        }
    }
    return rep;
}

inline void require_relations(const TruncatedModule& m, int max_power = 3)
{
    auto rep = audit_relations(m, max_power);
    if (!rep.ok())
        throw InconsistencyError("relation audit failed: " + rep.failures.front());
}

} // namespace bggkit
