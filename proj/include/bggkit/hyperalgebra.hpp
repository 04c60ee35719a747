#pragma once

#include "matrix.hpp"
#include "weyl.hpp"

#include <map>
#include <mutex>
#include <sstream>
#include <vector>

namespace bggkit {

// Faithful matrix realization of g with a Chevalley basis:
// sl2, sl3, and sp4 (short simple root first).
struct LieRealization {
    RootDatum rd;
    std::vector<Weight> roots;    // positive roots, order of positive_roots()
    std::vector<Matrix> e, f;     // root vectors for roots[k]
    std::vector<Matrix> h;        // simple coroots

    std::size_t root_index(const Weight& b) const
    {
        for (std::size_t k = 0; k < roots.size(); ++k)
            if (roots[k] == b)
                return k;
        throw DomainError("not a positive root");
    }
};

namespace detail {

inline Matrix unit(std::size_t n, std::size_t i, std::size_t j)
{
    Matrix m(n, n);
    m(i, j) = 1;
    return m;
}

inline Matrix bracket(const Matrix& a, const Matrix& b) { return a * b - b * a; }

} // namespace detail

inline LieRealization lie_realization(const RootDatum& rd)
{
    using detail::unit;
    LieRealization L{rd, positive_roots(rd), {}, {}, {}};
    std::vector<Matrix> es;
    switch (rd.tag) {
    case TypeTag::A1: es = {unit(2, 0, 1)}; break;
    case TypeTag::A2: es = {unit(3, 0, 1), unit(3, 1, 2)}; break;
    case TypeTag::B2: es = {unit(4, 0, 1) - unit(4, 2, 3), unit(4, 1, 2)}; break;
    }
    for (auto& x : es)
        L.h.push_back(detail::bracket(x, x.transpose()));
    for (std::size_t i = 0; i < rd.rank(); ++i)
        for (std::size_t j = 0; j < rd.rank(); ++j)
            if (detail::bracket(L.h[j], es[i]) != es[i] * Scalar(rd.cartan[i][j]))
                throw InconsistencyError("realization does not match the Cartan matrix");

    L.e.resize(L.roots.size());
    for (std::size_t k = 0; k < L.roots.size(); ++k) {
        const Weight& b = L.roots[k];
        auto simple = std::find(rd.simple_roots.begin(), rd.simple_roots.end(), b);
        if (simple != rd.simple_roots.end()) {
            L.e[k] = es[static_cast<std::size_t>(simple - rd.simple_roots.begin())];
            continue;
        }
        // E_b = [E_i, E_{b - alpha_i}] / (r + 1), r the length of the i-string below b - alpha_i
        for (std::size_t i = 0; i < rd.rank(); ++i) {
            Weight rest = b - rd.simple_roots[i];
            auto it = std::find(L.roots.begin(), L.roots.begin() + static_cast<long>(k), rest);
            if (it == L.roots.begin() + static_cast<long>(k))
                continue;
            int r = 0;
            while (std::find(L.roots.begin(), L.roots.end(), rest - (r + 1) * rd.simple_roots[i]) != L.roots.end())
                ++r;
            L.e[k] = detail::bracket(es[i], L.e[static_cast<std::size_t>(it - L.roots.begin())])
                * Scalar(mpq_class(1, r + 1));
            break;
        }
    }
    for (auto& x : L.e)
        L.f.push_back(x.transpose());
    for (std::size_t k = 0; k < L.roots.size(); ++k) {
        Matrix hb = detail::bracket(L.e[k], L.f[k]);
        if (detail::bracket(hb, L.e[k]) != L.e[k] * Scalar(2) || !L.e[k].is_integral())
            throw InconsistencyError("root vector is not part of an sl2 triple");
    }
    return L;
}

// Ordinary-power elements over Q, keyed by exponent vectors.
using QElement = std::map<std::vector<int>, mpq_class>;

inline void add_term(QElement& x, const std::vector<int>& m, const mpq_class& c)
{
    if (c == 0)
        return;
    mpq_class& slot = x[m];
    slot += c;
    if (slot == 0)
        x.erase(m);
}

// Element of the hyperalgebra in divided-power PBW coordinates:
// F_b^(a) (negative roots), binom(H_i, c), E_b^(b) (positive roots).
struct AlgebraElement {
    Field field;
    std::map<std::vector<int>, Scalar> terms;

    bool is_zero() const { return terms.empty(); }
    void add(const std::vector<int>& m, const Scalar& c)
    {
        if (c.is_zero())
            return;
        Scalar s = terms.count(m) ? terms[m] + c : c;
        if (s.is_zero())
            terms.erase(m);
        else
            terms[m] = s.to_field(field);
    }
    AlgebraElement& operator+=(const AlgebraElement& o)
    {
        for (auto& [m, c] : o.terms)
            add(m, c);
        return *this;
    }
    AlgebraElement operator*(const Scalar& s) const
    {
        AlgebraElement r{field, {}};
        for (auto& [m, c] : terms)
            r.add(m, c * s);
        return r;
    }
    friend AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b) { return a += b; }
    friend AlgebraElement operator-(AlgebraElement a, const AlgebraElement& b) { return a += b * Scalar(-1); }
    bool operator==(const AlgebraElement& o) const { return (*this - o).is_zero(); }
};

enum class GenKind { Negative, Cartan, Positive };

struct Generator {
    GenKind kind;
    std::size_t index;    // root index (positive_roots order) or simple index
    Weight weight;
    int height;
};

inline mpz_class stirling1_signed(long n, long k)
{
    static std::map<std::pair<long, long>, mpz_class> memo;
    static std::mutex mu;
    if (n == 0 && k == 0)
        return 1;
    if (n == 0 || k == 0)
        return 0;
    {
        std::lock_guard<std::mutex> g(mu);
        auto it = memo.find({n, k});
        if (it != memo.end())
            return it->second;
    }
    mpz_class v = stirling1_signed(n - 1, k - 1) - (n - 1) * stirling1_signed(n - 1, k);
    std::lock_guard<std::mutex> g(mu);
    return memo[{n, k}] = v;
}

inline mpz_class stirling2(long n, long k)
{
    static std::map<std::pair<long, long>, mpz_class> memo;
    static std::mutex mu;
    if (n == 0 && k == 0)
        return 1;
    if (n == 0 || k == 0)
        return 0;
    {
        std::lock_guard<std::mutex> g(mu);
        auto it = memo.find({n, k});
        if (it != memo.end())
            return it->second;
    }
    mpz_class v = stirling2(n - 1, k - 1) + k * stirling2(n - 1, k);
    std::lock_guard<std::mutex> g(mu);
    return memo[{n, k}] = v;
}

// The Kostant Z-form at rank <= 2, with straightening over Q and
// specialization of integral results to F_p.
class Hyperalgebra {
public:
    explicit Hyperalgebra(const RootDatum& rd, std::vector<int> w0_word = {})
        : rd_(rd), lie_(lie_realization(rd))
    {
        if (w0_word.empty())
            w0_word = default_longest_word(rd);
        word_ = w0_word;
        order_ = convex_root_order(rd, w0_word);
        std::size_t N = order_.size();
        for (std::size_t k = 0; k < N; ++k) {
            std::size_t ri = lie_.root_index(order_[k]);
            gens_.push_back({GenKind::Negative, ri, Weight(rd.rank(), 0) - order_[k], *bggkit::height(rd, order_[k])});
        }
        for (std::size_t i = 0; i < rd.rank(); ++i)
            gens_.push_back({GenKind::Cartan, i, Weight(rd.rank(), 0), 1});
        for (std::size_t k = 0; k < N; ++k)
            gens_.push_back({GenKind::Positive, lie_.root_index(order_[k]), order_[k], *bggkit::height(rd, order_[k])});
        build_structure_constants();
    }

    const RootDatum& root_datum() const { return rd_; }
    const LieRealization& lie() const { return lie_; }
    const std::vector<int>& longest_word() const { return word_; }
    const std::vector<Weight>& convex_order() const { return order_; }
    const std::vector<Generator>& generators() const { return gens_; }
    std::size_t num_generators() const { return gens_.size(); }

    std::size_t negative(const Weight& b) const { return find(GenKind::Negative, lie_.root_index(b)); }
    std::size_t positive(const Weight& b) const { return find(GenKind::Positive, lie_.root_index(b)); }
    std::size_t cartan(std::size_t i) const { return find(GenKind::Cartan, i); }
    std::size_t negative_simple(std::size_t i) const { return negative(rd_.simple_roots[i]); }
    std::size_t positive_simple(std::size_t i) const { return positive(rd_.simple_roots[i]); }

    const Matrix& generator_matrix(std::size_t g) const
    {
        const Generator& x = gens_[g];
        switch (x.kind) {
        case GenKind::Negative: return lie_.f[x.index];
        case GenKind::Cartan: return lie_.h[x.index];
        case GenKind::Positive: return lie_.e[x.index];
        }
        throw InconsistencyError("bad generator kind");
    }
    // [x_a, x_b] as coefficients on the generators.
    const std::vector<mpq_class>& bracket(std::size_t a, std::size_t b) const { return brackets_[a][b]; }

    int height(const std::vector<int>& m) const
    {
        int h = 0;
        for (std::size_t g = 0; g < m.size(); ++g)
            h += m[g] * gens_[g].height;
        return h;
    }
    Weight weight(const std::vector<int>& m) const
    {
        Weight w(rd_.rank(), 0);
        for (std::size_t g = 0; g < m.size(); ++g)
            w = w + m[g] * gens_[g].weight;
        return w;
    }

    // Divided-power constructors.
    AlgebraElement monomial(const std::vector<int>& m, const Field& f = {}) const
    {
        if (m.size() != gens_.size())
            throw DomainError("monomial has wrong length");
        AlgebraElement x{f, {}};
        x.add(m, Scalar::in(f, 1));
        return x;
    }
    AlgebraElement divided(std::size_t g, int n, const Field& f = {}) const
    {
        std::vector<int> m(gens_.size(), 0);
        m[g] = n;
        return monomial(m, f);
    }
    AlgebraElement one(const Field& f = {}) const { return monomial(std::vector<int>(gens_.size(), 0), f); }

    // Ordinary-power product over Q.
    QElement multiply(const QElement& x, const QElement& y) const
    {
        QElement out;
        for (auto& [mx, cx] : x) {
            QElement acc = y;
            for (std::size_t g = mx.size(); g-- > 0;)
                for (int e = 0; e < mx[g]; ++e)
                    acc = left_multiply(g, acc);
            for (auto& [m, c] : acc)
                add_term(out, m, c * cx);
        }
        return out;
    }

    QElement to_ordinary(const AlgebraElement& x) const
    {
        QElement out;
        std::size_t N = order_.size(), r = rd_.rank();
        for (auto& [m, c] : x.terms) {
            mpq_class base = c.rational();
            for (std::size_t g = 0; g < m.size(); ++g)
                if (gens_[g].kind != GenKind::Cartan)
                    base /= mpq_class(factorial(m[g]));
            // binom(H_i, c_i) = (1/c!) sum_k s(c,k) H^k, expanded over all Cartan slots
            QElement partial{{m, base}};
            for (std::size_t i = 0; i < r; ++i) {
                QElement next;
                int ci = m[N + i];
                for (auto& [pm, pc] : partial)
                    for (int k = 0; k <= ci; ++k) {
                        mpq_class s = mpq_class(stirling1_signed(ci, k)) / mpq_class(factorial(ci));
                        std::vector<int> nm = pm;
                        nm[N + i] = k;
                        add_term(next, nm, pc * s);
                    }
                partial = std::move(next);
            }
            for (auto& [pm, pc] : partial)
                add_term(out, pm, pc);
        }
        return out;
    }

    // Throws InconsistencyError on a non-integral divided coordinate.
    AlgebraElement from_ordinary(const QElement& x, const Field& f = {}) const
    {
        std::size_t N = order_.size(), r = rd_.rank();
        QElement divided_q;
        for (auto& [m, c] : x) {
            mpq_class base = c;
            for (std::size_t g = 0; g < m.size(); ++g)
                if (gens_[g].kind != GenKind::Cartan)
                    base *= mpq_class(factorial(m[g]));
            QElement partial{{m, base}};
            for (std::size_t i = 0; i < r; ++i) {
                QElement next;
                int ci = m[N + i];
                for (auto& [pm, pc] : partial)
                    for (int k = 0; k <= ci; ++k) {
                        std::vector<int> nm = pm;
                        nm[N + i] = k;
                        add_term(next, nm, pc * mpq_class(stirling2(ci, k) * factorial(k)));
                    }
                partial = std::move(next);
            }
            for (auto& [pm, pc] : partial)
                add_term(divided_q, pm, pc);
        }
        AlgebraElement out{f, {}};
        for (auto& [m, c] : divided_q) {
            if (!f.is_rational() && c.get_den() != 1)
                throw InconsistencyError("non-integral coefficient in the integral form");
            out.add(m, Scalar::in(f, c));
        }
        return out;
    }

    // Product in divided coordinates. Over F_p the factors are lifted to
    // integral representatives, multiplied, and reduced.
    AlgebraElement divided_product(const AlgebraElement& x, const AlgebraElement& y, int bound) const
    {
        if (!(x.field == y.field))
            throw DomainError("factors over different fields");
        for (auto& [mx, cx] : x.terms)
            for (auto& [my, cy] : y.terms)
                if (height(mx) + height(my) > bound)
                    throw DomainError("product exceeds the truncation bound");
        QElement qx = to_ordinary(lift(x)), qy = to_ordinary(lift(y));
        QElement prod = multiply(qx, qy);
        if (x.field.is_rational())
            return from_ordinary(prod);
        AlgebraElement z = from_ordinary(prod);
        for (auto& [m, c] : z.terms)
            if (!c.is_integral())
                throw InconsistencyError("non-integral straightening coefficient");
        return specialize(z, x.field);
    }

    AlgebraElement specialize(const AlgebraElement& x, const Field& f) const
    {
        if (!x.field.is_rational())
            throw DomainError("specialize expects a rational element");
        AlgebraElement out{f, {}};
        for (auto& [m, c] : x.terms) {
            if (!c.is_integral())
                throw DomainError("specialize expects integral coefficients");
            out.add(m, c.to_field(f));
        }
        return out;
    }

    AlgebraElement commutator(const AlgebraElement& x, const AlgebraElement& y, int bound) const
    {
        return divided_product(x, y, bound) - divided_product(y, x, bound);
    }

    // Least m with ad_x^m(y) = 0 for a generator x (ordinary coordinates).
    int adjoint_nilpotency_degree(std::size_t g, const AlgebraElement& y, int max_steps = 64) const
    {
        QElement cur = to_ordinary(lift(y));
        std::vector<int> gm(gens_.size(), 0);
        gm[g] = 1;
        QElement x{{gm, 1}};
        for (int m = 0; m <= max_steps; ++m) {
            if (cur.empty())
                return m;
            QElement a = multiply(x, cur), b = multiply(cur, x);
            for (auto& [mm, c] : b)
                add_term(a, mm, -c);
            cur = std::move(a);
        }
        throw DomainError("adjoint action not nilpotent within the step bound");
    }

    std::string str(const AlgebraElement& x) const
    {
        if (x.is_zero())
            return "0";
        std::ostringstream os;
        bool first = true;
        for (auto& [m, c] : x.terms) {
            os << (first ? "" : " + ") << c.str();
            for (std::size_t g = 0; g < m.size(); ++g)
                if (m[g])
                    os << "*" << gen_name(g) << "^(" << m[g] << ")";
            first = false;
        }
        return os.str();
    }

    std::string gen_name(std::size_t g) const
    {
        const Generator& x = gens_[g];
        std::ostringstream os;
        if (x.kind == GenKind::Cartan)
            return "H" + std::to_string(x.index + 1);
        os << (x.kind == GenKind::Negative ? "F" : "E");
        for (int c : *to_root_coords(rd_, lie_.roots[x.index]))
            os << c;
        return os.str();
    }

private:
    std::size_t find(GenKind k, std::size_t idx) const
    {
        for (std::size_t g = 0; g < gens_.size(); ++g)
            if (gens_[g].kind == k && gens_[g].index == idx)
                return g;
        throw DomainError("no such generator");
    }

    AlgebraElement lift(const AlgebraElement& x) const
    {
        AlgebraElement out{Field::rationals(), {}};
        for (auto& [m, c] : x.terms)
            out.add(m, Scalar(c.rational()));
        return out;
    }

    void build_structure_constants()
    {
        std::size_t n = gens_.size();
        std::size_t d = lie_.h[0].rows();
        Matrix basis(d * d, n);
        for (std::size_t g = 0; g < n; ++g) {
            const Matrix& x = generator_matrix(g);
            for (std::size_t i = 0; i < d * d; ++i)
                basis(i, g) = x(i / d, i % d);
        }
        brackets_.assign(n, std::vector<std::vector<mpq_class>>(n));
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b) {
                Matrix c = detail::bracket(generator_matrix(a), generator_matrix(b));
                Matrix v(d * d, 1);
                for (std::size_t i = 0; i < d * d; ++i)
                    v(i, 0) = c(i / d, i % d);
                auto sol = basis.solve(v);
                if (!sol || !sol->is_integral())
                    throw InconsistencyError("non-integral structure constant");
                for (std::size_t k = 0; k < n; ++k)
                    brackets_[a][b].push_back((*sol)(k, 0).rational());
            }
    }

    QElement left_multiply(std::size_t g, const QElement& y) const
    {
        QElement out;
        for (auto& [m, c] : y)
            for (auto& [mm, cc] : mul_gen_mono(g, m))
                add_term(out, mm, cc * c);
        return out;
    }

    // x_g * m for a normally ordered monomial m, via x h = h x + [x, h].
    QElement mul_gen_mono(std::size_t g, const std::vector<int>& m) const
    {
        std::size_t first = m.size();
        for (std::size_t k = 0; k < m.size(); ++k)
            if (m[k]) {
                first = k;
                break;
            }
        if (first == m.size() || g <= first) {
            std::vector<int> r = m;
            ++r[g];
            return {{r, 1}};
        }
        {
            std::lock_guard<std::mutex> lk(memo_mu_);
            auto it = memo_.find({g, m});
            if (it != memo_.end())
                return it->second;
        }
        std::vector<int> rest = m;
        --rest[first];
        QElement out;
        QElement moved = mul_gen_mono(g, rest);
        for (auto& [mm, c] : left_multiply(first, moved))
            add_term(out, mm, c);
        const auto& br = brackets_[g][first];
        for (std::size_t k = 0; k < br.size(); ++k)
            if (br[k] != 0)
                for (auto& [mm, c] : mul_gen_mono(k, rest))
                    add_term(out, mm, c * br[k]);
        std::lock_guard<std::mutex> lk(memo_mu_);
        memo_.emplace(std::make_pair(g, m), out);
        return out;
    }

    RootDatum rd_;
    LieRealization lie_;
    std::vector<int> word_;
    std::vector<Weight> order_;
    std::vector<Generator> gens_;
    std::vector<std::vector<std::vector<mpq_class>>> brackets_;
    mutable std::map<std::pair<std::size_t, std::vector<int>>, QElement> memo_;
    mutable std::mutex memo_mu_;
};

} // namespace bggkit
