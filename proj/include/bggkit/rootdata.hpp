#pragma once

#include "scalar.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace bggkit {

// Fundamental-weight coordinates.
using Weight = std::vector<int>;
using IntMat = std::vector<std::vector<int>>;

enum class TypeTag { A1, A2, B2 };

inline TypeTag parse_type(const std::string& s)
{
    if (s == "A1")
        return TypeTag::A1;
    if (s == "A2")
        return TypeTag::A2;
    if (s == "B2")
        return TypeTag::B2;
    throw UnsupportedError("unsupported root datum type: " + s);
}

inline std::string type_name(TypeTag t)
{
    switch (t) {
    case TypeTag::A1: return "A1";
    case TypeTag::A2: return "A2";
    case TypeTag::B2: return "B2";
    }
    return "?";
}

struct RootDatum {
    TypeTag tag;
    IntMat cartan;              // cartan[i][j] = <alpha_i, coroot_j>
    std::vector<Weight> simple_roots;
    std::vector<int> sym;       // (alpha_j, alpha_j) / 2

    std::size_t rank() const { return cartan.size(); }
    std::string label() const { return type_name(tag); }
    bool operator==(const RootDatum& o) const { return tag == o.tag; }
};

inline RootDatum build_root_datum(TypeTag t)
{
    RootDatum rd{t, {}, {}, {}};
    switch (t) {
    case TypeTag::A1: rd.cartan = {{2}}; break;
    case TypeTag::A2: rd.cartan = {{2, -1}, {-1, 2}}; break;
    case TypeTag::B2: rd.cartan = {{2, -1}, {-2, 2}}; break;
    }
    rd.simple_roots = rd.cartan;
    rd.sym.assign(rd.rank(), 1);
    if (rd.rank() == 2 && rd.cartan[0][1] != 0)
        rd.sym[1] = rd.cartan[1][0] / rd.cartan[0][1];
    return rd;
}
inline RootDatum build_root_datum(const std::string& label) { return build_root_datum(parse_type(label)); }

inline void check_weight(const RootDatum& rd, const Weight& w)
{
    if (w.size() != rd.rank())
        throw DomainError("weight has wrong length for " + rd.label());
}

inline Weight operator+(Weight a, const Weight& b)
{
    for (std::size_t i = 0; i < a.size(); ++i)
        a[i] += b[i];
    return a;
}
inline Weight operator-(Weight a, const Weight& b)
{
    for (std::size_t i = 0; i < a.size(); ++i)
        a[i] -= b[i];
    return a;
}
inline Weight operator*(int k, Weight a)
{
    for (auto& x : a)
        x *= k;
    return a;
}

inline Weight rho(const RootDatum& rd) { return Weight(rd.rank(), 1); }

inline Weight from_root_coords(const RootDatum& rd, const std::vector<int>& c)
{
    Weight w(rd.rank(), 0);
    for (std::size_t i = 0; i < rd.rank(); ++i)
        for (std::size_t j = 0; j < rd.rank(); ++j)
            w[j] += c[i] * rd.cartan[i][j];
    return w;
}

// Root-lattice coordinates of a weight, or nullopt if it is not in the root lattice.
inline std::optional<std::vector<int>> to_root_coords(const RootDatum& rd, const Weight& w)
{
    check_weight(rd, w);
    std::size_t r = rd.rank();
    if (r == 1) {
        if (w[0] % 2)
            return std::nullopt;
        return std::vector<int>{w[0] / 2};
    }
    // solve c A = w for rank 2 by Cramer's rule
    const auto& a = rd.cartan;
    int det = a[0][0] * a[1][1] - a[0][1] * a[1][0];
    int n0 = w[0] * a[1][1] - w[1] * a[1][0];
    int n1 = w[1] * a[0][0] - w[0] * a[0][1];
    if (n0 % det || n1 % det)
        return std::nullopt;
    return std::vector<int>{n0 / det, n1 / det};
}

// Height of beta if it is a non-negative combination of simple roots.
inline std::optional<int> height(const RootDatum& rd, const Weight& beta)
{
    auto c = to_root_coords(rd, beta);
    if (!c || std::any_of(c->begin(), c->end(), [](int x) { return x < 0; }))
        return std::nullopt;
    return std::accumulate(c->begin(), c->end(), 0);
}

inline Weight reflect(const RootDatum& rd, std::size_t i, Weight mu)
{
    int k = mu[i];
    for (std::size_t j = 0; j < rd.rank(); ++j)
        mu[j] -= k * rd.cartan[i][j];
    return mu;
}

// Positive roots by closure of the simple roots under simple reflections,
// sorted by height and then root coordinates.
inline std::vector<Weight> positive_roots(const RootDatum& rd)
{
    std::set<Weight> roots(rd.simple_roots.begin(), rd.simple_roots.end());
    std::vector<Weight> todo(roots.begin(), roots.end());
    while (!todo.empty()) {
        Weight x = todo.back();
        todo.pop_back();
        for (std::size_t i = 0; i < rd.rank(); ++i) {
            Weight y = reflect(rd, i, x);
            if (roots.insert(y).second)
                todo.push_back(y);
        }
    }
    std::vector<std::pair<std::vector<int>, Weight>> pos;
    for (auto& x : roots)
        if (height(rd, x))
            pos.push_back({*to_root_coords(rd, x), x});
    std::sort(pos.begin(), pos.end(), [&](const auto& a, const auto& b) {
        int ha = std::accumulate(a.first.begin(), a.first.end(), 0);
        int hb = std::accumulate(b.first.begin(), b.first.end(), 0);
        if (ha != hb)
            return ha < hb;
        return a.first > b.first;
    });
    std::vector<Weight> out;
    for (auto& p : pos)
        out.push_back(p.second);
    return out;
}

// Symmetric form (alpha_i, alpha_j) = cartan[i][j] * sym[j].
inline int root_form(const RootDatum& rd, const std::vector<int>& a, const std::vector<int>& b)
{
    int s = 0;
    for (std::size_t i = 0; i < rd.rank(); ++i)
        for (std::size_t j = 0; j < rd.rank(); ++j)
            s += a[i] * b[j] * rd.cartan[i][j] * rd.sym[j];
    return s;
}

// <mu, gamma^vee> for a positive root gamma (given in weight coordinates).
inline int coroot_pairing(const RootDatum& rd, const Weight& mu, const Weight& gamma)
{
    auto c = *to_root_coords(rd, gamma);
    int num = 0;
    for (std::size_t j = 0; j < rd.rank(); ++j)
        num += 2 * c[j] * rd.sym[j] * mu[j];
    int den = root_form(rd, c, c);
    if (num % den)
        throw InconsistencyError("non-integral coroot pairing");
    return num / den;
}

inline bool is_dominant(const RootDatum& rd, const Weight& lam)
{
    check_weight(rd, lam);
    return std::all_of(lam.begin(), lam.end(), [](int x) { return x >= 0; });
}

// <lam + rho, gamma^vee> > 0 for every positive root gamma.
inline bool is_regular_dominant(const RootDatum& rd, const Weight& lam)
{
    check_weight(rd, lam);
    Weight lr = lam + rho(rd);
    for (auto& g : positive_roots(rd))
        if (coroot_pairing(rd, lr, g) <= 0)
            return false;
    return true;
}

// A Weyl group element: canonical reduced word (0-based simple indices) and
// its linear action on fundamental-weight coordinates (acting on columns).
struct WeylElement {
    std::vector<int> word;
    IntMat matrix;
    std::string poset;          // identifies the enumeration it came from

    std::size_t length() const { return word.size(); }
    bool operator==(const WeylElement& o) const { return matrix == o.matrix; }
    std::string name() const
    {
        if (word.empty())
            return "e";
        std::string s;
        for (int i : word)
            s += "s" + std::to_string(i + 1);
        return s;
    }
};

inline IntMat identity_matrix(std::size_t r)
{
    IntMat m(r, std::vector<int>(r, 0));
    for (std::size_t i = 0; i < r; ++i)
        m[i][i] = 1;
    return m;
}

inline IntMat mat_mul(const IntMat& a, const IntMat& b)
{
    std::size_t r = a.size();
    IntMat c(r, std::vector<int>(r, 0));
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t k = 0; k < r; ++k)
            for (std::size_t j = 0; j < r; ++j)
                c[i][j] += a[i][k] * b[k][j];
    return c;
}

inline IntMat reflection_matrix(const RootDatum& rd, std::size_t i)
{
    IntMat m = identity_matrix(rd.rank());
    for (std::size_t j = 0; j < rd.rank(); ++j)
        m[j][i] -= rd.cartan[i][j];
    return m;
}

inline IntMat word_matrix(const RootDatum& rd, const std::vector<int>& word)
{
    IntMat m = identity_matrix(rd.rank());
    for (int i : word)
        m = mat_mul(m, reflection_matrix(rd, static_cast<std::size_t>(i)));
    return m;
}

inline Weight apply_matrix(const IntMat& m, const Weight& mu)
{
    Weight out(mu.size(), 0);
    for (std::size_t i = 0; i < mu.size(); ++i)
        for (std::size_t j = 0; j < mu.size(); ++j)
            out[i] += m[i][j] * mu[j];
    return out;
}

inline Weight act(const RootDatum& rd, const WeylElement& w, const Weight& mu)
{
    check_weight(rd, mu);
    return apply_matrix(w.matrix, mu);
}

// w.lam = w(lam + rho) - rho
inline Weight dot_action(const RootDatum& rd, const WeylElement& w, const Weight& lam)
{
    check_weight(rd, lam);
    if (w.matrix.size() != rd.rank())
        throw DomainError("Weyl element and weight have different ranks");
    return apply_matrix(w.matrix, lam + rho(rd)) - rho(rd);
}

} // namespace bggkit
