#pragma once

#include "rootdata.hpp"

#include <map>
#include <queue>
#include <set>
#include <tuple>
#include <utility>
#include <vector>

namespace bggkit {

// Fixed reduced expression of the longest element (0-based indices).
inline std::vector<int> default_longest_word(const RootDatum& rd)
{
    switch (rd.tag) {
    case TypeTag::A1: return {0};
    case TypeTag::A2: return {0, 1, 0};
    case TypeTag::B2: return {0, 1, 0, 1};
    }
    return {};
}

// Roots beta_k = s_{i1}...s_{i(k-1)}(alpha_{ik}) for a reduced word of w0;
// lists every positive root once, in a convex order.
inline std::vector<Weight> convex_root_order(const RootDatum& rd, const std::vector<int>& w0_word)
{
    std::vector<Weight> out;
    for (std::size_t k = 0; k < w0_word.size(); ++k) {
        std::vector<int> prefix(w0_word.begin(), w0_word.begin() + static_cast<long>(k));
        out.push_back(apply_matrix(word_matrix(rd, prefix), rd.simple_roots[static_cast<std::size_t>(w0_word[k])]));
    }
    return out;
}

struct BruhatPoset {
    RootDatum rd;
    std::vector<int> w0_word;
    std::string tag;
    std::vector<WeylElement> elements;            // sorted by length, then canonical positions
    std::vector<std::pair<int, int>> covers;      // (lower, upper) indices, sorted
    std::vector<std::vector<bool>> leq;           // subword criterion, leq[i][j] = (e_i <= e_j)

    std::size_t size() const { return elements.size(); }

    int index_of(const WeylElement& w) const
    {
        if (w.poset != tag)
            throw DomainError("Weyl element belongs to a different enumeration");
        return index_of_matrix(w.matrix);
    }
    int index_of_matrix(const IntMat& m) const
    {
        for (std::size_t i = 0; i < elements.size(); ++i)
            if (elements[i].matrix == m)
                return static_cast<int>(i);
        throw DomainError("matrix is not an element of this Weyl group");
    }
    const WeylElement& identity() const { return elements.front(); }
    const WeylElement& element(const std::string& name) const
    {
        for (auto& e : elements)
            if (e.name() == name)
                return e;
        throw DomainError("no element with canonical word " + name);
    }
    // Element for an arbitrary (not necessarily canonical) word.
    const WeylElement& from_word(const std::vector<int>& word) const
    {
        for (int i : word)
            if (i < 0 || static_cast<std::size_t>(i) >= rd.rank())
                throw DomainError("simple reflection index out of range");
        return elements[static_cast<std::size_t>(index_of_matrix(word_matrix(rd, word)))];
    }
    const WeylElement& multiply(const WeylElement& a, const WeylElement& b) const
    {
        index_of(a);
        index_of(b);
        return elements[static_cast<std::size_t>(index_of_matrix(mat_mul(a.matrix, b.matrix)))];
    }
    const WeylElement& inverse(const WeylElement& a) const
    {
        std::vector<int> w(a.word.rbegin(), a.word.rend());
        index_of(a);
        return from_word(w);
    }
};

namespace detail {

// Products of all position-subsets of a word, keyed by subset (as sorted positions).
inline std::map<std::vector<int>, IntMat> subword_products(const RootDatum& rd, const std::vector<int>& word)
{
    std::map<std::vector<int>, IntMat> out;
    std::size_t n = word.size();
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        std::vector<int> pos, w;
        for (std::size_t k = 0; k < n; ++k)
            if (mask & (1u << k)) {
                pos.push_back(static_cast<int>(k));
                w.push_back(word[k]);
            }
        out[pos] = word_matrix(rd, w);
    }
    return out;
}

} // namespace detail

inline BruhatPoset enumerate_weyl(const RootDatum& rd, std::vector<int> w0_word = {})
{
    if (w0_word.empty())
        w0_word = default_longest_word(rd);
    std::size_t nroots = positive_roots(rd).size();
    if (w0_word.size() != nroots)
        throw DomainError("word length differs from the number of positive roots");

    // lengths by breadth-first search on matrices
    std::map<IntMat, std::size_t> length;
    std::queue<IntMat> q;
    length[identity_matrix(rd.rank())] = 0;
    q.push(identity_matrix(rd.rank()));
    while (!q.empty()) {
        IntMat m = q.front();
        q.pop();
        for (std::size_t i = 0; i < rd.rank(); ++i) {
            IntMat n = mat_mul(m, reflection_matrix(rd, i));
            if (!length.count(n)) {
                length[n] = length[m] + 1;
                q.push(n);
            }
        }
    }
    if (length.at(word_matrix(rd, w0_word)) != w0_word.size())
        throw DomainError("word is not a reduced expression of the longest element");

    // canonical word: lexicographically least positions among reduced subwords
    std::map<IntMat, std::vector<int>> canon;
    for (auto& [pos, m] : detail::subword_products(rd, w0_word)) {
        if (pos.size() != length.at(m))
            continue;
        auto it = canon.find(m);
        if (it == canon.end() || pos < it->second)
            canon[m] = pos;
    }
    if (canon.size() != length.size())
        throw InconsistencyError("some Weyl element is not a subword of the longest word");

    BruhatPoset p{rd, w0_word, rd.label() + ":", {}, {}, {}};
    for (int i : w0_word)
        p.tag += std::to_string(i + 1);
    std::vector<std::pair<std::vector<int>, IntMat>> order;
    for (auto& [m, pos] : canon)
        order.push_back({pos, m});
    std::sort(order.begin(), order.end(), [](const auto& a, const auto& b) {
        if (a.first.size() != b.first.size())
            return a.first.size() < b.first.size();
        return a.first < b.first;
    });
    for (auto& [pos, m] : order) {
        std::vector<int> word;
        for (int k : pos)
            word.push_back(w0_word[static_cast<std::size_t>(k)]);
        p.elements.push_back({word, m, p.tag});
    }

    std::size_t n = p.elements.size();
    p.leq.assign(n, std::vector<bool>(n, false));
    for (std::size_t j = 0; j < n; ++j)
        for (auto& [pos, m] : detail::subword_products(rd, p.elements[j].word))
            p.leq[static_cast<std::size_t>(p.index_of_matrix(m))][j] = true;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (p.leq[i][j] && p.elements[j].length() == p.elements[i].length() + 1)
                p.covers.push_back({static_cast<int>(i), static_cast<int>(j)});
    return p;
}

inline bool bruhat_leq(const BruhatPoset& p, const WeylElement& a, const WeylElement& b)
{
    return p.leq[static_cast<std::size_t>(p.index_of(a))][static_cast<std::size_t>(p.index_of(b))];
}

// Second implementation: covers w -> w t over reflections t with length jump 1,
// then the reflexive-transitive closure.
inline std::vector<std::vector<bool>> bruhat_by_reflections(const BruhatPoset& p)
{
    std::size_t n = p.size();
    std::set<IntMat> refl;
    for (auto& w : p.elements)
        for (std::size_t i = 0; i < p.rd.rank(); ++i) {
            IntMat winv = p.inverse(w).matrix;
            refl.insert(mat_mul(mat_mul(w.matrix, reflection_matrix(p.rd, i)), winv));
        }
    std::vector<std::vector<bool>> r(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i) {
        r[i][i] = true;
        for (auto& t : refl) {
            auto j = static_cast<std::size_t>(p.index_of_matrix(mat_mul(p.elements[i].matrix, t)));
            if (p.elements[j].length() > p.elements[i].length())
                r[i][j] = true;
        }
    }
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (r[i][k] && r[k][j])
                    r[i][j] = true;
    return r;
}

// v_0 = w, v_1, ..., v_l = e by dropping the last letter each step.
inline std::vector<WeylElement> chain_to_identity(const BruhatPoset& p, const WeylElement& w)
{
    p.index_of(w);
    std::vector<WeylElement> out;
    std::vector<int> word = w.word;
    while (true) {
        out.push_back(p.from_word(word));
        if (word.empty())
            break;
        word.pop_back();
    }
    return out;
}

inline const WeylElement& longest_element(const BruhatPoset& p) { return p.elements.back(); }

// Length-2 intervals (bottom, middle1, middle2, top) with middle1 < middle2 by index.
inline std::vector<std::tuple<int, int, int, int>> bruhat_squares(const BruhatPoset& p)
{
    std::vector<std::tuple<int, int, int, int>> out;
    std::map<std::pair<int, int>, std::vector<int>> mids;
    for (auto& [a, b] : p.covers)
        for (auto& [c, d] : p.covers)
            if (b == c)
                mids[{a, d}].push_back(b);
    for (auto& [ends, m] : mids) {
        if (m.size() != 2)
            throw InconsistencyError("length-2 Bruhat interval without exactly two middle elements");
        std::sort(m.begin(), m.end());
        out.push_back({ends.first, m[0], m[1], ends.second});
    }
    return out;
}

} // namespace bggkit
