#pragma once

#include "weyl.hpp"

#include <map>
#include <optional>
#include <sstream>
#include <string>

namespace bggkit {

// Multiplicities on the window top - beta, ht(beta) <= depth. Weights outside
// the stored map but inside the window have multiplicity 0.
struct FormalCharacter {
    RootDatum rd;
    Weight top;
    int depth = 0;
    std::map<Weight, long> mult;

    // Multiplicity if it is determined by the stored data.
    std::optional<long> known(const Weight& mu) const
    {
        auto c = to_root_coords(rd, top - mu);
        if (!c)
            return 0;
        for (int x : *c)
            if (x < 0)
                return 0;
        auto h = *height(rd, top - mu);
        if (h > depth)
            return std::nullopt;
        auto it = mult.find(mu);
        return it == mult.end() ? 0 : it->second;
    }
    long at(const Weight& mu) const
    {
        auto k = known(mu);
        if (!k)
            throw DomainError("weight lies below the truncation depth");
        return *k;
    }
    long total() const
    {
        long s = 0;
        for (auto& [w, m] : mult)
            s += m;
        return s;
    }
    void add(const Weight& mu, long m)
    {
        long& slot = mult[mu];
        slot += m;
        if (slot == 0)
            mult.erase(mu);
    }

    std::string to_csv() const
    {
        std::ostringstream os;
        for (std::size_t i = 0; i < rd.rank(); ++i)
            os << "w" << i + 1 << ",";
        os << "multiplicity\n";
        for (auto& [w, m] : mult) {
            for (int x : w)
                os << x << ",";
            os << m << "\n";
        }
        return os.str();
    }
};

// All beta >= 0 with ht(beta) <= depth, as root coordinates, by height.
inline std::vector<std::vector<int>> cone_window(const RootDatum& rd, int depth)
{
    std::vector<std::vector<int>> out;
    if (rd.rank() == 1) {
        for (int a = 0; a <= depth; ++a)
            out.push_back({a});
        return out;
    }
    for (int h = 0; h <= depth; ++h)
        for (int a = h; a >= 0; --a)
            out.push_back({a, h - a});
    return out;
}

inline long kostant_partition(const RootDatum& rd, const std::vector<int>& beta, int depth)
{
    if (beta.size() != rd.rank())
        throw DomainError("root coordinates have wrong length");
    int h = 0;
    for (int x : beta) {
        if (x < 0)
            throw DomainError("negative root coordinate in partition function argument");
        h += x;
    }
    if (h > depth)
        throw DomainError("argument exceeds the partition depth");
    // dp over positive roots (coin-change on root coordinates)
    std::map<std::vector<int>, long> ways{{std::vector<int>(rd.rank(), 0), 1}};
    auto window = cone_window(rd, h);
    for (auto& g : positive_roots(rd)) {
        auto gc = *to_root_coords(rd, g);
        for (auto& c : window) {
            std::vector<int> prev(c);
            bool ok = true;
            for (std::size_t i = 0; i < c.size(); ++i) {
                prev[i] -= gc[i];
                ok = ok && prev[i] >= 0;
            }
            if (ok && ways.count(prev))
                ways[c] += ways[prev];
        }
    }
    auto it = ways.find(beta);
    return it == ways.end() ? 0 : it->second;
}

inline FormalCharacter verma_character(const RootDatum& rd, const Weight& lam, int depth)
{
    check_weight(rd, lam);
    if (depth < 0)
        throw DomainError("negative depth");
    FormalCharacter ch{rd, lam, depth, {}};
    for (auto& c : cone_window(rd, depth))
        ch.add(lam - from_root_coords(rd, c), kostant_partition(rd, c, depth));
    return ch;
}

// Alternating sum of dot-shifted Verma characters on the window of lam.
inline FormalCharacter euler_characteristic(const RootDatum& rd, const Weight& lam, int depth)
{
    check_weight(rd, lam);
    FormalCharacter ch{rd, lam, depth, {}};
    BruhatPoset p = enumerate_weyl(rd);
    for (auto& w : p.elements) {
        Weight top = dot_action(rd, w, lam);
        auto h = height(rd, lam - top);
        if (!h || *h > depth)
            continue;
        long sign = (w.length() % 2) ? -1 : 1;
        for (auto& [mu, m] : verma_character(rd, top, depth - *h).mult)
            ch.add(mu, sign * m);
    }
    return ch;
}

inline long weyl_dimension(const RootDatum& rd, const Weight& lam)
{
    mpq_class d = 1;
    for (auto& g : positive_roots(rd)) {
        mpq_class r(coroot_pairing(rd, lam + rho(rd), g), coroot_pairing(rd, rho(rd), g));
        r.canonicalize();
        d *= r;
    }
    if (d.get_den() != 1)
        throw InconsistencyError("non-integral Weyl dimension");
    return d.get_num().get_si();
}

inline FormalCharacter weyl_character(const RootDatum& rd, const Weight& lam)
{
    if (!is_dominant(rd, lam))
        throw DomainError("Weyl character needs a dominant weight");
    BruhatPoset p = enumerate_weyl(rd);
    Weight low = act(rd, longest_element(p), lam);
    FormalCharacter ch = euler_characteristic(rd, lam, *height(rd, lam - low));
    for (auto& [mu, m] : ch.mult)
        if (m < 0)
            throw InconsistencyError("negative multiplicity in a Weyl character");
    if (ch.total() != weyl_dimension(rd, lam))
        throw InconsistencyError("Weyl character disagrees with the dimension formula");
    return ch;
}

// A finite character is zero below its support, so its window can grow freely.
inline FormalCharacter widen(FormalCharacter ch, int depth)
{
    ch.depth = std::max(ch.depth, depth);
    return ch;
}

// Compares on the union of both windows (clipped to depth). A weight inside
// the comparison range but below a stored depth is an error, not a pass.
inline bool char_equal_truncated(const FormalCharacter& a, const FormalCharacter& b, int depth)
{
    if (!(a.rd == b.rd))
        throw DomainError("characters of different root data");
    for (const FormalCharacter* ref : {&a, &b}) {
        for (auto& c : cone_window(a.rd, depth)) {
            Weight mu = ref->top - from_root_coords(a.rd, c);
            auto x = a.known(mu), y = b.known(mu);
            if (x && y && *x != *y)
                return false;
        }
    }
    for (const FormalCharacter* ref : {&a, &b})
        for (auto& c : cone_window(a.rd, depth)) {
            Weight mu = ref->top - from_root_coords(a.rd, c);
            if (!a.known(mu) || !b.known(mu))
                throw DomainError("comparison depth exceeds a character's truncation depth");
        }
    return true;
}

} // namespace bggkit
