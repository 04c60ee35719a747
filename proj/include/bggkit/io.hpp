#pragma once

#include "quantum.hpp"

#include <json.hpp>

namespace bggkit {

using Json = nlohmann::ordered_json;

inline Json to_json(const Weight& w) { return Json(w); }

inline Json to_json(const RootDatum& rd) { return {{"label", rd.label()}, {"cartan", rd.cartan}}; }

inline Json to_json(const BruhatPoset& p)
{
    Json els = Json::array(), covers = Json::array();
    for (auto& w : p.elements)
        els.push_back(w.word);
    for (auto& [a, b] : p.covers)
        covers.push_back({a, b});
    return {{"elements", els}, {"covers", covers}};
}

inline std::string scalar_str(const Scalar& s) { return s.rational().get_str(); }

inline Json to_json(const Matrix& m)
{
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < m.cols(); ++j)
            row.push_back(scalar_str(m(i, j)));
        rows.push_back(row);
    }
    return rows;
}

inline Json to_json(const Laurent& x)
{
    Json o = Json::object();
    for (auto& [e, c] : x.terms())
        o[std::to_string(e)] = c.get_str();
    return o;
}

inline Json to_json(const LaurentMatrix& m)
{
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < m.cols(); ++j)
            row.push_back(to_json(m(i, j)));
        rows.push_back(row);
    }
    return rows;
}

inline Json weight_table(const std::map<Weight, long>& mult, const char* key)
{
    Json out = Json::array();
    for (auto& [mu, m] : mult)
        out.push_back({{"weight", mu}, {key, m}});
    return out;
}

inline Json to_json(const FormalCharacter& ch)
{
    return {{"top", ch.top}, {"depth", ch.depth}, {"multiplicities", weight_table(ch.mult, "mult")}};
}

inline Json to_json(const TruncatedModule& m)
{
    Json dims = Json::array(), acts = Json::array();
    for (auto& mu : m.weights())
        if (m.dim(mu))
            dims.push_back({{"weight", mu}, {"dim", m.dim(mu)}});
    for (auto& [k, mat] : m.ops()) {
        auto& [dir, i, n, mu] = k;
        acts.push_back({{"generator", dir > 0 ? "E" : "F"}, {"index", i}, {"power", n}, {"weight", mu},
                        {"matrix", to_json(mat)}});
    }
    return {{"top", m.top()}, {"depth", m.depth()}, {"field", m.field().name()}, {"dims", dims}, {"actions", acts}};
}

inline Json to_json(const QuantumModule& m)
{
    Json dims = Json::array(), acts = Json::array();
    for (int n = 0; n <= m.depth(); ++n)
        if (m.dim(n))
            dims.push_back({{"weight", m.weight(n)}, {"dim", m.dim(n)}});
    for (auto& [k, mat] : m.ops()) {
        auto& [dir, a, n] = k;
        acts.push_back({{"generator", dir > 0 ? "E" : "F"}, {"power", a}, {"weight", m.weight(n)},
                        {"matrix", to_json(mat)}});
    }
    return {{"top", m.top()}, {"depth", m.depth()}, {"ring", "Z[v,1/v]"}, {"dims", dims}, {"actions", acts}};
}

inline Json to_json(const ComplexReport& r)
{
    Json coh = Json::object();
    for (auto& [m, tab] : r.cohomology)
        coh[std::to_string(m)] = weight_table(tab, "dim");
    long h0 = 0;
    for (auto& [mu, d] : r.h0.mult)
        h0 += d;
    return {{"id", r.id},
            {"depth", r.depth},
            {"margin", r.margin},
            {"d2_ok", r.d2_ok},
            {"euler_ok", r.euler_ok},
            {"exact_ok", r.exact_ok},
            {"cohomology", coh},
            {"h0_character", weight_table(r.h0.mult, "mult")},
            {"h0_dim", h0},
            {"failures", r.failures}};
}

inline Json to_json(const QuasiBggReport& r)
{
    Json mods = Json::object();
    for (auto& [p, good] : r.exact_mod)
        mods[std::to_string(p)] = good;
    return {{"mu", r.mu},
            {"depth", r.depth},
            {"module_maps", r.module_maps},
            {"split_injective", r.split_injective},
            {"composite_zero", r.composite_zero},
            {"cokernel_free", r.cokernel_free},
            {"cokernel_rank", r.cokernel_rank},
            {"cokernel_is_weyl", r.cokernel_is_weyl},
            {"exact_at_v_2", r.exact_at_two},
            {"exact_mod_p", mods},
            {"ok", r.ok()},
            {"failures", r.failures}};
}

inline Json to_json(const SpecializationReport& r)
{
    auto norm = [](const std::map<Weight, Scalar>& d) {
        Json out = Json::array();
        for (auto& [mu, s] : d)
            out.push_back({{"weight", mu}, {"scale", scalar_str(s)}});
        return out;
    };
    return {{"mu", r.mu},
            {"prime", r.p},
            {"depth", r.depth},
            {"boundary", r.boundary},
            {"sub_matches_quasi_verma", r.sub_matches_quasi_verma},
            {"verma_matches", r.verma_matches},
            {"terms_match", r.terms_match},
            {"differential_matches", r.differential_matches},
            {"normalization", {{"degree0", norm(r.normalization0)}, {"degree1", norm(r.normalization1)}}},
            {"match", r.ok()},
            {"diffs", r.diffs}};
}

// Several characters in one CSV: a table column, weight coordinates, multiplicity.
inline std::string characters_csv(const std::vector<std::pair<std::string, FormalCharacter>>& tables)
{
    std::ostringstream os;
    if (tables.empty())
        return "";
    os << "table,";
    for (std::size_t i = 0; i < tables.front().second.rd.rank(); ++i)
        os << "w" << i + 1 << ",";
    os << "multiplicity\n";
    for (auto& [name, ch] : tables)
        for (auto& [mu, m] : ch.mult) {
            os << name << ",";
            for (int x : mu)
                os << x << ",";
            os << m << "\n";
        }
    return os.str();
}

} // namespace bggkit
