#pragma once

// JSON and CSV renderings of results. Vertices print as binary strings,
// coordinate 1 first; rationals print as "p/q".

#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "hcvr/bounds.hpp"
#include "hcvr/generators.hpp"
#include "hcvr/geometric.hpp"
#include "hcvr/homology.hpp"

namespace hcvr {

inline std::string fraction(const rational& q)
{
    return boost::multiprecision::numerator(q).str() + "/" + boost::multiprecision::denominator(q).str();
}

inline nlohmann::json fractions(const std::vector<rational>& qs)
{
    auto out = nlohmann::json::array();
    for (const auto& q : qs) out.push_back(fraction(q));
    return out;
}

inline nlohmann::json vertex_strings(const std::vector<Vertex>& vs)
{
    auto out = nlohmann::json::array();
    for (const auto& v : vs) out.push_back(v.str());
    return out;
}

inline nlohmann::json to_json(const BettiResult& b)
{
    return {{"n", b.n},
            {"r", b.r},
            {"q", b.q},
            {"field", "Z/" + std::to_string(b.field)},
            {"betti", b.betti},
            {"reduced", false},
            {"counts", {b.count_below, b.count_at, b.count_above}},
            {"ranks", {b.rank_q, b.rank_above}},
            {"millis", b.millis}};
}

inline void write_betti_csv_header(std::ostream& os)
{
    os << "n,r,q,field,betti,count_q-1,count_q,count_q+1,rank_d_q,rank_d_q+1,millis\n";
}

inline void write_betti_csv(std::ostream& os, const BettiResult& b)
{
    os << b.n << ',' << b.r << ',' << b.q << ",Z/" << b.field << ',' << b.betti << ',' << b.count_below << ','
       << b.count_at << ',' << b.count_above << ',' << b.rank_q << ',' << b.rank_above << ',' << b.millis << '\n';
}

inline nlohmann::json to_json(const FamilyReport& f)
{
    nlohmann::json j = {{"size", f.size},
                        {"cycles_closed", f.cycles_closed},
                        {"sigmas_maximal", f.sigmas_maximal},
                        {"pairing_identity", f.pairing_identity},
                        {"rank_checked", f.rank_checked},
                        {"certified_rank", f.certified_rank()},
                        {"ok", f.ok()}};
    if (f.rank_checked) j["rank"] = f.rank;
    if (!f.note.empty()) j["note"] = f.note;
    return j;
}

inline nlohmann::json to_json(const HullResult& h)
{
    nlohmann::json j = {{"contains", h.contains}};
    if (h.contains)
        j["weights"] = fractions(h.weights);
    else {
        j["separator"] = fractions(h.separator);
        j["threshold"] = fraction(h.threshold);
    }
    return j;
}

inline nlohmann::json to_json(const CoverageResult& c)
{
    nlohmann::json j = {{"n", c.n},
                        {"r", c.r},
                        {"status", to_string(c.status)},
                        {"certificate", c.certificate},
                        {"cliques_examined", c.cliques_examined}};
    if (c.status == Coverage::coverable) {
        j["witness"] = vertex_strings(c.witness);
        j["weights"] = fractions(c.weights);
        j["balanced"] = c.balanced;
    }
    if (!c.separator.empty()) {
        j["separator"] = fractions(c.separator);
        j["threshold"] = fraction(c.threshold);
    }
    return j;
}

inline nlohmann::json to_json(const TriangulationReport& t)
{
    nlohmann::json j = {{"ok", t.ok}, {"volumes", fractions(t.volumes)}, {"total", fraction(t.total)}};
    if (!t.ok) j["failure"] = t.failure;
    return j;
}

inline nlohmann::json to_json(const NofRReport& rep)
{
    auto scan = nlohmann::json::array();
    for (const auto& [n, c] : rep.scan) scan.push_back({{"n", n}, {"status", to_string(c)}});
    nlohmann::json j = {{"r", rep.r},
                        {"scan", scan},
                        {"bracket", {rep.bracket_lo, rep.bracket_hi}},
                        {"certified", rep.certified},
                        {"caveat", rep.caveat}};
    if (rep.least_uncovered) j["least_uncovered"] = *rep.least_uncovered;
    return j;
}

} // namespace hcvr
