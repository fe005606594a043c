#pragma once

// Cross-polytopal generators of H_{2^r - 1}(VR(Q_n; r)) and their dual
// cocycles. All chains here are over Z/2.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include "hcvr/errors.hpp"
#include "hcvr/homology.hpp"
#include "hcvr/hypercube.hpp"
#include "hcvr/rips.hpp"

namespace hcvr {

/// Maximal antipode-free subsets of Q_{r+1}: one vertex from each antipodal
/// pair, so 2^{2^r} sets of size 2^r. Set k picks x-bar for pair x exactly
/// when bit x of k is set (pairs indexed by their member below 2^r).
inline std::vector<VertexSet> antipode_free_sets(int r, std::uint64_t budget = default_budget)
{
    if (r < 1) throw usage_error("antipode-free family needs r >= 1");
    if (r > 4 || (std::uint64_t{1} << (std::uint64_t{1} << r)) * (std::uint64_t{1} << r) > budget)
        throw capability_error("antipode-free family for r = " + std::to_string(r) + " exceeds the budget");
    const int n = r + 1;
    const word_t pairs = word_t{1} << r;
    const std::uint64_t sets = std::uint64_t{1} << pairs;
    std::vector<VertexSet> out;
    out.reserve(sets);
    for (std::uint64_t k = 0; k < sets; ++k) {
        std::vector<Vertex> vs;
        vs.reserve(pairs);
        for (word_t x = 0; x < pairs; ++x) vs.emplace_back(((k >> x) & 1) ? (x ^ full_mask(n)) : x, n);
        out.emplace_back(std::move(vs));
    }
    return out;
}

/// The maximal simplex sigma in Q_{r+1} with cubic hull all of Q_{r+1}.
/// Even r: the even-weight vertices. Odd r: tau x {0,1}, tau built for r-1.
inline Simplex sigma_max(int r)
{
    if (r < 2) throw usage_error("sigma_max needs r >= 2");
    if (r > 20) throw capability_error("sigma_max capped at r = 20");
    std::vector<word_t> out;
    if (r % 2 == 0) {
        for (word_t w = 0; w < (word_t{1} << (r + 1)); ++w)
            if (popcount(w) % 2 == 0) out.push_back(w);
    } else {
        const Simplex tau = sigma_max(r - 1);
        for (word_t t : tau.vertices()) {
            out.push_back(t);
            out.push_back(t | (word_t{1} << r));
        }
    }
    return Simplex(std::move(out));
}

struct GeneratorEntry {
    SubcubeEmbedding embedding;
    Chain cycle;  // Z/2 sum of the embedded antipode-free sets
    Cochain dual; // indicator of the embedded sigma
    Simplex sigma;
};

namespace detail {

inline GeneratorEntry make_generator(const SubcubeEmbedding& e, int r, const std::vector<VertexSet>& family,
                                     const Simplex& sigma)
{
    std::vector<std::pair<Simplex, long long>> terms;
    terms.reserve(family.size());
    for (const auto& a : family) terms.emplace_back(embed(e, Simplex(a)), 1);
    const int q = (1 << r) - 1;
    GeneratorEntry g{e, Chain::from_terms(q, std::move(terms), PrimeField(2)), Cochain(), embed(e, sigma)};
    g.dual = Cochain::indicator(g.sigma);
    return g;
}

template <class F>
void parallel_for(std::size_t count, unsigned threads, F&& fn)
{
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
    if (threads == 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t)
        pool.emplace_back([&, t] {
            for (std::size_t i = t; i < count; i += threads) fn(i);
        });
    for (auto& th : pool) th.join();
}

} // namespace detail

/// Cycle, dual cocycle and sigma for one embedded copy of Q_{r+1}.
inline GeneratorEntry cross_polytopal_cycle(const SubcubeEmbedding& e, int n, int r)
{
    if (e.n() != n) throw usage_error("embedding lives in a different ambient cube");
    if (r < 2 || e.dim() != r + 1) throw usage_error("cross-polytopal cycle needs r >= 2 and a subcube of dimension r+1");
    return detail::make_generator(e, r, antipode_free_sets(r), sigma_max(r));
}

struct GeneratorFamily {
    int n = 0, r = 0;
    std::vector<GeneratorEntry> entries;

    int q() const { return (1 << r) - 1; }
    std::size_t size() const { return entries.size(); }
};

/// One generator per (S, b) with |S| = r+1, in all_subcubes order.
inline GeneratorFamily build_family(int n, int r, std::uint64_t budget = default_budget, unsigned threads = 1)
{
    check_dimension(n);
    if (r < 2 || n < r + 1) throw usage_error("generator family needs r >= 2 and n >= r+1");
    const auto subs = all_subcubes(n, r + 1);
    const auto family = antipode_free_sets(r, budget);
    const std::uint64_t words = static_cast<std::uint64_t>(subs.size()) * family.size() << r;
    if (words > budget)
        throw capability_error("generator family (" + std::to_string(n) + "," + std::to_string(r) + ") needs " +
                               std::to_string(words) + " vertex entries, over budget " + std::to_string(budget));
    const Simplex sigma = sigma_max(r);
    GeneratorFamily fam;
    fam.n = n;
    fam.r = r;
    std::vector<std::optional<GeneratorEntry>> slots(subs.size());
    detail::parallel_for(subs.size(), threads,
                         [&](std::size_t i) { slots[i] = detail::make_generator(subs[i], r, family, sigma); });
    fam.entries.reserve(subs.size());
    for (auto& s : slots) fam.entries.push_back(std::move(*s));
    return fam;
}

struct FamilyReport {
    std::size_t size = 0;
    bool cycles_closed = false;   // every boundary vanishes
    bool sigmas_maximal = false;  // every sigma maximal in VR(Q_n; r)
    bool pairing_identity = false;
    bool rank_checked = false;    // false when the skeleton was over budget
    std::size_t rank = 0;         // rank modulo boundaries, when checked
    std::string note;

    /// Independent classes certified by whichever checks ran.
    std::size_t certified_rank() const
    {
        if (rank_checked) return rank;
        return pairing_identity && cycles_closed ? size : 0;
    }
    bool ok() const
    {
        return cycles_closed && sigmas_maximal && pairing_identity && (!rank_checked || rank == size);
    }
};

/// Independence of the family's classes, checked by the pairing matrix and,
/// when the skeleton fits, by rank modulo boundaries.
inline FamilyReport family_rank(const GeneratorFamily& fam, const HomologyOptions& opt = {})
{
    if (!opt.field.binary()) throw usage_error("cross-polytopal cycles are defined over Z/2 only");
    FamilyReport rep;
    rep.size = fam.size();
    const PrimeField f2(2);

    rep.cycles_closed = true;
    rep.sigmas_maximal = true;
    for (const auto& g : fam.entries) {
        if (!boundary(g.cycle, f2).empty()) rep.cycles_closed = false;
        if (!is_maximal(fam.n, fam.r, g.sigma)) rep.sigmas_maximal = false;
    }

    rep.pairing_identity = true;
    for (std::size_t i = 0; i < fam.size() && rep.pairing_identity; ++i)
        for (std::size_t j = 0; j < fam.size(); ++j)
            if (pair(fam.entries[i].dual, fam.entries[j].cycle, f2) != (i == j ? 1 : 0)) {
                rep.pairing_identity = false;
                rep.note = "pairing(" + std::to_string(i) + "," + std::to_string(j) + ") is wrong";
                break;
            }

    try {
        const CycleQuotient h(fam.n, fam.r, fam.q(), opt);
        std::vector<Chain> cycles;
        cycles.reserve(fam.size());
        for (const auto& g : fam.entries) cycles.push_back(g.cycle);
        rep.rank = h.image_rank(cycles);
        rep.rank_checked = true;
    } catch (const capability_error& e) {
        if (!rep.note.empty()) rep.note += "; ";
        rep.note += std::string("rank check skipped: ") + e.what();
    }
    return rep;
}

/// One line per entry: coordinates S (1-based), offset b, sigma, cycle support size.
inline void dump_family(std::ostream& os, const GeneratorFamily& fam)
{
    for (const auto& g : fam.entries) {
        os << "S=";
        bool first = true;
        for (int i = 0; i < fam.n; ++i)
            if ((g.embedding.coords() >> i) & 1) {
                os << (first ? "" : ",") << i + 1;
                first = false;
            }
        os << " b=" << Vertex::to_binary(g.embedding.offset(), fam.n) << " sigma=" << g.sigma.str(fam.n)
           << " support=" << g.cycle.support_size() << '\n';
    }
}

} // namespace hcvr
