#pragma once

// Closed-form lower bounds on Betti numbers of VR(Q_n; r), evaluated exactly,
// and the per-n bound table assembled from seed ranks.

#include <algorithm>
#include <fstream>
#include <mutex>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>
#include <json.hpp>

#include "hcvr/errors.hpp"

namespace hcvr {

using bigint = boost::multiprecision::cpp_int;

/// Binomial coefficient from a memoized Pascal triangle; 0 outside 0 <= k <= n.
inline bigint binomial(int n, int k)
{
    if (n < 0 || k < 0 || k > n) return 0;
    static std::mutex guard;
    static std::vector<std::vector<bigint>> rows{{1}};
    std::lock_guard lock(guard);
    while (static_cast<int>(rows.size()) <= n) {
        const auto& prev = rows.back();
        std::vector<bigint> next(prev.size() + 1);
        next.front() = next.back() = 1;
        for (std::size_t i = 1; i + 1 < next.size(); ++i) next[i] = prev[i - 1] + prev[i];
        rows.push_back(std::move(next));
    }
    return rows[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)];
}

inline bigint pow2(int e)
{
    if (e < 0) throw usage_error("negative power of two");
    bigint v = 1;
    return v << e;
}

enum class BoundSource { cross_polytope, projection, codim1, propagation, quotient, combined };

inline std::string source_tag(BoundSource s)
{
    switch (s) {
    case BoundSource::cross_polytope: return "thm_cross_polytope";
    case BoundSource::projection: return "thm_projection";
    case BoundSource::codim1: return "thm_codim1";
    case BoundSource::propagation: return "thm_propagation";
    case BoundSource::quotient: return "thm_quotient";
    case BoundSource::combined: return "combined";
    }
    return "?";
}

/// A seed rank consumed by a bound: rank at base dimension p (or quotient level m).
struct SeedRef {
    int base_dim = 0;
    bigint rank;
    std::string note;
};

struct BoundRecord {
    int n = 0, r = -1, q = -1; // r, q are -1 when the formula does not fix them
    bigint value;
    BoundSource source = BoundSource::combined;
    std::vector<SeedRef> seeds;
    std::vector<bigint> parts;          // summands of a combined bound
    std::vector<std::string> sources;   // tags of the summands

    std::string decomposition() const
    {
        if (parts.size() < 2) return value.str();
        std::string s;
        for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? " + " : "") + parts[i].str();
        return s;
    }
};

namespace detail {

inline void require(bool ok, const std::string& what)
{
    if (!ok) throw usage_error(what);
}

// sum_{i=p}^{n} 2^{i-p} C(i-1, p-1)
inline bigint propagation_factor(int n, int p)
{
    bigint sum = 0;
    for (int i = p; i <= n; ++i) sum += pow2(i - p) * binomial(i - 1, p - 1);
    return sum;
}

inline BoundRecord record(int n, int r, int q, bigint v, BoundSource s, std::vector<SeedRef> seeds = {})
{
    BoundRecord b;
    b.n = n;
    b.r = r;
    b.q = q;
    b.value = std::move(v);
    b.source = s;
    b.seeds = std::move(seeds);
    return b;
}

} // namespace detail

/// 2^{n-r-1} C(n, r+1) independent classes in dimension 2^r - 1.
inline BoundRecord bound_cross_polytope(int n, int r)
{
    detail::require(r >= 2 && n >= r + 1, "cross-polytope bound needs n >= r+1 >= 3");
    detail::require(r < 30, "cross-polytope bound needs r < 30");
    return detail::record(n, r, (1 << r) - 1, pow2(n - r - 1) * binomial(n, r + 1), BoundSource::cross_polytope);
}

inline BoundRecord bound_projection(int n, int p, const bigint& seed, int r = -1, int q = -1)
{
    detail::require(n >= p && p >= 1 && seed >= 0, "projection bound needs n >= p >= 1 and seed >= 0");
    return detail::record(n, r, q, binomial(n, p) * seed, BoundSource::projection, {{p, seed, ""}});
}

inline BoundRecord bound_codim1(int p, const bigint& seed, int r = -1, int q = -1)
{
    detail::require(p >= 1 && seed >= 0, "codimension-one bound needs p >= 1 and seed >= 0");
    return detail::record(p + 1, r, q, (2 * p + 1) * seed, BoundSource::codim1, {{p, seed, ""}});
}

inline BoundRecord bound_propagation(int n, int p, const bigint& seed, int r = -1, int q = -1)
{
    detail::require(n >= p && p >= 1 && seed >= 0, "propagation bound needs n >= p >= 1 and seed >= 0");
    return detail::record(n, r, q, detail::propagation_factor(n, p) * seed, BoundSource::propagation, {{p, seed, ""}});
}

inline BoundRecord bound_quotient(int n, int m, const bigint& seed, int r = -1, int q = -1)
{
    detail::require(n >= m && m >= 1 && seed >= 0, "quotient bound needs n >= m >= 1 and seed >= 0");
    return detail::record(n, r, q, detail::propagation_factor(n, m) * seed, BoundSource::quotient, {{m, seed, ""}});
}

/// sum_{0 <= j < i < n} (j+1)(2^{n-2} - 2^{i-1})
inline bigint c_n(int n)
{
    detail::require(n >= 3, "c_n needs n >= 3");
    bigint sum = 0;
    for (int i = 1; i < n; ++i)
        for (int j = 0; j < i; ++j) sum += (j + 1) * (pow2(n - 2) - pow2(i - 1));
    return sum;
}

/// Sphere counts in VR(Q_n; 3): (copies of S^7, copies of S^4).
inline std::pair<bigint, bigint> ziqin_counts(int n)
{
    detail::require(n >= 5, "r = 3 sphere counts need n >= 5");
    bigint fours = 0;
    for (int i = 4; i <= n - 1; ++i) fours += pow2(i - 4) * binomial(i, 4);
    return {pow2(n - 4) * binomial(n, 4), fours};
}

/// n 2^{n-1} - 2^n + 1
inline bigint beta1_closed_form(int n)
{
    detail::require(n >= 1, "closed form needs n >= 1");
    return n * pow2(n - 1) - pow2(n) + 1;
}

/// First n in [3, n_max] where either summation identity fails, or 0.
inline int appendix_identity_failure(int n_max)
{
    detail::require(n_max >= 3, "identity check needs n_max >= 3");
    for (int n = 1; n <= n_max; ++n) {
        bigint left = 0;
        for (int i = 2; i <= n; ++i) left += (i - 1) * pow2(i - 2);
        if (left != beta1_closed_form(n)) return n;
        if (n < 3) continue;
        bigint lhs = 0, tail = 0;
        for (int i = 3; i <= n; ++i) lhs += pow2(i - 3) * binomial(i, 3);
        for (int i = 1; i <= n - 2; ++i) tail += pow2(i - 1) * binomial(i + 1, 2);
        if (lhs != pow2(n - 2) * binomial(n, 3) - tail) return n;
    }
    return 0;
}

inline bool appendix_identities(int n_max) { return appendix_identity_failure(n_max) == 0; }

/// cross-polytope(n,2) + quotient(n,4,1) = c_n for 3 <= n <= n_max; returns the first failure or 0.
inline int chain_identity_failure(int n_max)
{
    for (int n = 3; n <= n_max; ++n) {
        bigint v = bound_cross_polytope(n, 2).value;
        if (n >= 4) v += bound_quotient(n, 4, 1).value;
        if (v != c_n(n)) return n;
    }
    return 0;
}

// -- seeds and tables ---------------------------------------------------------------

enum class SeedKind { propagation, quotient };

struct Seed {
    int r = 0, q = 0;
    int base_dim = 0; // p for propagation, m for quotient
    bigint rank;
    SeedKind kind = SeedKind::propagation;
    unsigned field = 2;
    std::string note;
};

inline std::vector<Seed> parse_seeds(const nlohmann::json& j)
{
    if (!j.is_array()) throw usage_error("seed file must hold a JSON array");
    std::vector<Seed> out;
    for (const auto& e : j) {
        try {
            Seed s;
            s.r = e.at("r").get<int>();
            s.q = e.at("q").get<int>();
            s.base_dim = e.at("base_dim").get<int>();
            const auto& rk = e.at("rank");
            s.rank = rk.is_string() ? bigint(rk.get<std::string>()) : bigint(rk.get<std::uint64_t>());
            const auto kind = e.at("kind").get<std::string>();
            if (kind == "propagation")
                s.kind = SeedKind::propagation;
            else if (kind == "quotient")
                s.kind = SeedKind::quotient;
            else
                throw usage_error("unknown seed kind '" + kind + "'");
            s.field = e.value("field", 2u);
            s.note = e.value("note", std::string());
            if (s.r < 0 || s.q < 1 || s.base_dim < 1 || s.rank < 0)
                throw usage_error("seed fields out of range");
            out.push_back(std::move(s));
        } catch (const nlohmann::json::exception& ex) {
            throw usage_error(std::string("malformed seed entry: ") + ex.what());
        } catch (const std::runtime_error& ex) { // bad big-integer string
            throw usage_error(std::string("malformed seed entry: ") + ex.what());
        }
    }
    return out;
}

inline std::vector<Seed> load_seeds(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw usage_error("cannot open seed file " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& ex) {
        throw usage_error("seed file " + path + " is not valid JSON: " + ex.what());
    }
    return parse_seeds(j);
}

/// Combined bound for (n, r, q): the largest single-source bound, plus
/// quotient terms whose level exceeds that source's base dimension.
/// Returns a record with zero parts when nothing applies.
inline BoundRecord combined_bound(int n, int r, int q, const std::vector<Seed>& seeds)
{
    BoundRecord best = detail::record(n, r, q, 0, BoundSource::combined);
    int base_dim = 0;
    bool have = false;
    auto consider = [&](BoundRecord b, int dim) {
        if (!have || b.value > best.value) {
            best = std::move(b);
            base_dim = dim;
            have = true;
        }
    };
    if (r >= 2 && r < 30 && q == (1 << r) - 1 && n >= r + 1) consider(bound_cross_polytope(n, r), r + 1);
    for (const auto& s : seeds) {
        if (s.r != r || s.q != q || s.kind != SeedKind::propagation || n < s.base_dim) continue;
        auto with_note = [&](BoundRecord b) {
            b.seeds.front().note = s.note;
            return b;
        };
        consider(with_note(bound_propagation(n, s.base_dim, s.rank, r, q)), s.base_dim);
        consider(with_note(bound_projection(n, s.base_dim, s.rank, r, q)), s.base_dim);
        if (n == s.base_dim + 1) {
            auto c = with_note(bound_codim1(s.base_dim, s.rank, r, q));
            consider(std::move(c), s.base_dim);
        }
    }

    BoundRecord out = detail::record(n, r, q, 0, BoundSource::combined);
    if (have) {
        out.value = best.value;
        out.parts.push_back(best.value);
        out.sources.push_back(source_tag(best.source));
        for (auto& sr : best.seeds) out.seeds.push_back(sr);
        out.source = best.source;
    }
    for (const auto& s : seeds) {
        if (s.r != r || s.q != q || s.kind != SeedKind::quotient || n < s.base_dim) continue;
        if (have && s.base_dim <= base_dim) continue; // would recount classes already in the base term
        auto b = bound_quotient(n, s.base_dim, s.rank, r, q);
        out.value += b.value;
        out.parts.push_back(b.value);
        out.sources.push_back(source_tag(BoundSource::quotient) + "(m=" + std::to_string(s.base_dim) + ")");
        out.seeds.push_back({s.base_dim, s.rank, s.note});
        out.source = have ? BoundSource::combined : BoundSource::quotient;
        have = true;
    }
    return out;
}

/// Homology dimensions that have a bound at scale r, descending.
inline std::vector<int> table_dimensions(int r, const std::vector<Seed>& seeds)
{
    std::vector<int> qs;
    if (r >= 2 && r < 30) qs.push_back((1 << r) - 1);
    for (const auto& s : seeds)
        if (s.r == r) qs.push_back(s.q);
    std::sort(qs.begin(), qs.end(), std::greater<>());
    qs.erase(std::unique(qs.begin(), qs.end()), qs.end());
    return qs;
}

/// Rows (n ascending, q descending within n) for every n <= n_max with a nonzero bound.
inline std::vector<BoundRecord> table(int r, int n_max, const std::vector<Seed>& seeds)
{
    detail::require(r >= 0, "table needs r >= 0");
    detail::require(n_max >= 1 && n_max <= 4096, "table needs 1 <= n_max <= 4096");
    std::vector<BoundRecord> rows;
    const auto qs = table_dimensions(r, seeds);
    for (int n = 1; n <= n_max; ++n)
        for (int q : qs) {
            auto b = combined_bound(n, r, q, seeds);
            if (!b.parts.empty()) rows.push_back(std::move(b));
        }
    return rows;
}

inline std::string join_sources(const BoundRecord& b)
{
    std::string s;
    for (std::size_t i = 0; i < b.sources.size(); ++i) s += (i ? "+" : "") + b.sources[i];
    return s.empty() ? source_tag(b.source) : s;
}

inline nlohmann::json to_json(const BoundRecord& b)
{
    nlohmann::json seeds = nlohmann::json::array();
    for (const auto& s : b.seeds) seeds.push_back({{"base_dim", s.base_dim}, {"rank", s.rank.str()}, {"note", s.note}});
    nlohmann::json parts = nlohmann::json::array();
    for (const auto& p : b.parts) parts.push_back(p.str());
    return {{"n", b.n},           {"r", b.r},         {"q", b.q},
            {"bound", b.value.str()}, {"decomposition", b.decomposition()}, {"parts", parts},
            {"source", source_tag(b.source)}, {"sources", join_sources(b)}, {"seeds", seeds}};
}

inline void write_table_csv(std::ostream& os, const std::vector<BoundRecord>& rows)
{
    os << "n,r,q,bound,decomposition,sources\n";
    for (const auto& b : rows)
        os << b.n << ',' << b.r << ',' << b.q << ',' << b.value << ",\"" << b.decomposition() << "\"," << join_sources(b)
           << '\n';
}

/// One line per n, one column per homology dimension: "| n | beta_15 | beta_7 |".
inline void write_table_markdown(std::ostream& os, int r, const std::vector<BoundRecord>& rows)
{
    std::vector<int> qs;
    for (const auto& b : rows) qs.push_back(b.q);
    std::sort(qs.begin(), qs.end(), std::greater<>());
    qs.erase(std::unique(qs.begin(), qs.end()), qs.end());
    os << "| n (r=" << r << ") |";
    for (int q : qs) os << " beta_" << q << " >= |";
    os << "\n|---|";
    for (std::size_t i = 0; i < qs.size(); ++i) os << "---|";
    os << '\n';
    for (std::size_t i = 0; i < rows.size();) {
        const int n = rows[i].n;
        os << "| " << n << " |";
        for (int q : qs) {
            auto it = std::find_if(rows.begin(), rows.end(), [&](const BoundRecord& b) { return b.n == n && b.q == q; });
            os << ' ' << (it == rows.end() ? std::string() : it->decomposition()) << " |";
        }
        os << '\n';
        while (i < rows.size() && rows[i].n == n) ++i;
    }
}

} // namespace hcvr
