#pragma once

// Exact convex-geometry checks on {0,1}^n: hull membership of the cube's
// center, center coverage by diameter-r subsets, and triangulation checks.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hcvr/errors.hpp"
#include "hcvr/hypercube.hpp"
#include "hcvr/lp.hpp"

namespace hcvr {

using RationalPoint = std::vector<rational>;

inline int coord(const Vertex& v, int i) { return v.coordinate(i) ? 1 : 0; }

inline RationalPoint center_point(int n)
{
    check_dimension(n);
    return RationalPoint(static_cast<std::size_t>(n), rational(1, 2));
}

inline RationalPoint to_point(const Vertex& v)
{
    RationalPoint p(static_cast<std::size_t>(v.n()));
    for (int i = 0; i < v.n(); ++i) p[static_cast<std::size_t>(i)] = coord(v, i + 1);
    return p;
}

struct HullResult {
    bool contains = false;
    std::vector<rational> weights;  // convex weights, one per point, when contained
    std::vector<rational> separator; // c with c.p >= threshold for all points and c.target < threshold
    rational threshold;
};

/// Exact test whether `target` is a convex combination of the points.
inline HullResult hull_contains(const std::vector<Vertex>& points, const RationalPoint& target)
{
    if (points.empty()) throw usage_error("hull of an empty point set");
    const int n = points.front().n();
    for (const auto& p : points)
        if (p.n() != n) throw usage_error("points of mixed dimensions");
    if (static_cast<int>(target.size()) != n) throw usage_error("target dimension differs from the points");

    const std::size_t k = points.size(), dims = static_cast<std::size_t>(n);
    RationalMatrix a(dims + 1, std::vector<rational>(k));
    std::vector<rational> b(dims + 1);
    for (std::size_t j = 0; j < k; ++j) {
        for (std::size_t i = 0; i < dims; ++i) a[i][j] = coord(points[j], static_cast<int>(i) + 1);
        a[dims][j] = 1;
    }
    for (std::size_t i = 0; i < dims; ++i) b[i] = target[i];
    b[dims] = 1;

    auto lp = solve_feasibility(a, b);
    HullResult out;
    out.contains = lp.feasible;
    if (lp.feasible) {
        out.weights = std::move(lp.x);
    } else {
        out.separator.assign(lp.farkas.begin(), lp.farkas.begin() + static_cast<std::ptrdiff_t>(dims));
        out.threshold = -lp.farkas[dims];
    }
    return out;
}

// -- center coverage -------------------------------------------------------------------

enum class Coverage { coverable, not_coverable, indeterminate };

inline std::string to_string(Coverage c)
{
    switch (c) {
    case Coverage::coverable: return "coverable";
    case Coverage::not_coverable: return "not_coverable";
    case Coverage::indeterminate: return "indeterminate";
    }
    return "?";
}

struct CoverageResult {
    int n = 0, r = 0;
    Coverage status = Coverage::indeterminate;
    std::vector<Vertex> witness;      // diameter <= r, center in its hull
    std::vector<rational> weights;    // convex weights on the witness
    bool balanced = false;            // witness's uniform barycenter is the center
    std::string certificate;          // how the answer was reached
    std::vector<rational> separator;  // for hull_separator / coordinate_sum certificates
    rational threshold;
    std::uint64_t cliques_examined = 0;
};

inline constexpr std::uint64_t default_clique_budget = 1'000'000;

namespace detail {

inline bool is_balanced(const std::vector<Vertex>& vs)
{
    const int n = vs.front().n();
    for (int i = 1; i <= n; ++i) {
        std::size_t ones = 0;
        for (const auto& v : vs) ones += static_cast<std::size_t>(coord(v, i));
        if (2 * ones != vs.size()) return false;
    }
    return true;
}

// Bron-Kerbosch with pivoting over the graph on `verts` (edges: distance <= r),
// reporting maximal cliques that extend R. Stops when `visit` returns false.
struct MaximalCliques {
    int r;
    std::vector<word_t> verts;
    std::uint64_t budget;
    std::uint64_t seen = 0;
    bool exhausted = false;

    template <class F>
    bool run(std::vector<word_t>& clique, std::vector<std::size_t> p, std::vector<std::size_t> x, F&& visit)
    {
        if (p.empty() && x.empty()) {
            if (++seen > budget) {
                exhausted = true;
                return false;
            }
            return visit(clique);
        }
        if (p.empty()) return true;
        auto adj = [&](std::size_t u, std::size_t v) { return u != v && popcount(verts[u] ^ verts[v]) <= r; };
        std::size_t pivot = p.front(), best = 0;
        for (const auto* s : {&p, &x})
            for (std::size_t u : *s) {
                std::size_t c = 0;
                for (std::size_t v : p) c += adj(u, v) ? 1 : 0;
                if (c >= best) {
                    best = c;
                    pivot = u;
                }
            }
        const std::vector<std::size_t> cand = [&] {
            std::vector<std::size_t> c;
            for (std::size_t v : p)
                if (!adj(pivot, v)) c.push_back(v);
            return c;
        }();
        for (std::size_t v : cand) {
            std::vector<std::size_t> p2, x2;
            for (std::size_t u : p)
                if (u != v && adj(u, v)) p2.push_back(u);
            for (std::size_t u : x)
                if (adj(u, v)) x2.push_back(u);
            clique.push_back(verts[v]);
            const bool go = run(clique, std::move(p2), std::move(x2), visit);
            clique.pop_back();
            if (!go) return false;
            p.erase(std::find(p.begin(), p.end(), v));
            x.push_back(v);
        }
        return true;
    }
};

inline std::vector<Vertex> as_vertices(const std::vector<word_t>& ws, int n)
{
    std::vector<Vertex> out;
    for (word_t w : ws) out.emplace_back(w, n);
    return out;
}

} // namespace detail

/// Whether some subset of Q_n of diameter <= r has the center in its convex hull.
/// Candidates are translated so the origin is a member (XOR translation is an
/// isometry fixing the center), then every maximal clique through the origin is tested.
inline CoverageResult center_coverable(int n, int r, std::uint64_t clique_budget = default_clique_budget)
{
    check_dimension(n);
    if (r < 0) throw usage_error("scale must be nonnegative");
    CoverageResult out;
    out.n = n;
    out.r = r;
    const RationalPoint z = center_point(n);

    if (r >= n) { // {0, 1...1} has diameter n and midpoint the center
        out.status = Coverage::coverable;
        out.witness = {Vertex(0, n), Vertex(full_mask(n), n)};
        out.weights = {rational(1, 2), rational(1, 2)};
        out.balanced = true;
        out.certificate = "antipodal_pair";
        return out;
    }
    if (2 * r < n) { // coordinate sum is at most r < n/2 on the ball
        out.status = Coverage::not_coverable;
        out.certificate = "coordinate_sum";
        out.separator.assign(static_cast<std::size_t>(n), -1);
        out.threshold = -r;
        return out;
    }

    std::vector<word_t> ball;
    for (word_t w = 0; w <= full_mask(n); ++w)
        if (popcount(w) <= r) ball.push_back(w);
    const auto hull = hull_contains(detail::as_vertices(ball, n), z);
    if (!hull.contains) {
        out.status = Coverage::not_coverable;
        out.certificate = "hull_separator";
        out.separator = hull.separator;
        out.threshold = hull.threshold;
        return out;
    }

    detail::MaximalCliques mc{r, std::vector<word_t>(ball.begin() + 1, ball.end()), clique_budget};
    std::vector<std::size_t> p(mc.verts.size());
    for (std::size_t i = 0; i < p.size(); ++i) p[i] = i;
    std::vector<word_t> clique{0};
    std::optional<std::vector<word_t>> found;
    mc.run(clique, p, {}, [&](const std::vector<word_t>& c) {
        // Necessary: every coordinate reaches 1, and some member has weight >= n/2.
        word_t cover = 0;
        int heaviest = 0;
        for (word_t w : c) {
            cover |= w;
            heaviest = std::max(heaviest, popcount(w));
        }
        if (cover != full_mask(n) || 2 * heaviest < n) return true;
        if (!hull_contains(detail::as_vertices(c, n), z).contains) return true;
        found = c;
        return false;
    });
    out.cliques_examined = std::min(mc.seen, clique_budget);
    if (!found) {
        out.status = mc.exhausted ? Coverage::indeterminate : Coverage::not_coverable;
        out.certificate = mc.exhausted ? "clique_budget_exhausted" : "exhaustive_maximal_cliques";
        return out;
    }

    // Greedy shrink: drop members while the center stays in the hull.
    std::vector<word_t> w = *found;
    std::sort(w.begin(), w.end());
    for (std::size_t i = w.size(); i-- > 0;) {
        std::vector<word_t> trial = w;
        trial.erase(trial.begin() + static_cast<std::ptrdiff_t>(i));
        if (!trial.empty() && hull_contains(detail::as_vertices(trial, n), z).contains) w = std::move(trial);
    }
    out.status = Coverage::coverable;
    out.certificate = "witness";
    out.witness = detail::as_vertices(w, n);
    out.weights = hull_contains(out.witness, z).weights;
    out.balanced = detail::is_balanced(out.witness);
    return out;
}

// -- triangulations ---------------------------------------------------------------------

struct GeomSimplex {
    std::vector<Vertex> vertices;

    int n() const { return vertices.empty() ? 0 : vertices.front().n(); }
};

/// Determinant by exact Gaussian elimination.
inline rational determinant(RationalMatrix m)
{
    const std::size_t d = m.size();
    rational det = 1;
    for (std::size_t c = 0; c < d; ++c) {
        std::size_t piv = c;
        while (piv < d && m[piv][c] == 0) ++piv;
        if (piv == d) return 0;
        if (piv != c) {
            std::swap(m[piv], m[c]);
            det = -det;
        }
        det *= m[c][c];
        for (std::size_t i = c + 1; i < d; ++i) {
            if (m[i][c] == 0) continue;
            const rational f = m[i][c] / m[c][c];
            for (std::size_t j = c; j < d; ++j) m[i][j] -= f * m[c][j];
        }
    }
    return det;
}

/// Volume |det(v_1 - v_0, ..., v_n - v_0)| / n!.
inline rational simplex_volume(const GeomSimplex& s)
{
    const int n = s.n();
    if (static_cast<int>(s.vertices.size()) != n + 1) throw usage_error("volume needs n+1 vertices");
    RationalMatrix m(static_cast<std::size_t>(n), std::vector<rational>(static_cast<std::size_t>(n)));
    for (int i = 1; i <= n; ++i)
        for (int c = 1; c <= n; ++c)
            m[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(c - 1)] =
                coord(s.vertices[static_cast<std::size_t>(i)], c) - coord(s.vertices[0], c);
    rational v = abs(determinant(std::move(m)));
    for (int i = 2; i <= n; ++i) v /= i;
    return v;
}

/// True iff the two full-dimensional simplices share an interior point. With
/// lambda = 1 + l, mu = 1 + u (after scaling), that is l, u >= 0 solving
/// sum l_i a_i - sum u_j b_j = sum b_j - sum a_i and sum l_i - sum u_j = 0.
inline bool interiors_meet(const GeomSimplex& s, const GeomSimplex& t)
{
    const std::size_t n = static_cast<std::size_t>(s.n());
    const std::size_t ks = s.vertices.size(), kt = t.vertices.size();
    RationalMatrix a(n + 1, std::vector<rational>(ks + kt));
    std::vector<rational> b(n + 1);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < ks; ++j) {
            a[i][j] = coord(s.vertices[j], static_cast<int>(i) + 1);
            b[i] -= a[i][j];
        }
        for (std::size_t j = 0; j < kt; ++j) {
            a[i][ks + j] = -coord(t.vertices[j], static_cast<int>(i) + 1);
            b[i] -= a[i][ks + j];
        }
    }
    for (std::size_t j = 0; j < ks; ++j) a[n][j] = 1;
    for (std::size_t j = 0; j < kt; ++j) a[n][ks + j] = -1;
    b[n] = static_cast<long long>(kt) - static_cast<long long>(ks);
    return solve_feasibility(a, b).feasible;
}

struct TriangulationReport {
    bool ok = false;
    std::string failure; // first failing condition, empty when ok
    std::vector<rational> volumes;
    rational total;
};

/// Whether the simplices triangulate [0,1]^n at scale r: full-dimensional,
/// diameter <= r, volumes summing to 1, pairwise disjoint interiors.
inline TriangulationReport verify_triangulation(const std::vector<GeomSimplex>& simplices, int r)
{
    TriangulationReport rep;
    auto fail = [&](std::string why) {
        rep.failure = std::move(why);
        return rep;
    };
    if (simplices.empty()) return fail("no simplices");
    const int n = simplices.front().n();
    if (n < 1) return fail("empty simplex");
    for (std::size_t i = 0; i < simplices.size(); ++i) {
        const auto& s = simplices[i];
        const std::string tag = "simplex " + std::to_string(i + 1);
        for (const auto& v : s.vertices)
            if (v.n() != n) return fail(tag + " lives in a different dimension");
        if (static_cast<int>(s.vertices.size()) != n + 1) return fail(tag + " does not have n+1 vertices");
        if (diameter(VertexSet(s.vertices)) > r) return fail(tag + " has diameter above r");
        rational vol = simplex_volume(s);
        if (vol == 0) return fail(tag + " is affinely dependent");
        rep.volumes.push_back(vol);
        rep.total += vol;
    }
    if (rep.total != 1) return fail("volumes sum to " + rep.total.str() + ", not 1");
    for (std::size_t i = 0; i < simplices.size(); ++i)
        for (std::size_t j = i + 1; j < simplices.size(); ++j)
            if (interiors_meet(simplices[i], simplices[j]))
                return fail("simplices " + std::to_string(i + 1) + " and " + std::to_string(j + 1) +
                            " share interior points");
    rep.ok = true;
    return rep;
}

/// The five-tetrahedra triangulation of [0,1]^3 at scale 2: the even-weight
/// tetrahedron first, then the four corners it cuts off.
inline std::vector<GeomSimplex> five_tetrahedra()
{
    auto s = [](std::initializer_list<const char*> vs) {
        GeomSimplex g;
        for (const char* v : vs) g.vertices.push_back(Vertex::parse(v));
        return g;
    };
    return {s({"011", "110", "101", "000"}), s({"000", "100", "110", "101"}), s({"011", "110", "000", "010"}),
            s({"111", "011", "110", "101"}), s({"000", "011", "001", "101"})};
}

// -- n(r) ------------------------------------------------------------------------------

struct NofRReport {
    int r = 0;
    std::vector<std::pair<int, Coverage>> scan;  // (n, center coverage) for n = 1, 2, ...
    std::optional<int> least_uncovered;          // least n whose center is not coverable
    int bracket_lo = 0, bracket_hi = 0;          // that least n lies in [lo, hi]
    bool certified = false;                      // n(r) itself is pinned down
    std::string caveat;
};

/// Scans n = 1 .. min(n_budget, 2r+1) for the first center that no diameter-r
/// subset covers. That n is an upper bound for n(r); it equals n(r) only when
/// every smaller f_n is known to be surjective (certified here for r = 2).
inline NofRReport n_of_r(int r, int n_budget = 2 * 10 + 1, std::uint64_t clique_budget = default_clique_budget)
{
    if (r < 2) throw usage_error("n(r) needs r >= 2");
    if (n_budget < 1) throw usage_error("n budget must be positive");
    NofRReport rep;
    rep.r = r;
    const int top = std::min(n_budget, 2 * r + 1);
    std::optional<int> first_open;
    for (int n = 1; n <= top; ++n) {
        const auto c = center_coverable(n, r, clique_budget).status;
        rep.scan.emplace_back(n, c);
        if (c == Coverage::indeterminate && !first_open) first_open = n;
        if (c == Coverage::not_coverable) {
            rep.least_uncovered = n;
            break;
        }
    }
    if (rep.least_uncovered) {
        rep.bracket_hi = *rep.least_uncovered;
        rep.bracket_lo = first_open.value_or(*rep.least_uncovered);
    } else {
        rep.bracket_lo = first_open.value_or(top + 1);
        rep.bracket_hi = 2 * r + 1;
    }
    if (r == 2 && rep.least_uncovered == 4 && rep.bracket_lo == 4 && verify_triangulation(five_tetrahedra(), 2).ok) {
        // n = 1, 2: the full cube is one simplex; n = 3: the five tetrahedra.
        rep.certified = true;
        rep.caveat = "n(2) = 4: f_3 is onto by the five-tetrahedra triangulation, f_4 misses the center";
    } else {
        rep.caveat = "an uncovered center proves f_n is not onto; a covered center does not prove it is onto, "
                     "so the reported n bounds n(r) from above";
    }
    return rep;
}

} // namespace hcvr
