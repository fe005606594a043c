#include <catch_amalgamated.hpp>

#include <random>

#include "hcvr/geometric.hpp"
#include "oracles.hpp"

using namespace hcvr;

namespace {

std::vector<Vertex> vs(std::initializer_list<const char*> strings)
{
    std::vector<Vertex> out;
    for (const char* s : strings) out.push_back(Vertex::parse(s));
    return out;
}

std::vector<oracle::word> words(const std::vector<Vertex>& v)
{
    std::vector<oracle::word> out;
    for (const auto& x : v) out.push_back(x.bits());
    return out;
}

// Exact verification of a hull certificate, independent of the LP.
void check_certificate(const std::vector<Vertex>& pts, const RationalPoint& z, const HullResult& h)
{
    const std::size_t n = z.size();
    if (h.contains) {
        REQUIRE(h.weights.size() == pts.size());
        rational total = 0;
        RationalPoint x(n, 0);
        for (std::size_t j = 0; j < pts.size(); ++j) {
            REQUIRE(h.weights[j] >= 0);
            total += h.weights[j];
            for (std::size_t i = 0; i < n; ++i) x[i] += h.weights[j] * coord(pts[j], static_cast<int>(i) + 1);
        }
        CHECK(total == 1);
        CHECK(x == z);
    } else {
        REQUIRE(h.separator.size() == n);
        for (const auto& p : pts) {
            rational dot = 0;
            for (std::size_t i = 0; i < n; ++i) dot += h.separator[i] * coord(p, static_cast<int>(i) + 1);
            REQUIRE(dot >= h.threshold);
        }
        rational dz = 0;
        for (std::size_t i = 0; i < n; ++i) dz += h.separator[i] * z[i];
        CHECK(dz < h.threshold);
    }
}

} // namespace

TEST_CASE("exact feasibility with certificates", "[geometric][lp]")
{
    // x1 + x2 = 1, x1 - x2 = 0  ->  x = (1/2, 1/2)
    RationalMatrix a{{1, 1}, {1, -1}};
    auto r = solve_feasibility(a, {1, 0});
    REQUIRE(r.feasible);
    CHECK(r.x == std::vector<rational>{rational(1, 2), rational(1, 2)});

    // x1 + x2 = -1 has no nonnegative solution
    RationalMatrix b{{1, 1}};
    auto s = solve_feasibility(b, {-1});
    REQUIRE_FALSE(s.feasible);
    REQUIRE(s.farkas.size() == 1);
    CHECK(s.farkas[0] * 1 >= 0);
    CHECK(s.farkas[0] * -1 < 0);

    CHECK_THROWS_AS(solve_feasibility(a, {1}), usage_error);
}

TEST_CASE("hull membership of the center", "[geometric]")
{
    const auto tau1 = vs({"011", "110", "101", "000"});
    const auto z = center_point(3);
    const auto h = hull_contains(tau1, z);
    REQUIRE(h.contains);
    for (const auto& w : h.weights) CHECK(w == rational(1, 4));
    check_certificate(tau1, z, h);

    const auto edge = vs({"000", "100"});
    const auto e = hull_contains(edge, z);
    CHECK_FALSE(e.contains);
    check_certificate(edge, z, e);

    CHECK_THROWS_AS(hull_contains({}, z), usage_error);
    CHECK_THROWS_AS(hull_contains(vs({"00", "11"}), z), usage_error);
}

TEST_CASE("hull membership agrees with a Caratheodory oracle", "[geometric][oracle]")
{
    std::mt19937 rng(2024);
    for (int n = 1; n <= 4; ++n)
        for (int trial = 0; trial < 150; ++trial) {
            std::vector<Vertex> pts;
            const int k = 1 + static_cast<int>(rng() % 6);
            for (int i = 0; i < k; ++i) pts.emplace_back(static_cast<word_t>(rng() % (1u << n)), n);
            const auto z = center_point(n);
            const auto h = hull_contains(pts, z);
            INFO("n=" << n << " trial=" << trial);
            CHECK(h.contains == oracle::center_in_hull(words(pts), n));
            check_certificate(pts, z, h);
        }
}

TEST_CASE("center coverage examples", "[geometric]")
{
    const auto c32 = center_coverable(3, 2);
    REQUIRE(c32.status == Coverage::coverable);
    CHECK(diameter(VertexSet(c32.witness)) <= 2);
    check_certificate(c32.witness, center_point(3), hull_contains(c32.witness, center_point(3)));
    CHECK(c32.balanced);

    const auto c42 = center_coverable(4, 2);
    CHECK(c42.status == Coverage::not_coverable);

    CHECK(center_coverable(3, 3).certificate == "antipodal_pair");
    CHECK(center_coverable(1, 0).status == Coverage::not_coverable);
    CHECK_THROWS_AS(center_coverable(3, -1), usage_error);
}

TEST_CASE("coordinate-sum certificate for n = 2r+1", "[geometric]")
{
    for (int r = 1; r <= 5; ++r) {
        const int n = 2 * r + 1;
        const auto c = center_coverable(n, r);
        INFO("r = " << r);
        REQUIRE(c.status == Coverage::not_coverable);
        CHECK(c.certificate == "coordinate_sum");
        // separator -sum(x) >= -r on every point within distance r of the origin; the center gives -n/2 < -r
        for (word_t w = 0; w < (word_t{1} << n); ++w) {
            if (std::popcount(w) > r) continue;
            rational dot = 0;
            for (int i = 1; i <= n; ++i) dot += c.separator[static_cast<std::size_t>(i - 1)] * coord(Vertex(w, n), i);
            REQUIRE(dot >= c.threshold);
        }
        rational dz = 0;
        for (const auto& s : c.separator) dz += s * rational(1, 2);
        CHECK(dz < c.threshold);
    }
}

TEST_CASE("coverage agrees with brute force over all subsets", "[geometric][oracle]")
{
    for (int n = 1; n <= 4; ++n)
        for (int r = 0; r <= std::min(n, 3); ++r) {
            if (n == 4 && r == 3) continue; // 2^14 subsets with hull tests: too slow for a unit test
            const auto c = center_coverable(n, r);
            INFO("n=" << n << " r=" << r);
            REQUIRE(c.status != Coverage::indeterminate);
            CHECK((c.status == Coverage::coverable) == oracle::center_coverable(n, r));
        }
}

TEST_CASE("coverage is invariant under XOR translation", "[geometric]")
{
    // Translating the witness by any vertex is an isometry fixing the center.
    const auto c = center_coverable(3, 2);
    REQUIRE(c.status == Coverage::coverable);
    for (word_t t = 0; t < 8; ++t) {
        std::vector<Vertex> moved;
        for (const auto& v : c.witness) moved.emplace_back(v.bits() ^ t, 3);
        CHECK(diameter(VertexSet(moved)) <= 2);
        CHECK(hull_contains(moved, center_point(3)).contains);
    }
}

TEST_CASE("volumes and determinants", "[geometric][oracle]")
{
    for (const auto& s : five_tetrahedra()) {
        std::vector<std::vector<oracle::rat>> m(3, std::vector<oracle::rat>(3));
        for (int i = 1; i <= 3; ++i)
            for (int c = 1; c <= 3; ++c)
                m[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(c - 1)] =
                    coord(s.vertices[static_cast<std::size_t>(i)], c) - coord(s.vertices[0], c);
        const auto det = oracle::leibniz_det(m);
        CHECK(simplex_volume(s) == abs(det) / 6);
        CHECK(abs(determinant(m)) == abs(det));
    }
    CHECK(simplex_volume(five_tetrahedra()[0]) == rational(1, 3));
    CHECK(simplex_volume(five_tetrahedra()[1]) == rational(1, 6));
}

TEST_CASE("the five-tetrahedra triangulation", "[geometric]")
{
    const auto tets = five_tetrahedra();
    const auto rep = verify_triangulation(tets, 2);
    CHECK(rep.ok);
    CHECK(rep.total == 1);
    CHECK(rep.volumes.size() == 5);

    for (unsigned mask = 1; mask < 31; ++mask) {
        std::vector<GeomSimplex> part;
        for (unsigned i = 0; i < 5; ++i)
            if ((mask >> i) & 1u) part.push_back(tets[i]);
        INFO("mask " << mask);
        CHECK_FALSE(verify_triangulation(part, 2).ok);
    }
    CHECK_FALSE(verify_triangulation(tets, 1).ok);

    // two halves of the square share an interior only if they overlap
    GeomSimplex a{vs({"00", "10", "01"})}, b{vs({"10", "01", "11"})}, c{vs({"00", "10", "11"})};
    CHECK_FALSE(interiors_meet(a, b));
    CHECK(interiors_meet(a, c));
    CHECK(verify_triangulation({a, b}, 2).ok);
    CHECK_FALSE(verify_triangulation({a, c}, 2).ok);
}

TEST_CASE("n(r) scan", "[geometric]")
{
    const auto two = n_of_r(2);
    CHECK(two.least_uncovered == 4);
    CHECK(two.certified);
    CHECK(two.bracket_lo == 4);
    CHECK(two.bracket_hi == 4);

    const auto three = n_of_r(3);
    CHECK(three.least_uncovered == 5);
    CHECK_FALSE(three.certified);
    CHECK(three.bracket_hi == 5);
    CHECK_THROWS_AS(n_of_r(1), usage_error);
}
