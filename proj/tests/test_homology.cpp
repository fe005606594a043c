#include <catch_amalgamated.hpp>

#include "hcvr/homology.hpp"
#include "oracles.hpp"

using namespace hcvr;

namespace {

HomologyOptions over(unsigned p)
{
    HomologyOptions o;
    o.field = PrimeField(p);
    return o;
}

// Dense oracle: dim(span(cycles) + B_q) - dim(B_q) in VR(Q_n; r) over Z/p.
std::size_t dense_image_rank(int n, int r, int q, const std::vector<Chain>& cycles, int p)
{
    const auto s = oracle::vr_simplices(n, r, q + 1);
    const auto& qs = s[static_cast<std::size_t>(q)];
    auto bd = oracle::boundary_matrix(qs, s[static_cast<std::size_t>(q) + 1]);
    if (bd.empty()) bd.assign(qs.size(), {});
    const std::size_t base = oracle::dense_rank(bd, p);
    for (const auto& c : cycles) {
        for (auto& row : bd) row.push_back(0);
        for (std::size_t t = 0; t < c.support_size(); ++t) {
            const auto& v = c.simplices()[t].vertices();
            const auto it = std::lower_bound(qs.begin(), qs.end(), std::vector<oracle::word>(v.begin(), v.end()));
            REQUIRE(it != qs.end());
            bd[static_cast<std::size_t>(it - qs.begin())].back() = c.coefs()[t];
        }
    }
    return oracle::dense_rank(bd, p) - base;
}

} // namespace

TEST_CASE("Betti examples", "[homology]")
{
    CHECK(betti(3, 1, 1).betti == 5);
    CHECK(betti(4, 2, 3).betti == 9);
    CHECK(betti(5, 3, 4).betti == 1);
    CHECK(betti(5, 3, 7).betti == 10);
    CHECK(betti(3, 0, 0).betti == 8); // unreduced: 8 components
    CHECK(betti(3, 1, 0).betti == 1);
}

TEST_CASE("Betti numbers equal the dense-rank oracle", "[homology][oracle]")
{
    for (unsigned p : {2u, 3u, 5u})
        for (int n = 1; n <= 4; ++n)
            for (int r = 0; r <= n; ++r)
                for (int q = 0; q <= 4; ++q) {
                    const auto s = oracle::vr_simplices(n, r, q + 1);
                    if (s[q].size() * std::max<std::size_t>(s[q + 1].size(), 1) > 400'000) continue;
                    INFO("n=" << n << " r=" << r << " q=" << q << " p=" << p);
                    REQUIRE(betti(n, r, q, over(p)).betti == oracle::betti(n, r, q, static_cast<int>(p)));
                }
    CHECK(betti(5, 1, 1).betti == oracle::betti(5, 1, 1, 2));
    CHECK(betti(5, 2, 2).betti == oracle::betti(5, 2, 2, 2));
}

TEST_CASE("Betti result fields are consistent", "[homology]")
{
    const auto b = betti(4, 2, 3);
    CHECK(b.n == 4);
    CHECK(b.field == 2);
    CHECK(b.betti == b.count_at - b.rank_q - b.rank_above);
    const auto s = oracle::vr_simplices(4, 2, 4);
    CHECK(b.count_below == s[2].size());
    CHECK(b.count_at == s[3].size());
    CHECK(b.count_above == s[4].size());
}

TEST_CASE("range and single-dimension Betti numbers agree", "[homology]")
{
    const auto range = betti_range(5, 3, 1, 8);
    for (const auto& b : range) {
        const std::uint64_t expect = b.q == 4 ? 1 : b.q == 7 ? 10 : 0;
        CHECK(b.betti == expect);
        CHECK(betti(5, 3, b.q).betti == b.betti);
    }
}

TEST_CASE("boundary ranks and the chain-complex identity", "[homology]")
{
    const auto square = build_skeleton(2, 1, 1);
    CHECK(boundary_rank(square, 1) == 3);
    CHECK(boundary_rank(square, 1, PrimeField(3)) == 3);

    const auto k32 = build_skeleton(3, 2, 4);
    // beta_3 = #3-simplices - rank d3 - rank d4 = 1, and there are no 4-simplices
    CHECK(k32.count(3) - boundary_rank(k32, 3) - boundary_rank(k32, 4) == 1);

    for (unsigned p : {2u, 3u, 7u}) {
        const auto k = build_skeleton(4, 2, 4);
        for (int q = 2; q <= 4; ++q) CHECK(boundary_squares_to_zero(k, q, PrimeField(p)));
    }
    CHECK_THROWS_AS(boundary_rank(square, 2), usage_error);
}

TEST_CASE("low homology vanishes for r >= 2", "[homology]")
{
    for (auto [n, r] : {std::pair{3, 2}, std::pair{4, 2}, std::pair{5, 2}, std::pair{4, 3}, std::pair{5, 3},
                        std::pair{6, 2}})
        for (int q : {1, 2}) {
            INFO("n=" << n << " r=" << r << " q=" << q);
            CHECK(betti(n, r, q).betti == 0);
        }
}

TEST_CASE("the cross-polytope sphere appears at n = r+1", "[homology]")
{
    for (int r = 1; r <= 3; ++r) {
        REQUIRE(cross_polytope_isomorphic(r));
        CHECK(betti(r + 1, r, (1 << r) - 1).betti == 1);
    }
}

TEST_CASE("odd-prime Betti numbers", "[homology]")
{
    CHECK(betti(4, 2, 3, over(3)).betti == 9);
    CHECK(betti(3, 1, 1, over(7)).betti == 5);
    CHECK(betti(4, 3, 7, over(5)).betti == 1);
}

TEST_CASE("homology bases are independent cycles", "[homology][oracle]")
{
    for (unsigned p : {2u, 3u})
        for (auto [n, r, q] : {std::tuple{3, 1, 1}, std::tuple{4, 1, 1}, std::tuple{4, 2, 3}, std::tuple{3, 2, 3}}) {
            const auto opt = over(p);
            const auto basis = homology_basis(n, r, q, opt);
            REQUIRE(basis.size() == betti(n, r, q, opt).betti);
            for (const auto& z : basis) REQUIRE(boundary(z, opt.field).empty());
            CHECK(dense_image_rank(n, r, q, basis, static_cast<int>(p)) == basis.size());
            CHECK(CycleQuotient(n, r, q, opt).image_rank(basis) == basis.size());
        }
}

TEST_CASE("chains: boundary, pairing, embedding", "[homology]")
{
    const PrimeField f3(3);
    const Simplex tri({0b00, 0b01, 0b10});
    const auto c = Chain::indicator(tri);
    const auto d = boundary(c, f3);
    CHECK(d.support_size() == 3);
    CHECK(d.coefficient(Simplex({0b01, 0b10})) == 1);
    CHECK(d.coefficient(Simplex({0b00, 0b10})) == 2);
    CHECK(d.coefficient(Simplex({0b00, 0b01})) == 1);
    CHECK(boundary(d, f3).empty());

    const auto sum = Chain::from_terms(1, {{Simplex({0, 1}), 2}, {Simplex({0, 1}), 1}, {Simplex({1, 3}), 4}}, f3);
    CHECK(sum.support_size() == 1);
    CHECK(sum.coefficient(Simplex({1, 3})) == 1);
    CHECK_THROWS_AS(Chain::from_terms(2, {{Simplex({0, 1}), 1}}, f3), usage_error);

    const SubcubeEmbedding e(3, 0b011, 0b100);
    const auto moved = embed(e, c);
    CHECK(moved.simplices().front() == Simplex({0b100, 0b101, 0b110}));

    const auto omega = Cochain::indicator(Simplex({0b00, 0b10}));
    CHECK(pair(omega, d, f3) == 2);
    CHECK(pair(omega, Chain::indicator(Simplex({1, 3})), f3) == 0);
    CHECK_THROWS_AS(pair(omega, c, f3), usage_error);
}

TEST_CASE("pairing against a maximal simplex ignores boundaries", "[homology]")
{
    // A maximal sigma is a face of no (q+1)-simplex, so adding a boundary
    // never changes its coefficient.
    const PrimeField f2(2);
    const Simplex sigma({0b000, 0b011, 0b101, 0b110});
    const auto omega = Cochain::indicator(sigma);
    const auto basis = homology_basis(3, 2, 3);
    REQUIRE(basis.size() == 1);
    const auto z = basis.front();
    CHECK(pair(omega, z, f2) == 1);

    // VR(Q_4;2) has 4-simplices, so the shift is not vacuous there.
    const auto basis4 = homology_basis(4, 2, 3);
    const auto k = build_skeleton(4, 2, 4);
    const Simplex sigma4({0b0000, 0b0011, 0b0101, 0b0110});
    REQUIRE(is_maximal(4, 2, sigma4));
    const auto omega4 = Cochain::indicator(sigma4);
    for (const auto& zz : basis4)
        for (std::size_t i = 0; i < k.count(4); i += 7) {
            const auto bd = boundary(Chain::indicator(k.simplex_at(4, i)), f2);
            std::vector<std::pair<Simplex, long long>> terms;
            for (std::size_t t = 0; t < zz.support_size(); ++t) terms.emplace_back(zz.simplices()[t], zz.coefs()[t]);
            for (std::size_t t = 0; t < bd.support_size(); ++t) terms.emplace_back(bd.simplices()[t], bd.coefs()[t]);
            const auto shifted = Chain::from_terms(3, terms, f2);
            REQUIRE(pair(omega4, shifted, f2) == pair(omega4, zz, f2));
        }
}

TEST_CASE("induced maps from subcubes", "[homology]")
{
    const auto squares = all_subcubes(3, 2);
    REQUIRE(squares.size() == 6);
    CHECK(induced_map_rank({squares.front()}, 3, 1, 1) == 1);
    CHECK(induced_map_rank(squares, 3, 1, 1) == 5);
    CHECK(induced_map_rank(all_subcubes(4, 3), 4, 2, 3) == 8);
    CHECK(induced_map_rank({}, 3, 1, 1) == 0);
    CHECK_THROWS_AS(induced_map_rank({SubcubeEmbedding(4, 0b11, 0)}, 3, 1, 1), usage_error);

    // a single isometric copy injects
    for (auto [n, p, r, q] : {std::tuple{4, 2, 1, 1}, std::tuple{4, 3, 1, 1}, std::tuple{4, 3, 2, 3}, std::tuple{5, 4, 2, 3}})
        for (const auto& e : all_subcubes(n, p)) REQUIRE(induced_map_rank({e}, n, r, q) == betti(p, r, q).betti);
}

TEST_CASE("induced map ranks equal the dense oracle", "[homology][oracle]")
{
    const auto basis = homology_basis(2, 1, 1);
    std::vector<Chain> images;
    for (const auto& e : all_subcubes(3, 2))
        for (const auto& z : basis) images.push_back(embed(e, z));
    CHECK(dense_image_rank(3, 1, 1, images, 2) == 5);

    const auto b3 = homology_basis(3, 2, 3);
    images.clear();
    for (const auto& e : all_subcubes(4, 3))
        for (const auto& z : b3) images.push_back(embed(e, z));
    CHECK(dense_image_rank(4, 2, 3, images, 2) == 8);
}

TEST_CASE("quotient ranks", "[homology]")
{
    CHECK(quotient_rank(4, 2, 3, 4) == 1);
    CHECK(quotient_rank(3, 2, 3, 3) == 1);
    CHECK(quotient_rank(5, 3, 4, 5) == 1);
    CHECK(quotient_rank(4, 2, 3, 1) == 9);
    CHECK_THROWS_AS(quotient_rank(4, 2, 3, 5), usage_error);
}

TEST_CASE("scale inclusions are zero on homology", "[homology]")
{
    CHECK(scale_inclusion_rank(3, 1, 2, 1) == 0);
    CHECK(scale_inclusion_rank(4, 1, 2, 1) == 0);
    CHECK(scale_inclusion_rank(4, 2, 3, 3) == 0);
    CHECK(scale_inclusion_rank(5, 2, 3, 3) == 0);
    CHECK(scale_inclusion_rank(4, 1, 3, 1) == 0);
    CHECK(scale_inclusion_rank(4, 2, 2, 3) == 9);
    CHECK_THROWS_AS(scale_inclusion_rank(4, 3, 2, 3), usage_error);
}

TEST_CASE("results do not depend on thread count", "[homology][threads]")
{
    HomologyOptions one, four;
    four.threads = 4;
    for (int q = 1; q <= 8; ++q) CHECK(betti(5, 3, q, one).betti == betti(5, 3, q, four).betti);
    const auto a = homology_basis(4, 2, 3, one), b = homology_basis(4, 2, 3, four);
    CHECK(a == b);
}

TEST_CASE("budget exhaustion is a capability error", "[homology]")
{
    HomologyOptions tight;
    tight.budget = 1000;
    CHECK_THROWS_AS(betti(6, 3, 7, tight), capability_error);
    CHECK_THROWS_AS(betti(3, 1, -1), usage_error);
}
