#pragma once

// Slow, independent reference implementations used to check the library.
// Nothing here calls into the code under test except for plain data types.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <set>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace oracle {

using word = std::uint32_t;
using rat = boost::multiprecision::cpp_rational;
using big = boost::multiprecision::cpp_int;

inline int dist(word a, word b) { return std::popcount(a ^ b); }

/// All subsets of {0,1}^n of diameter <= r with at most cap+1 points, by
/// extending sorted vertex lists one vertex at a time and testing every pair.
inline std::vector<std::vector<std::vector<word>>> vr_simplices(int n, int r, int cap)
{
    std::vector<std::vector<std::vector<word>>> out(static_cast<std::size_t>(cap + 1));
    std::vector<word> cur;
    const word top = word{1} << n;
    auto rec = [&](auto&& self, word start) -> void {
        for (word v = start; v < top; ++v) {
            bool ok = true;
            for (word u : cur) ok = ok && dist(u, v) <= r;
            if (!ok) continue;
            cur.push_back(v);
            out[cur.size() - 1].push_back(cur);
            if (static_cast<int>(cur.size()) <= cap) self(self, v + 1);
            cur.pop_back();
        }
    };
    rec(rec, 0);
    for (auto& d : out) std::sort(d.begin(), d.end());
    return out;
}

/// Same counts by brute force over every subset (n <= 4).
inline std::vector<std::size_t> vr_counts_by_subsets(int n, int r, int cap)
{
    std::vector<std::size_t> counts(static_cast<std::size_t>(cap + 1), 0);
    const std::uint64_t all = std::uint64_t{1} << (1u << n);
    for (std::uint64_t s = 1; s < all; ++s) {
        const int size = std::popcount(s);
        if (size > cap + 1) continue;
        std::vector<word> pts;
        for (word v = 0; v < (word{1} << n); ++v)
            if ((s >> v) & 1) pts.push_back(v);
        bool ok = true;
        for (std::size_t i = 0; i < pts.size() && ok; ++i)
            for (std::size_t j = i + 1; j < pts.size() && ok; ++j) ok = dist(pts[i], pts[j]) <= r;
        if (ok) ++counts[static_cast<std::size_t>(size - 1)];
    }
    return counts;
}

/// Rank over Z/p of a dense matrix by Gaussian elimination.
inline std::size_t dense_rank(std::vector<std::vector<int>> m, int p)
{
    if (m.empty()) return 0;
    const std::size_t rows = m.size(), cols = m.front().size();
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t piv = rank;
        while (piv < rows && ((m[piv][c] % p) + p) % p == 0) ++piv;
        if (piv == rows) continue;
        std::swap(m[piv], m[rank]);
        int inv = 1;
        const int a = ((m[rank][c] % p) + p) % p;
        while (a * inv % p != 1) ++inv;
        for (auto& v : m[rank]) v = ((v * inv) % p + p) % p;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == rank) continue;
            const int f = ((m[i][c] % p) + p) % p;
            if (!f) continue;
            for (std::size_t j = 0; j < cols; ++j) m[i][j] = ((m[i][j] - f * m[rank][j]) % p + p) % p;
        }
        ++rank;
    }
    return rank;
}

/// Dense boundary matrix from dimension q to q-1 (rows: (q-1)-simplices).
inline std::vector<std::vector<int>> boundary_matrix(const std::vector<std::vector<word>>& lower,
                                                     const std::vector<std::vector<word>>& upper)
{
    std::vector<std::vector<int>> m(lower.size(), std::vector<int>(upper.size(), 0));
    for (std::size_t j = 0; j < upper.size(); ++j)
        for (std::size_t drop = 0; drop < upper[j].size(); ++drop) {
            std::vector<word> f;
            for (std::size_t k = 0; k < upper[j].size(); ++k)
                if (k != drop) f.push_back(upper[j][k]);
            const auto it = std::lower_bound(lower.begin(), lower.end(), f);
            m[static_cast<std::size_t>(it - lower.begin())][j] = (drop % 2 == 0) ? 1 : -1;
        }
    return m;
}

/// beta_q of VR(Q_n; r) over Z/p from dense ranks.
inline std::size_t betti(int n, int r, int q, int p)
{
    const auto s = vr_simplices(n, r, q + 1);
    const std::size_t count = s[static_cast<std::size_t>(q)].size();
    std::size_t rank_q = 0, rank_up = 0;
    if (q > 0 && count) rank_q = dense_rank(boundary_matrix(s[q - 1], s[q]), p);
    if (!s[q + 1].empty()) rank_up = dense_rank(boundary_matrix(s[q], s[q + 1]), p);
    return count - rank_q - rank_up;
}

/// Determinant by Leibniz expansion (tiny matrices only).
inline rat leibniz_det(const std::vector<std::vector<rat>>& m)
{
    const std::size_t d = m.size();
    std::vector<std::size_t> perm(d);
    std::iota(perm.begin(), perm.end(), 0);
    rat total = 0;
    do {
        int inversions = 0;
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = i + 1; j < d; ++j)
                if (perm[i] > perm[j]) ++inversions;
        rat term = inversions % 2 ? -1 : 1;
        for (std::size_t i = 0; i < d; ++i) term *= m[i][perm[i]];
        total += term;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return total;
}

/// Solves the square system a x = b exactly; empty when singular.
inline std::vector<rat> solve_square(std::vector<std::vector<rat>> a, std::vector<rat> b)
{
    const std::size_t d = a.size();
    for (std::size_t c = 0; c < d; ++c) {
        std::size_t piv = c;
        while (piv < d && a[piv][c] == 0) ++piv;
        if (piv == d) return {};
        std::swap(a[piv], a[c]);
        std::swap(b[piv], b[c]);
        for (std::size_t i = 0; i < d; ++i) {
            if (i == c || a[i][c] == 0) continue;
            const rat f = a[i][c] / a[c][c];
            for (std::size_t j = c; j < d; ++j) a[i][j] -= f * a[c][j];
            b[i] -= f * b[c];
        }
    }
    std::vector<rat> x(d);
    for (std::size_t i = 0; i < d; ++i) x[i] = b[i] / a[i][i];
    return x;
}

/// Whether the center of [0,1]^n lies in the convex hull of pts. By
/// Caratheodory it suffices to find n+1 points (with repetition allowed via
/// smaller subsets) whose barycentric solution is nonnegative; we try every
/// subset of size <= n+1 and solve the normal system restricted to it.
inline bool center_in_hull(const std::vector<word>& pts, int n)
{
    const std::size_t k = pts.size();
    const std::size_t limit = std::min<std::size_t>(k, static_cast<std::size_t>(n) + 1);
    std::vector<std::size_t> idx;
    auto coord = [&](word w, int i) { return rat((w >> i) & 1); };
    // try subsets in increasing size; a subset is usable when its points are
    // affinely independent, which makes the barycentric coordinates unique
    for (std::size_t size = 1; size <= limit; ++size) {
        std::vector<bool> pick(k, false);
        std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(size), true);
        do {
            idx.clear();
            for (std::size_t i = 0; i < k; ++i)
                if (pick[i]) idx.push_back(i);
            // normal equations M^T M l = M^T z, M having columns (point, 1)
            std::vector<std::vector<rat>> mt_m(size, std::vector<rat>(size));
            std::vector<rat> mt_z(size);
            for (std::size_t a = 0; a < size; ++a) {
                for (std::size_t b = 0; b < size; ++b) {
                    rat s = 1;
                    for (int i = 0; i < n; ++i) s += coord(pts[idx[a]], i) * coord(pts[idx[b]], i);
                    mt_m[a][b] = s;
                }
                rat s = 1;
                for (int i = 0; i < n; ++i) s += coord(pts[idx[a]], i) * rat(1, 2);
                mt_z[a] = s;
            }
            const auto l = solve_square(mt_m, mt_z);
            if (l.empty()) continue;
            bool good = true;
            rat sum = 0;
            for (const auto& v : l) {
                good = good && v >= 0;
                sum += v;
            }
            if (!good || sum != 1) continue;
            for (int i = 0; i < n && good; ++i) {
                rat x = 0;
                for (std::size_t a = 0; a < size; ++a) x += l[a] * coord(pts[idx[a]], i);
                good = x == rat(1, 2);
            }
            if (good) return true;
        } while (std::prev_permutation(pick.begin(), pick.end()));
    }
    return false;
}

/// Center coverage by trying every subset through the origin of the radius-r ball.
inline bool center_coverable(int n, int r)
{
    std::vector<word> ball;
    for (word w = 1; w < (word{1} << n); ++w)
        if (std::popcount(w) <= r) ball.push_back(w);
    const std::uint64_t subsets = std::uint64_t{1} << ball.size();
    for (std::uint64_t s = 0; s < subsets; ++s) {
        std::vector<word> pts{0};
        for (std::size_t i = 0; i < ball.size(); ++i)
            if ((s >> i) & 1) pts.push_back(ball[i]);
        bool ok = true;
        for (std::size_t i = 0; i < pts.size() && ok; ++i)
            for (std::size_t j = i + 1; j < pts.size() && ok; ++j) ok = dist(pts[i], pts[j]) <= r;
        if (ok && center_in_hull(pts, n)) return true;
    }
    return false;
}

inline big binom(int n, int k)
{
    if (k < 0 || k > n) return 0;
    big num = 1, den = 1;
    for (int i = 0; i < k; ++i) {
        num *= n - i;
        den *= i + 1;
    }
    return num / den;
}

} // namespace oracle
