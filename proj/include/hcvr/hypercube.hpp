#pragma once

// The metric space Q_n = {0,1}^n with the Hamming metric, and the maps on it:
// antipodes, subcube embeddings and projections, cubic hulls, concentrations.
//
// Coordinate i (1-based) of a point is bit i-1 of its word. Binary strings
// are written coordinate 1 first, so "011" is the point (0,1,1) = word 0b110.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <thread>
#include <utility>
#include <vector>

#include "hcvr/errors.hpp"

namespace hcvr {

using word_t = std::uint32_t;

inline constexpr int max_dimension = 24;

inline void check_dimension(int n)
{
    if (n < 1 || n > max_dimension)
        throw usage_error("cube dimension must lie in [1, " + std::to_string(max_dimension) +
                          "], got " + std::to_string(n));
}

inline constexpr word_t full_mask(int n) { return n >= 32 ? ~word_t{0} : (word_t{1} << n) - 1; }

inline int popcount(word_t w) { return std::popcount(w); }

/// A point of Q_n.
class Vertex {
public:
    Vertex(word_t bits, int n) : bits_(bits), n_(n)
    {
        check_dimension(n);
        if ((bits & ~full_mask(n)) != 0)
            throw usage_error("vertex bits exceed dimension " + std::to_string(n));
    }

    /// Parses a binary string, coordinate 1 first.
    static Vertex parse(std::string_view s)
    {
        word_t bits = 0;
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (s[i] == '1')
                bits |= word_t{1} << i;
            else if (s[i] != '0')
                throw usage_error("binary string may contain only 0 and 1: " + std::string(s));
        }
        return Vertex(bits, static_cast<int>(s.size()));
    }

    word_t bits() const { return bits_; }
    int n() const { return n_; }
    bool coordinate(int i) const { return (bits_ >> (i - 1)) & 1u; }

    std::string str() const { return to_binary(bits_, n_); }

    static std::string to_binary(word_t bits, int n)
    {
        std::string s(static_cast<std::size_t>(n), '0');
        for (int i = 0; i < n; ++i)
            if ((bits >> i) & 1u) s[static_cast<std::size_t>(i)] = '1';
        return s;
    }

    friend bool operator==(const Vertex&, const Vertex&) = default;
    friend auto operator<=>(const Vertex& a, const Vertex& b)
    {
        if (auto c = a.n_ <=> b.n_; c != 0) return c;
        return a.bits_ <=> b.bits_;
    }

private:
    word_t bits_;
    int n_;
};

inline int distance(const Vertex& u, const Vertex& v)
{
    if (u.n() != v.n())
        throw usage_error("distance between vertices of different dimensions");
    return popcount(u.bits() ^ v.bits());
}

inline Vertex antipode(const Vertex& u) { return Vertex(~u.bits() & full_mask(u.n()), u.n()); }

/// Distinct points of one Q_n, kept strictly increasing by bits.
class VertexSet {
public:
    VertexSet(int n, std::vector<word_t> members) : n_(n), members_(std::move(members))
    {
        check_dimension(n);
        std::sort(members_.begin(), members_.end());
        members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
        for (word_t w : members_)
            if ((w & ~full_mask(n)) != 0)
                throw usage_error("vertex set member exceeds dimension " + std::to_string(n));
    }

    VertexSet(const std::vector<Vertex>& vs) : VertexSet(common_dimension(vs), words_of(vs)) {}

    static VertexSet parse(const std::vector<std::string>& strings)
    {
        std::vector<Vertex> vs;
        for (const auto& s : strings) vs.push_back(Vertex::parse(s));
        return VertexSet(vs);
    }

    static VertexSet whole_cube(int n)
    {
        check_dimension(n);
        std::vector<word_t> all(std::size_t{1} << n);
        for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<word_t>(i);
        return VertexSet(n, std::move(all));
    }

    int n() const { return n_; }
    std::size_t size() const { return members_.size(); }
    bool empty() const { return members_.empty(); }
    const std::vector<word_t>& words() const { return members_; }
    Vertex operator[](std::size_t i) const { return Vertex(members_[i], n_); }
    bool contains(word_t w) const { return std::binary_search(members_.begin(), members_.end(), w); }
    bool contains(const Vertex& v) const { return v.n() == n_ && contains(v.bits()); }

    friend bool operator==(const VertexSet&, const VertexSet&) = default;

private:
    static int common_dimension(const std::vector<Vertex>& vs)
    {
        if (vs.empty()) throw usage_error("cannot infer dimension of an empty vertex list");
        for (const auto& v : vs)
            if (v.n() != vs.front().n()) throw usage_error("vertices of mixed dimensions");
        return vs.front().n();
    }
    static std::vector<word_t> words_of(const std::vector<Vertex>& vs)
    {
        std::vector<word_t> w;
        w.reserve(vs.size());
        for (const auto& v : vs) w.push_back(v.bits());
        return w;
    }

    int n_;
    std::vector<word_t> members_;
};

inline int diameter(const VertexSet& a)
{
    if (a.empty()) throw usage_error("diameter of an empty set");
    int d = 0;
    const auto& w = a.words();
    for (std::size_t i = 0; i < w.size(); ++i)
        for (std::size_t j = i + 1; j < w.size(); ++j) d = std::max(d, popcount(w[i] ^ w[j]));
    return d;
}

inline int local_diameter(const VertexSet& a, const Vertex& at)
{
    if (a.empty()) throw usage_error("local diameter of an empty set");
    if (!a.contains(at)) throw usage_error("local diameter taken at a point outside the set");
    int d = 0;
    for (word_t w : a.words()) d = std::max(d, popcount(w ^ at.bits()));
    return d;
}

// -- subcubes -----------------------------------------------------------------

/// Isometric copy Q_p^b of Q_p inside Q_n: free coordinates `coords`, the
/// remaining coordinates fixed to `offset`. Coordinate order is retained.
class SubcubeEmbedding {
public:
    SubcubeEmbedding(int n, word_t coords, word_t offset) : n_(n), coords_(coords), offset_(offset)
    {
        check_dimension(n);
        if ((coords & ~full_mask(n)) != 0 || (offset & ~full_mask(n)) != 0)
            throw usage_error("subcube masks exceed dimension " + std::to_string(n));
        if ((coords & offset) != 0)
            throw usage_error("subcube offset must vanish on the free coordinates");
        if (coords == 0)
            throw usage_error("subcube needs at least one free coordinate");
    }

    /// The 0-dimensional subcube {point}. Only produced by cubic_hull of a singleton.
    static SubcubeEmbedding point(int n, word_t at)
    {
        SubcubeEmbedding e(n, 1, 0);
        e.coords_ = 0;
        e.offset_ = at;
        return e;
    }

    int n() const { return n_; }
    int dim() const { return popcount(coords_); }
    word_t coords() const { return coords_; }
    word_t offset() const { return offset_; }
    bool degenerate() const { return coords_ == 0; }
    bool contains(word_t w) const { return (w & ~coords_) == offset_; }

    std::vector<word_t> members() const
    {
        std::vector<word_t> out;
        out.reserve(std::size_t{1} << dim());
        // Enumerate submasks of coords in increasing numeric order.
        word_t sub = 0;
        do {
            out.push_back(sub | offset_);
            sub = (sub - coords_) & coords_;
        } while (sub != 0);
        std::sort(out.begin(), out.end());
        return out;
    }

    friend bool operator==(const SubcubeEmbedding&, const SubcubeEmbedding&) = default;

private:
    int n_;
    word_t coords_;
    word_t offset_;
};

/// Scatter the p bits of x onto the free coordinates of e (in order), fill the offset elsewhere.
inline word_t scatter_bits(word_t x, word_t mask)
{
    word_t out = 0;
    for (word_t m = mask; m != 0; m &= m - 1) {
        if (x & 1u) out |= m & (~m + 1);
        x >>= 1;
    }
    return out;
}

/// Gather the bits of y at positions in mask into a compact word.
inline word_t gather_bits(word_t y, word_t mask)
{
    word_t out = 0;
    int k = 0;
    for (word_t m = mask; m != 0; m &= m - 1, ++k)
        if (y & m & (~m + 1)) out |= word_t{1} << k;
    return out;
}

inline Vertex embed(const SubcubeEmbedding& e, const Vertex& x)
{
    if (e.degenerate()) throw usage_error("cannot embed through a 0-dimensional subcube");
    if (x.n() != e.dim())
        throw usage_error("embedded point must live in Q_" + std::to_string(e.dim()));
    return Vertex(scatter_bits(x.bits(), e.coords()) | e.offset(), e.n());
}

/// pi_S: keep the coordinates in S, in order.
inline Vertex project(word_t coords, const Vertex& y)
{
    if (coords == 0 || (coords & ~full_mask(y.n())) != 0)
        throw usage_error("projection mask must be a nonempty subset of the coordinates");
    return Vertex(gather_bits(y.bits(), coords), popcount(coords));
}

/// pi_S^b = embed o project.
inline Vertex project_onto(const SubcubeEmbedding& e, const Vertex& y)
{
    if (y.n() != e.n()) throw usage_error("projected point has the wrong dimension");
    return Vertex((y.bits() & e.coords()) | e.offset(), e.n());
}

/// Smallest subcube containing b. A singleton yields a degenerate (0-dimensional) subcube.
inline SubcubeEmbedding cubic_hull(const VertexSet& b)
{
    if (b.empty()) throw usage_error("cubic hull of an empty set");
    const word_t first = b.words().front();
    word_t varying = 0;
    for (word_t w : b.words()) varying |= w ^ first;
    if (varying == 0) return SubcubeEmbedding::point(b.n(), first);
    return SubcubeEmbedding(b.n(), varying, first & ~varying);
}

/// All p-dimensional subcubes of Q_n: coordinate masks in increasing order,
/// offsets in increasing order within each mask. There are C(n,p) 2^(n-p).
inline std::vector<SubcubeEmbedding> all_subcubes(int n, int p)
{
    check_dimension(n);
    if (p < 1 || p > n) throw usage_error("subcube dimension must lie in [1, n]");
    std::vector<SubcubeEmbedding> out;
    const word_t all = full_mask(n);
    for (word_t s = 0; s <= all; ++s) {
        if (popcount(s) != p) continue;
        const word_t rest = all & ~s;
        word_t sub = 0;
        std::vector<word_t> offsets;
        do {
            offsets.push_back(sub);
            sub = (sub - rest) & rest;
        } while (sub != 0);
        std::sort(offsets.begin(), offsets.end());
        for (word_t b : offsets) out.emplace_back(n, s, b);
        if (s == all) break;
    }
    return out;
}

// -- concentrations -------------------------------------------------------------

/// Concentration Q_n -> C = {0,1}^k x {a}: identity on C, elsewhere keep
/// coordinates 1..k-1, pin coordinate k to `pivot_value`, and set the tail to a.
struct ConcentrationSpec {
    int n;
    int k;
    word_t tail;            // values a_{k+1..n}, stored at bits k..n-1
    bool pivot_value = true;

    ConcentrationSpec(int n_, int k_, word_t tail_, bool pivot = true)
        : n(n_), k(k_), tail(tail_), pivot_value(pivot)
    {
        check_dimension(n);
        if (k < 1 || k >= n) throw usage_error("concentration needs 1 <= k < n");
        if ((tail & ~(full_mask(n) & ~full_mask(k))) != 0)
            throw usage_error("concentration tail must live on coordinates k+1..n");
    }

    /// Tail given as the values a_{k+1}, ..., a_n.
    static ConcentrationSpec from_values(int n, int k, const std::vector<int>& a, bool pivot = true)
    {
        if (static_cast<int>(a.size()) != n - k)
            throw usage_error("concentration tail needs n-k values");
        word_t tail = 0;
        for (std::size_t i = 0; i < a.size(); ++i)
            if (a[i]) tail |= word_t{1} << (k + static_cast<int>(i));
        return ConcentrationSpec(n, k, tail, pivot);
    }

    SubcubeEmbedding target() const { return SubcubeEmbedding(n, full_mask(k), tail); }
};

inline Vertex concentrate(const ConcentrationSpec& c, const Vertex& x)
{
    if (x.n() != c.n) throw usage_error("concentrated point has the wrong dimension");
    const word_t head = full_mask(c.k);
    if ((x.bits() & ~head) == c.tail) return x;
    const word_t pivot = word_t{1} << (c.k - 1);
    word_t out = (x.bits() & full_mask(c.k - 1)) | c.tail;
    if (c.pivot_value) out |= pivot;
    return Vertex(out, c.n);
}

// -- contraction verification ----------------------------------------------------

inline constexpr int max_exhaustive_dimension = 14;

struct ContractionReport {
    bool ok = true;
    std::string reason;
    std::optional<std::pair<word_t, word_t>> witness; // violating pair or non-fixed point
};

/// Exhaustive check that `map` restricts to the identity on `fixed` and is
/// 1-Lipschitz on all ordered pairs of Q_n. The pair scan may be split across
/// `threads` workers; the first violation in scan order is reported.
inline ContractionReport check_contraction(const std::function<Vertex(const Vertex&)>& map, int n,
                                           const VertexSet& fixed, unsigned threads = 1)
{
    check_dimension(n);
    if (n > max_exhaustive_dimension)
        throw capability_error("exhaustive contraction check is capped at n = " +
                               std::to_string(max_exhaustive_dimension));
    if (fixed.n() != n) throw usage_error("fixed subspace lives in a different cube");

    const std::size_t size = std::size_t{1} << n;
    std::vector<word_t> image(size);
    for (std::size_t x = 0; x < size; ++x) {
        Vertex fx = map(Vertex(static_cast<word_t>(x), n));
        if (fx.n() != n) throw usage_error("map changes the cube dimension");
        image[x] = fx.bits();
    }

    ContractionReport report;
    for (word_t a : fixed.words())
        if (image[a] != a) {
            report.ok = false;
            report.reason = "map moves the fixed point " + Vertex::to_binary(a, n);
            report.witness = std::pair{a, a};
            return report;
        }

    threads = std::max(1u, threads);
    std::vector<std::optional<std::pair<word_t, word_t>>> found(threads);
    auto scan = [&](unsigned t) {
        for (std::size_t x = t; x < size; x += threads)
            for (std::size_t y = 0; y < size; ++y)
                if (popcount(image[x] ^ image[y]) > popcount(static_cast<word_t>(x ^ y))) {
                    found[t] = std::pair{static_cast<word_t>(x), static_cast<word_t>(y)};
                    return;
                }
    };
    if (threads == 1) {
        scan(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(scan, t);
        for (auto& th : pool) th.join();
    }
    std::optional<std::pair<word_t, word_t>> first;
    for (const auto& f : found)
        if (f && (!first || *f < *first)) first = f;
    if (first) {
        report.ok = false;
        report.witness = first;
        report.reason = "distance grows on the pair (" + Vertex::to_binary(first->first, n) + ", " +
                        Vertex::to_binary(first->second, n) + ")";
    }
    return report;
}

inline bool verify_contraction(const std::function<Vertex(const Vertex&)>& map, int n,
                               const VertexSet& fixed, unsigned threads = 1)
{
    return check_contraction(map, n, fixed, threads).ok;
}

} // namespace hcvr
