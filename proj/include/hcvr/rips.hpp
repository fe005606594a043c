#pragma once

// Vietoris-Rips complexes VR(Q_n; r) (closed convention, diameter <= r),
// enumerated up to a dimension cap.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "hcvr/errors.hpp"
#include "hcvr/hypercube.hpp"

namespace hcvr {

/// Default cap on stored vertex entries (= boundary column entries) of a skeleton.
inline constexpr std::uint64_t default_budget = 200'000'000;

/// Budget from HCVR_BUDGET if set, else the default.
inline std::uint64_t budget_from_environment()
{
    if (const char* env = std::getenv("HCVR_BUDGET")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return v;
    }
    return default_budget;
}

/// A simplex: strictly increasing vertex words.
class Simplex {
public:
    Simplex() = default;
    explicit Simplex(std::vector<word_t> vertices) : v_(std::move(vertices))
    {
        std::sort(v_.begin(), v_.end());
        if (std::adjacent_find(v_.begin(), v_.end()) != v_.end())
            throw usage_error("simplex has a repeated vertex");
    }
    explicit Simplex(const VertexSet& s) : v_(s.words()) {}

    int dim() const { return static_cast<int>(v_.size()) - 1; }
    std::size_t size() const { return v_.size(); }
    const std::vector<word_t>& vertices() const { return v_; }
    std::span<const word_t> span() const { return v_; }
    word_t operator[](std::size_t i) const { return v_[i]; }

    int diameter() const
    {
        int d = 0;
        for (std::size_t i = 0; i < v_.size(); ++i)
            for (std::size_t j = i + 1; j < v_.size(); ++j) d = std::max(d, popcount(v_[i] ^ v_[j]));
        return d;
    }

    /// Face with vertex i removed.
    Simplex face(std::size_t i) const
    {
        Simplex f;
        f.v_.reserve(v_.size() - 1);
        for (std::size_t j = 0; j < v_.size(); ++j)
            if (j != i) f.v_.push_back(v_[j]);
        return f;
    }

    std::string str(int n) const
    {
        std::string s = "{";
        for (std::size_t i = 0; i < v_.size(); ++i) {
            if (i) s += ",";
            s += Vertex::to_binary(v_[i], n);
        }
        return s + "}";
    }

    friend bool operator==(const Simplex&, const Simplex&) = default;
    friend auto operator<=>(const Simplex& a, const Simplex& b)
    {
        if (auto c = a.v_.size() <=> b.v_.size(); c != 0) return c;
        return a.v_ <=> b.v_;
    }

private:
    std::vector<word_t> v_;
};

/// Image of a simplex of Q_p under a subcube embedding.
inline Simplex embed(const SubcubeEmbedding& e, const Simplex& s)
{
    std::vector<word_t> out;
    out.reserve(s.size());
    for (word_t w : s.vertices()) out.push_back(embed(e, Vertex(w, e.dim())).bits());
    return Simplex(std::move(out));
}

struct BuildOptions {
    int dim_floor = 0;                          // lowest stored dimension
    std::uint64_t budget = default_budget;      // max stored vertex entries
    unsigned threads = 1;
};

/// All simplices of VR(Q_n; r) with dim_floor <= dim <= dim_cap, each
/// dimension held as a flat lexicographically sorted array with stride dim+1.
class SkeletonComplex {
public:
    int n() const { return n_; }
    int r() const { return r_; }
    int dim_cap() const { return cap_; }
    int dim_floor() const { return floor_; }

    bool has_dim(int d) const { return d >= floor_ && d <= cap_; }

    std::size_t count(int d) const
    {
        if (!has_dim(d)) return 0;
        return data_[static_cast<std::size_t>(d - floor_)].size() / static_cast<std::size_t>(d + 1);
    }

    std::span<const word_t> simplex(int d, std::size_t i) const
    {
        const auto stride = static_cast<std::size_t>(d + 1);
        return std::span<const word_t>(data_[static_cast<std::size_t>(d - floor_)]).subspan(i * stride, stride);
    }

    Simplex simplex_at(int d, std::size_t i) const
    {
        auto s = simplex(d, i);
        return Simplex(std::vector<word_t>(s.begin(), s.end()));
    }

    /// Position of a simplex in its dimension, if stored.
    std::optional<std::size_t> find(std::span<const word_t> s) const
    {
        const int d = static_cast<int>(s.size()) - 1;
        if (!has_dim(d)) return std::nullopt;
        std::size_t lo = 0, hi = count(d);
        while (lo < hi) {
            const std::size_t mid = lo + (hi - lo) / 2;
            auto m = simplex(d, mid);
            if (std::lexicographical_compare(m.begin(), m.end(), s.begin(), s.end()))
                lo = mid + 1;
            else
                hi = mid;
        }
        if (lo < count(d)) {
            auto m = simplex(d, lo);
            if (std::equal(m.begin(), m.end(), s.begin(), s.end())) return lo;
        }
        return std::nullopt;
    }

    std::optional<std::size_t> find(const Simplex& s) const { return find(s.span()); }

    std::uint64_t entries() const
    {
        std::uint64_t e = 0;
        for (const auto& d : data_) e += d.size();
        return e;
    }

private:
    friend SkeletonComplex build_skeleton(int, int, int, const BuildOptions&);

    int n_ = 0, r_ = 0, cap_ = 0, floor_ = 0;
    std::vector<std::vector<word_t>> data_;
};

namespace detail {

// Words at distance 1..r from the origin, i.e. the radius-r ball minus the centre.
inline std::vector<word_t> ball_offsets(int n, int r)
{
    std::vector<word_t> out;
    const word_t all = full_mask(n);
    if (r >= n) {
        for (word_t m = 1; m <= all && m != 0; ++m) {
            out.push_back(m);
            if (m == all) break;
        }
        return out;
    }
    // Gosper's hack over each weight.
    for (int k = 1; k <= r; ++k) {
        word_t m = (word_t{1} << k) - 1;
        while (m <= all) {
            out.push_back(m);
            const word_t c = m & (~m + 1);
            const word_t next = m + c;
            if (next == 0 || next > all) break;
            m = (((next ^ m) >> 2) / c) | next;
        }
    }
    return out;
}

// Larger-indexed neighbours of `base` within distance r, sorted.
inline std::vector<word_t> forward_ball(word_t base, const std::vector<word_t>& offsets)
{
    std::vector<word_t> out;
    for (word_t m : offsets) {
        const word_t w = base ^ m;
        if (w > base) out.push_back(w);
    }
    std::sort(out.begin(), out.end());
    return out;
}

// Depth-first clique extension. Visits cliques in lexicographic order.
struct CliqueWalker {
    int r;
    int cap;
    std::vector<word_t> stack;
    std::function<bool(const std::vector<word_t>&)> visit; // false aborts

    // Extends the current stack by each candidate in turn; the stack itself
    // has already been visited.
    bool walk(const std::vector<word_t>& candidates)
    {
        std::vector<word_t> next;
        for (std::size_t i = 0; i < candidates.size(); ++i) {
            const word_t v = candidates[i];
            stack.push_back(v);
            bool go = visit(stack);
            if (go && static_cast<int>(stack.size()) <= cap) {
                next.clear();
                for (std::size_t j = i + 1; j < candidates.size(); ++j)
                    if (popcount(v ^ candidates[j]) <= r) next.push_back(candidates[j]);
                go = walk(next);
            }
            stack.pop_back();
            if (!go) return false;
        }
        return true;
    }
};


inline void check_build_args(int n, int r, int dim_cap, const BuildOptions& opt)
{
    check_dimension(n);
    if (r < 0) throw usage_error("scale must be nonnegative");
    if (dim_cap < 0) throw usage_error("dimension cap must be nonnegative");
    if (opt.dim_floor < 0 || opt.dim_floor > dim_cap)
        throw usage_error("dimension floor must lie in [0, dim_cap]");
    if (opt.budget == 0) throw usage_error("budget must be positive");
}

} // namespace detail

/// Per-dimension simplex counts (dims 0..dim_cap). Throws capability_error as
/// soon as the entries in dims [floor, cap] pass the budget, or the walk
/// visits more than 16x the budget in total.
inline std::vector<std::uint64_t> count_simplices(int n, int r, int dim_cap, const BuildOptions& opt = {})
{
    detail::check_build_args(n, r, dim_cap, opt);
    std::vector<std::uint64_t> counts(static_cast<std::size_t>(dim_cap) + 1, 0);
    std::uint64_t stored = 0, visited = 0;
    const std::uint64_t visit_cap = opt.budget > UINT64_MAX / 16 ? UINT64_MAX : opt.budget * 16;
    bool over = false;
    detail::CliqueWalker walker{r, dim_cap, {}, [&](const std::vector<word_t>& s) {
                                    if (s.empty()) return true;
                                    const int d = static_cast<int>(s.size()) - 1;
                                    ++counts[static_cast<std::size_t>(d)];
                                    if (d >= opt.dim_floor) stored += s.size();
                                    if (stored > opt.budget || ++visited > visit_cap) {
                                        over = true;
                                        return false;
                                    }
                                    return true;
                                }};
    const auto offsets = detail::ball_offsets(n, r);
    const word_t top = full_mask(n);
    for (word_t base = 0;; ++base) {
        walker.stack = {base};
        if (!walker.visit(walker.stack)) break;
        if (dim_cap >= 1 && !walker.walk(detail::forward_ball(base, offsets))) break;
        walker.stack.clear();
        if (base == top) break;
    }
    if (over)
        throw capability_error("VR(Q_" + std::to_string(n) + ";" + std::to_string(r) + ") up to dimension " +
                               std::to_string(dim_cap) + " exceeds the simplex budget of " +
                               std::to_string(opt.budget) + " entries");
    return counts;
}

/// Builds the skeleton. Enumeration runs per base vertex over its radius-r
/// ball, extending only by larger vertices; output does not depend on `threads`.
inline SkeletonComplex build_skeleton(int n, int r, int dim_cap, const BuildOptions& opt = {})
{
    const auto counts = count_simplices(n, r, dim_cap, opt);

    SkeletonComplex k;
    k.n_ = n;
    k.r_ = r;
    k.cap_ = dim_cap;
    k.floor_ = opt.dim_floor;
    k.data_.resize(static_cast<std::size_t>(dim_cap - opt.dim_floor + 1));
    for (int d = opt.dim_floor; d <= dim_cap; ++d)
        k.data_[static_cast<std::size_t>(d - opt.dim_floor)].reserve(counts[static_cast<std::size_t>(d)] *
                                                                     static_cast<std::size_t>(d + 1));

    const auto offsets = detail::ball_offsets(n, r);
    const std::size_t nverts = std::size_t{1} << n;
    const unsigned threads = std::max(1u, std::min<unsigned>(opt.threads, static_cast<unsigned>(nverts)));

    using Block = std::vector<std::vector<word_t>>;
    auto run_block = [&](std::size_t lo, std::size_t hi, Block& out) {
        out.assign(k.data_.size(), {});
        detail::CliqueWalker walker{r, dim_cap, {}, [&](const std::vector<word_t>& s) {
                                        const int d = static_cast<int>(s.size()) - 1;
                                        if (d >= opt.dim_floor)
                                            out[static_cast<std::size_t>(d - opt.dim_floor)].insert(
                                                out[static_cast<std::size_t>(d - opt.dim_floor)].end(), s.begin(),
                                                s.end());
                                        return true;
                                    }};
        for (std::size_t b = lo; b < hi; ++b) {
            const auto base = static_cast<word_t>(b);
            walker.stack = {base};
            walker.visit(walker.stack);
            if (dim_cap >= 1) walker.walk(detail::forward_ball(base, offsets));
        }
    };

    if (threads == 1) {
        Block out;
        run_block(0, nverts, out);
        k.data_ = std::move(out);
    } else {
        std::vector<Block> blocks(threads);
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) {
            const std::size_t lo = nverts * t / threads, hi = nverts * (t + 1) / threads;
            pool.emplace_back(run_block, lo, hi, std::ref(blocks[t]));
        }
        for (auto& th : pool) th.join();
        for (auto& b : blocks)
            for (std::size_t d = 0; d < k.data_.size(); ++d)
                k.data_[d].insert(k.data_[d].end(), b[d].begin(), b[d].end());
    }
    return k;
}

inline SkeletonComplex build_skeleton(int n, int r, int dim_cap, std::uint64_t budget)
{
    BuildOptions opt;
    opt.budget = budget;
    return build_skeleton(n, r, dim_cap, opt);
}

/// True iff no vertex of Q_n outside s can join s at scale r.
inline bool is_maximal(int n, int r, const Simplex& s)
{
    check_dimension(n);
    if (s.size() == 0) throw usage_error("empty simplex");
    for (word_t w : s.vertices())
        if ((w & ~full_mask(n)) != 0) throw usage_error("simplex vertex outside Q_" + std::to_string(n));
    if (s.diameter() > r) throw usage_error("not a simplex of VR(Q_n;r): diameter exceeds r");
    const word_t first = s[0];
    if (popcount(full_mask(n)) <= r) return s.size() == (std::size_t{1} << n);
    for (word_t m : detail::ball_offsets(n, r)) {
        const word_t w = first ^ m;
        if (std::binary_search(s.vertices().begin(), s.vertices().end(), w)) continue;
        bool joins = true;
        for (word_t v : s.vertices())
            if (popcount(v ^ w) > r) {
                joins = false;
                break;
            }
        if (joins) return false;
    }
    return true;
}

/// True iff in VR(Q_{r+1}; r) every vertex is adjacent to all others except its antipode.
inline bool cross_polytope_isomorphic(int r)
{
    if (r < 1) throw usage_error("cross-polytope recognition needs r >= 1");
    const int n = r + 1;
    check_dimension(n);
    const word_t all = full_mask(n);
    for (word_t u = 0; u <= all; ++u) {
        for (word_t v = u + 1; v <= all; ++v) {
            const bool adjacent = popcount(u ^ v) <= r;
            const bool antipodal = (u ^ v) == all;
            if (adjacent == antipodal) return false;
        }
        if (u == all) break;
    }
    return true;
}

/// One line per simplex, dimension-major: "<dim> <v0> <v1> ...".
inline void dump_skeleton(std::ostream& os, const SkeletonComplex& k)
{
    for (int d = k.dim_floor(); d <= k.dim_cap(); ++d)
        for (std::size_t i = 0; i < k.count(d); ++i) {
            os << d;
            for (word_t w : k.simplex(d, i)) os << ' ' << Vertex::to_binary(w, k.n());
            os << '\n';
        }
}

} // namespace hcvr
