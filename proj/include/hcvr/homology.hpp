#pragma once

// Betti numbers of VR(Q_n; r) over Z/p and ranks of maps on homology
// induced by subcube inclusions and by scale inclusions.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "hcvr/errors.hpp"
#include "hcvr/hypercube.hpp"
#include "hcvr/reduction.hpp"
#include "hcvr/rips.hpp"

namespace hcvr {

// -- chains ----------------------------------------------------------------------

struct chain_tag {};
struct cochain_tag {};

/// Finitely supported field-valued function on q-simplices. Terms are kept
/// sorted by simplex with nonzero coefficients.
template <class Tag>
class BasicChain {
public:
    BasicChain() = default;
    explicit BasicChain(int dim) : dim_(dim) {}

    /// Sums the given terms, reducing coefficients in `field`.
    static BasicChain from_terms(int dim, std::vector<std::pair<Simplex, long long>> terms, const PrimeField& field)
    {
        BasicChain c(dim);
        std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        for (std::size_t i = 0; i < terms.size();) {
            if (terms[i].first.dim() != dim) throw usage_error("chain term has the wrong dimension");
            long long sum = 0;
            std::size_t j = i;
            for (; j < terms.size() && terms[j].first == terms[i].first; ++j) sum += terms[j].second;
            const coeff_t v = field.reduce(sum);
            if (v != 0) {
                c.simplices_.push_back(terms[i].first);
                c.coefs_.push_back(v);
            }
            i = j;
        }
        return c;
    }

    /// Indicator of a single simplex.
    static BasicChain indicator(const Simplex& s)
    {
        BasicChain c(s.dim());
        c.simplices_.push_back(s);
        c.coefs_.push_back(1);
        return c;
    }

    int dim() const { return dim_; }
    std::size_t support_size() const { return simplices_.size(); }
    bool empty() const { return simplices_.empty(); }
    const std::vector<Simplex>& simplices() const { return simplices_; }
    const std::vector<coeff_t>& coefs() const { return coefs_; }

    coeff_t coefficient(const Simplex& s) const
    {
        auto it = std::lower_bound(simplices_.begin(), simplices_.end(), s);
        if (it == simplices_.end() || !(*it == s)) return 0;
        return coefs_[static_cast<std::size_t>(it - simplices_.begin())];
    }

    friend bool operator==(const BasicChain&, const BasicChain&) = default;

private:
    int dim_ = 0;
    std::vector<Simplex> simplices_;
    std::vector<coeff_t> coefs_;
};

using Chain = BasicChain<chain_tag>;
using Cochain = BasicChain<cochain_tag>;

inline coeff_t face_sign(std::size_t i, const PrimeField& f) { return (i % 2 == 0) ? coeff_t{1} : f.neg(1); }

/// Simplicial boundary, computed directly from the terms.
inline Chain boundary(const Chain& c, const PrimeField& field)
{
    if (c.dim() == 0) return Chain(-1);
    std::vector<std::pair<Simplex, long long>> terms;
    for (std::size_t t = 0; t < c.support_size(); ++t) {
        const Simplex& s = c.simplices()[t];
        for (std::size_t i = 0; i < s.size(); ++i)
            terms.emplace_back(s.face(i), static_cast<long long>(field.mul(face_sign(i, field), c.coefs()[t])));
    }
    return Chain::from_terms(c.dim() - 1, std::move(terms), field);
}

inline Chain embed(const SubcubeEmbedding& e, const Chain& c)
{
    // The embedding is injective and keeps vertex order, so terms map one to one.
    std::vector<std::pair<Simplex, long long>> terms;
    for (std::size_t t = 0; t < c.support_size(); ++t) terms.emplace_back(embed(e, c.simplices()[t]), c.coefs()[t]);
    return Chain::from_terms(c.dim(), std::move(terms), PrimeField(251));
}

/// Sum over simplices of omega(s) * alpha(s).
inline coeff_t pair(const Cochain& omega, const Chain& alpha, const PrimeField& field)
{
    if (omega.dim() != alpha.dim()) throw usage_error("pairing a cochain and a chain of different dimensions");
    coeff_t acc = 0;
    std::size_t i = 0, j = 0;
    while (i < omega.support_size() && j < alpha.support_size()) {
        if (omega.simplices()[i] < alpha.simplices()[j])
            ++i;
        else if (alpha.simplices()[j] < omega.simplices()[i])
            ++j;
        else {
            acc = field.add(acc, field.mul(omega.coefs()[i], alpha.coefs()[j]));
            ++i;
            ++j;
        }
    }
    return acc;
}

// -- boundary matrices -------------------------------------------------------------

/// Column i of the boundary matrix in dimension q (rows index (q-1)-simplices).
inline SparseColumn boundary_column(const SkeletonComplex& k, int q, std::size_t i, const PrimeField& field)
{
    SparseColumn col;
    auto s = k.simplex(q, i);
    std::vector<word_t> face(static_cast<std::size_t>(q));
    std::vector<std::pair<std::uint32_t, coeff_t>> entries;
    entries.reserve(s.size());
    for (std::size_t drop = 0; drop < s.size(); ++drop) {
        std::size_t at = 0;
        for (std::size_t j = 0; j < s.size(); ++j)
            if (j != drop) face[at++] = s[j];
        auto row = k.find(face);
        if (!row) throw usage_error("skeleton is not closed under faces");
        entries.emplace_back(static_cast<std::uint32_t>(*row), face_sign(drop, field));
    }
    std::sort(entries.begin(), entries.end());
    for (auto& [row, c] : entries) {
        col.rows.push_back(row);
        if (!field.binary()) col.coefs.push_back(c);
    }
    return col;
}

/// A chain as a column over the q-simplices of the skeleton.
inline SparseColumn to_column(const SkeletonComplex& k, const Chain& c, const PrimeField& field)
{
    std::vector<std::pair<std::uint32_t, coeff_t>> entries;
    for (std::size_t t = 0; t < c.support_size(); ++t) {
        auto row = k.find(c.simplices()[t]);
        if (!row) throw usage_error("chain term " + c.simplices()[t].str(k.n()) + " is not in the complex");
        entries.emplace_back(static_cast<std::uint32_t>(*row), c.coefs()[t]);
    }
    std::sort(entries.begin(), entries.end());
    SparseColumn col;
    for (auto& [row, v] : entries) {
        col.rows.push_back(row);
        if (!field.binary()) col.coefs.push_back(v);
    }
    return col;
}

inline Chain from_column(const SkeletonComplex& k, int q, const SparseColumn& col, const PrimeField& field)
{
    std::vector<std::pair<Simplex, long long>> terms;
    for (std::size_t i = 0; i < col.rows.size(); ++i) terms.emplace_back(k.simplex_at(q, col.rows[i]), col.coef(i));
    return Chain::from_terms(q, std::move(terms), field);
}

struct HomologyOptions {
    PrimeField field{2};
    std::uint64_t budget = default_budget;
    unsigned threads = 1;
    std::function<void(const std::string&)> progress; // periodic status, optional
};

namespace detail {

inline void report(const HomologyOptions& opt, const std::string& msg)
{
    if (opt.progress) opt.progress(msg);
}

// Reduces the boundary matrix in dimension q, skipping `cleared` columns.
inline PivotReducer reduce_boundary(const SkeletonComplex& k, int q, const HomologyOptions& opt,
                                    const std::vector<std::uint32_t>& cleared = {})
{
    PivotReducer red(k.count(q - 1), opt.field);
    std::vector<bool> skip(k.count(q), false);
    for (auto c : cleared) skip[c] = true;
    const std::size_t cols = k.count(q);
    for (std::size_t i = 0; i < cols; ++i) {
        if (skip[i]) continue;
        red.insert(boundary_column(k, q, i, opt.field), static_cast<std::uint32_t>(i));
        if (opt.progress && (i & 0x3fff) == 0x3fff)
            report(opt, "reduced " + std::to_string(i + 1) + "/" + std::to_string(cols) + " columns of d_" +
                            std::to_string(q));
    }
    return red;
}

inline void require_dims(const SkeletonComplex& k, int lo, int hi)
{
    for (int d = std::max(lo, 0); d <= hi; ++d)
        if (!k.has_dim(d)) throw usage_error("skeleton lacks dimension " + std::to_string(d));
}

} // namespace detail

/// Rank of the boundary map in dimension q.
inline std::size_t boundary_rank(const SkeletonComplex& k, int q, const PrimeField& field = PrimeField(2))
{
    if (q <= 0) {
        detail::require_dims(k, 0, 0);
        return 0;
    }
    detail::require_dims(k, q - 1, q);
    HomologyOptions opt;
    opt.field = field;
    return detail::reduce_boundary(k, q, opt).rank();
}

/// Checks the boundary of every boundary column of dimension q vanishes.
inline bool boundary_squares_to_zero(const SkeletonComplex& k, int q, const PrimeField& field = PrimeField(2))
{
    if (q < 2) return true;
    detail::require_dims(k, q - 2, q);
    DenseColumn acc(k.count(q - 2));
    for (std::size_t i = 0; i < k.count(q); ++i) {
        SparseColumn col = boundary_column(k, q, i, field);
        for (std::size_t t = 0; t < col.rows.size(); ++t)
            acc.add(boundary_column(k, q - 1, col.rows[t], field), col.coef(t), field);
        if (acc.low() >= 0) return false;
    }
    return true;
}

// -- Betti numbers -----------------------------------------------------------------

struct BettiResult {
    int n = 0, r = 0, q = 0;
    unsigned field = 2;
    std::uint64_t betti = 0;
    std::uint64_t count_below = 0, count_at = 0, count_above = 0; // simplices in dims q-1, q, q+1
    std::uint64_t rank_q = 0, rank_above = 0;                     // ranks of d_q and d_{q+1}
    double millis = 0;
};

/// Betti numbers for q_lo..q_hi sharing one skeleton. Reduction runs from the
/// top dimension down, clearing columns paired in the dimension above.
inline std::vector<BettiResult> betti_range(int n, int r, int q_lo, int q_hi, const HomologyOptions& opt = {})
{
    if (q_lo < 0 || q_hi < q_lo) throw usage_error("homology dimensions must satisfy 0 <= q_lo <= q_hi");
    const auto start = std::chrono::steady_clock::now();
    BuildOptions bo;
    bo.dim_floor = std::max(q_lo - 1, 0);
    bo.budget = opt.budget;
    bo.threads = opt.threads;
    detail::report(opt, "building VR(Q_" + std::to_string(n) + ";" + std::to_string(r) + ") in dims " +
                            std::to_string(bo.dim_floor) + ".." + std::to_string(q_hi + 1));
    const SkeletonComplex k = build_skeleton(n, r, q_hi + 1, bo);

    // rank[d] = rank of d_d for d in [q_lo, q_hi + 1]
    std::map<int, std::size_t> rank;
    std::vector<std::uint32_t> cleared;
    for (int d = q_hi + 1; d >= q_lo; --d) {
        if (d == 0) {
            rank[0] = 0;
            break;
        }
        PivotReducer red = detail::reduce_boundary(k, d, opt, cleared);
        rank[d] = red.rank();
        cleared = red.pivot_rows();
    }
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

    std::vector<BettiResult> out;
    for (int q = q_lo; q <= q_hi; ++q) {
        BettiResult b;
        b.n = n;
        b.r = r;
        b.q = q;
        b.field = opt.field.modulus();
        b.count_below = q > 0 ? k.count(q - 1) : 0;
        b.count_at = k.count(q);
        b.count_above = k.count(q + 1);
        b.rank_q = rank[q];
        b.rank_above = rank[q + 1];
        b.betti = b.count_at - b.rank_q - b.rank_above;
        b.millis = ms;
        out.push_back(b);
    }
    return out;
}

/// Betti number beta_q (unreduced) of VR(Q_n; r) over the option's field.
inline BettiResult betti(int n, int r, int q, const HomologyOptions& opt = {})
{
    return betti_range(n, r, q, q, opt).front();
}

// -- cycles modulo boundaries ---------------------------------------------------------

/// Representative cycles of a basis of H_q(VR(Q_n; r)), as chains.
inline std::vector<Chain> homology_basis(int n, int r, int q, const HomologyOptions& opt = {})
{
    if (q < 0) throw usage_error("homology dimension must be nonnegative");
    BuildOptions bo;
    bo.dim_floor = std::max(q - 1, 0);
    bo.budget = opt.budget;
    bo.threads = opt.threads;
    const SkeletonComplex k = build_skeleton(n, r, q + 1, bo);

    std::vector<std::uint32_t> cleared = detail::reduce_boundary(k, q + 1, opt).pivot_rows();
    std::vector<bool> skip(k.count(q), false);
    for (auto c : cleared) skip[c] = true;

    std::vector<Chain> basis;
    if (q == 0) {
        for (std::size_t i = 0; i < k.count(0); ++i)
            if (!skip[i]) basis.push_back(Chain::indicator(k.simplex_at(0, i)));
        return basis;
    }
    PivotReducer red(k.count(q - 1), opt.field, true, k.count(q));
    for (std::size_t i = 0; i < k.count(q); ++i) {
        if (skip[i]) continue;
        auto outcome = red.insert(boundary_column(k, q, i, opt.field), static_cast<std::uint32_t>(i));
        if (!outcome.independent) basis.push_back(from_column(k, q, outcome.combination, opt.field));
    }
    return basis;
}

/// H_q(VR(Q_n; r)) presented as q-cycles modulo boundaries, for measuring
/// how many given cycles are independent in homology.
class CycleQuotient {
public:
    CycleQuotient(int n, int r, int q, const HomologyOptions& opt = {})
        : q_(q), field_(opt.field), skeleton_(make_skeleton(n, r, q, opt)),
          boundaries_(detail::reduce_boundary(skeleton_, q + 1, opt))
    {
        if (q > 0) {
            rank_q_ = detail::reduce_boundary(skeleton_, q, opt, boundaries_.pivot_rows()).rank();
        }
        betti_ = skeleton_.count(q) - rank_q_ - boundaries_.rank();
    }

    int q() const { return q_; }
    const SkeletonComplex& skeleton() const { return skeleton_; }
    std::size_t betti() const { return betti_; }
    std::size_t boundary_rank() const { return boundaries_.rank(); }

    /// Dimension of span(cycles) + B_q modulo B_q. Inputs must be cycles.
    std::size_t image_rank(const std::vector<Chain>& cycles) const
    {
        PivotReducer red = boundaries_;
        std::size_t grown = 0;
        for (const auto& c : cycles) {
            if (c.dim() != q_) throw usage_error("cycle has the wrong dimension");
            if (red.insert(to_column(skeleton_, c, field_)).independent) ++grown;
        }
        return grown;
    }

    bool is_boundary(const Chain& c) const
    {
        PivotReducer red = boundaries_;
        return !red.insert(to_column(skeleton_, c, field_)).independent;
    }

private:
    static SkeletonComplex make_skeleton(int n, int r, int q, const HomologyOptions& opt)
    {
        if (q < 0) throw usage_error("homology dimension must be nonnegative");
        BuildOptions bo;
        bo.dim_floor = std::max(q - 1, 0);
        bo.budget = opt.budget;
        bo.threads = opt.threads;
        return build_skeleton(n, r, q + 1, bo);
    }

    int q_;
    PrimeField field_;
    SkeletonComplex skeleton_;
    PivotReducer boundaries_;
    std::size_t rank_q_ = 0;
    std::size_t betti_ = 0;
};

/// Rank of the map into H_q(VR(Q_n; r)) from the direct sum of H_q over the
/// listed subcubes (all of one dimension), each included isometrically.
inline std::size_t induced_map_rank(const std::vector<SubcubeEmbedding>& subs, int n, int r, int q,
                                    const HomologyOptions& opt = {})
{
    if (subs.empty()) return 0;
    const int p = subs.front().dim();
    for (const auto& e : subs) {
        if (e.n() != n) throw usage_error("subcube lives in a different ambient cube");
        if (e.degenerate() || e.dim() != p) throw usage_error("subcubes must share one positive dimension");
    }
    const auto basis = homology_basis(p, r, q, opt);
    const CycleQuotient target(n, r, q, opt);
    std::vector<Chain> images;
    images.reserve(basis.size() * subs.size());
    for (const auto& e : subs)
        for (const auto& z : basis) images.push_back(embed(e, z));
    return target.image_rank(images);
}

/// rank H_q(VR(Q_n; r)) / im of all (m-1)-subcubes.
inline std::size_t quotient_rank(int n, int r, int q, int m, const HomologyOptions& opt = {})
{
    if (m < 1 || m > n) throw usage_error("quotient level m must lie in [1, n]");
    const CycleQuotient target(n, r, q, opt);
    if (m == 1) return target.betti();
    const auto basis = homology_basis(m - 1, r, q, opt);
    std::vector<Chain> images;
    for (const auto& e : all_subcubes(n, m - 1))
        for (const auto& z : basis) images.push_back(embed(e, z));
    return target.betti() - target.image_rank(images);
}

/// Rank of H_q(VR(Q_n; r)) -> H_q(VR(Q_n; r')) for r <= r'.
inline std::size_t scale_inclusion_rank(int n, int r, int r_prime, int q, const HomologyOptions& opt = {})
{
    if (r < 0 || r_prime < r) throw usage_error("scale inclusion needs 0 <= r <= r'");
    const auto basis = homology_basis(n, r, q, opt);
    const CycleQuotient target(n, r_prime, q, opt);
    return target.image_rank(basis);
}

} // namespace hcvr
