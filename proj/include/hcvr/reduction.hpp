#pragma once

// Column-echelon reduction over a prime field with low-pivot bookkeeping.
// The column being reduced lives in a dense, bit-packed accumulator; stored
// reduced columns are sparse and normalised to pivot coefficient 1.

#include <bit>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "hcvr/errors.hpp"

namespace hcvr {

using coeff_t = std::uint8_t;

/// Z/p for a prime p < 256. p = 2 takes the coefficient-free fast path.
class PrimeField {
public:
    explicit PrimeField(unsigned p = 2) : p_(p)
    {
        if (p < 2 || p > 251 || !is_prime(p))
            throw usage_error("coefficient field must be Z/p for a prime p <= 251, got " + std::to_string(p));
        inv_.assign(p, 0);
        for (unsigned a = 1; a < p; ++a)
            for (unsigned b = 1; b < p; ++b)
                if (a * b % p == 1) inv_[a] = static_cast<coeff_t>(b);
    }

    unsigned modulus() const { return p_; }
    bool binary() const { return p_ == 2; }
    coeff_t add(coeff_t a, coeff_t b) const { return static_cast<coeff_t>((a + b) % p_); }
    coeff_t mul(coeff_t a, coeff_t b) const { return static_cast<coeff_t>(unsigned(a) * b % p_); }
    coeff_t neg(coeff_t a) const { return static_cast<coeff_t>((p_ - a) % p_); }
    coeff_t inv(coeff_t a) const { return inv_[a]; }
    coeff_t reduce(long long v) const
    {
        long long m = v % static_cast<long long>(p_);
        return static_cast<coeff_t>(m < 0 ? m + p_ : m);
    }
    std::string name() const { return "Z/" + std::to_string(p_); }

    friend bool operator==(const PrimeField& a, const PrimeField& b) { return a.p_ == b.p_; }

private:
    static bool is_prime(unsigned p)
    {
        for (unsigned d = 2; d * d <= p; ++d)
            if (p % d == 0) return false;
        return true;
    }

    unsigned p_;
    std::vector<coeff_t> inv_;
};

/// Sparse column: strictly increasing rows. `coefs` is empty over Z/2.
struct SparseColumn {
    std::vector<std::uint32_t> rows;
    std::vector<coeff_t> coefs;

    bool empty() const { return rows.empty(); }
    coeff_t coef(std::size_t i) const { return coefs.empty() ? coeff_t{1} : coefs[i]; }
};

/// Dense accumulator with a two-level occupancy index for fast lowest-pivot lookup.
class DenseColumn {
public:
    explicit DenseColumn(std::size_t size = 0) { resize(size); }

    void resize(std::size_t size)
    {
        size_ = size;
        bits_.assign((size + 63) / 64, 0);
        summary_.assign((bits_.size() + 63) / 64, 0);
        coefs_.clear();
    }

    std::size_t size() const { return size_; }

    void add(const SparseColumn& c, coeff_t scale, const PrimeField& f)
    {
        if (f.binary()) {
            for (std::uint32_t row : c.rows) flip(row);
            return;
        }
        if (coefs_.size() != size_) coefs_.assign(size_, 0);
        for (std::size_t i = 0; i < c.rows.size(); ++i) {
            const std::uint32_t row = c.rows[i];
            const coeff_t v = f.add(coefs_[row], f.mul(scale, c.coef(i)));
            coefs_[row] = v;
            set(row, v != 0);
        }
    }

    /// Largest nonzero row, or -1.
    long long low() const
    {
        for (std::size_t s = summary_.size(); s-- > 0;) {
            if (summary_[s] == 0) continue;
            const std::size_t w = s * 64 + 63 - static_cast<std::size_t>(std::countl_zero(summary_[s]));
            return static_cast<long long>(w * 64 + 63 - static_cast<std::size_t>(std::countl_zero(bits_[w])));
        }
        return -1;
    }

    coeff_t coef(std::size_t row) const { return coefs_.empty() ? coeff_t{1} : coefs_[row]; }

    /// Moves the contents out as a sparse column and clears the accumulator.
    SparseColumn take(const PrimeField& f)
    {
        SparseColumn out;
        for (std::size_t s = 0; s < summary_.size(); ++s) {
            std::uint64_t sw = summary_[s];
            while (sw) {
                const std::size_t w = s * 64 + static_cast<std::size_t>(std::countr_zero(sw));
                sw &= sw - 1;
                std::uint64_t bw = bits_[w];
                while (bw) {
                    const std::size_t row = w * 64 + static_cast<std::size_t>(std::countr_zero(bw));
                    bw &= bw - 1;
                    out.rows.push_back(static_cast<std::uint32_t>(row));
                    if (!f.binary()) {
                        out.coefs.push_back(coefs_[row]);
                        coefs_[row] = 0;
                    }
                }
                bits_[w] = 0;
            }
            summary_[s] = 0;
        }
        return out;
    }

private:
    void flip(std::size_t row)
    {
        const std::size_t w = row >> 6;
        bits_[w] ^= std::uint64_t{1} << (row & 63);
        sync(w);
    }
    void set(std::size_t row, bool on)
    {
        const std::size_t w = row >> 6;
        if (on)
            bits_[w] |= std::uint64_t{1} << (row & 63);
        else
            bits_[w] &= ~(std::uint64_t{1} << (row & 63));
        sync(w);
    }
    void sync(std::size_t w)
    {
        const std::uint64_t bit = std::uint64_t{1} << (w & 63);
        if (bits_[w])
            summary_[w >> 6] |= bit;
        else
            summary_[w >> 6] &= ~bit;
    }

    std::size_t size_ = 0;
    std::vector<std::uint64_t> bits_;
    std::vector<std::uint64_t> summary_;
    std::vector<coeff_t> coefs_;
};

/// Incremental reducer: columns are inserted one at a time and reduced
/// against the pivots seen so far. Optionally tracks, for every inserted
/// column, which combination of inserted columns (by caller id) it became.
class PivotReducer {
public:
    PivotReducer(std::size_t rows, PrimeField field, bool track_combinations = false,
                 std::size_t id_space = 0)
        : field_(std::move(field)), work_(rows), pivot_of_row_(rows, -1), track_(track_combinations)
    {
        if (track_) combo_work_.resize(id_space);
    }

    std::size_t rows() const { return work_.size(); }
    std::size_t rank() const { return stored_.size(); }
    const PrimeField& field() const { return field_; }

    struct Outcome {
        bool independent = false;     // column survived: rank grew by one
        long long pivot = -1;         // its low row when independent
        SparseColumn combination;     // ids whose combination reduced it (tracked mode)
    };

    /// Reduces `col` (tagged with caller id `id`) against stored pivots.
    Outcome insert(const SparseColumn& col, std::uint32_t id = 0)
    {
        Outcome out;
        work_.add(col, 1, field_);
        if (track_) combo_work_.add(unit(id), 1, field_);
        for (long long low = work_.low(); low >= 0; low = work_.low()) {
            const long long k = pivot_of_row_[static_cast<std::size_t>(low)];
            if (k < 0) break;
            const auto ki = static_cast<std::size_t>(k);
            const coeff_t a = work_.coef(static_cast<std::size_t>(low));
            work_.add(stored_[ki], field_.neg(a), field_);
            if (track_) combo_work_.add(stored_combo_[ki], field_.neg(a), field_);
        }
        const long long low = work_.low();
        SparseColumn reduced = work_.take(field_);
        SparseColumn combo = track_ ? combo_work_.take(field_) : SparseColumn{};
        if (low < 0) {
            out.combination = std::move(combo);
            return out;
        }
        // Normalise so the pivot coefficient is 1.
        if (!field_.binary()) {
            const coeff_t s = field_.inv(reduced.coefs.back());
            for (auto& c : reduced.coefs) c = field_.mul(c, s);
            for (auto& c : combo.coefs) c = field_.mul(c, s);
        }
        pivot_of_row_[static_cast<std::size_t>(low)] = static_cast<long long>(stored_.size());
        stored_.push_back(std::move(reduced));
        if (track_) stored_combo_.push_back(std::move(combo));
        out.independent = true;
        out.pivot = low;
        return out;
    }

    bool is_pivot_row(std::size_t row) const { return pivot_of_row_[row] >= 0; }

    /// Rows that are pivots of stored columns, i.e. the clearing set for the next lower dimension.
    std::vector<std::uint32_t> pivot_rows() const
    {
        std::vector<std::uint32_t> out;
        for (std::size_t i = 0; i < pivot_of_row_.size(); ++i)
            if (pivot_of_row_[i] >= 0) out.push_back(static_cast<std::uint32_t>(i));
        return out;
    }

private:
    SparseColumn unit(std::uint32_t id) const
    {
        SparseColumn u;
        u.rows.push_back(id);
        if (!field_.binary()) u.coefs.push_back(1);
        return u;
    }

    PrimeField field_;
    DenseColumn work_;
    std::vector<long long> pivot_of_row_;
    std::vector<SparseColumn> stored_;
    bool track_;
    DenseColumn combo_work_;
    std::vector<SparseColumn> stored_combo_;
};

} // namespace hcvr
