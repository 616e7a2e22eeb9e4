#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace cyclo2 {

/* Packed F2 vector. Bits past size() are always zero. */
class BitVec {
public:
    BitVec() = default;
    explicit BitVec(std::size_t n) : n_(n), w_((n + 63) / 64, 0) {}

    std::size_t size() const { return n_; }
    bool get(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1u; }
    void set(std::size_t i) { w_[i >> 6] |= uint64_t(1) << (i & 63); }
    void reset(std::size_t i) { w_[i >> 6] &= ~(uint64_t(1) << (i & 63)); }
    void flip(std::size_t i) { w_[i >> 6] ^= uint64_t(1) << (i & 63); }

    BitVec& operator^=(const BitVec& o);
    /* xor only the words from index `word` on */
    void xor_tail(const BitVec& o, std::size_t word);
    bool any() const;
    std::size_t count() const;
    long lowest() const { return next(0); }
    long next(std::size_t from) const;
    std::vector<std::size_t> ones() const;
    bool dot(const BitVec& o) const;
    /* new vector of length n + o.size() holding this followed by o */
    BitVec concat(const BitVec& o) const;
    BitVec slice(std::size_t from, std::size_t len) const;

    bool operator==(const BitVec& o) const { return n_ == o.n_ && w_ == o.w_; }
    bool operator!=(const BitVec& o) const { return !(*this == o); }

    const std::vector<uint64_t>& words() const { return w_; }

private:
    std::size_t n_ = 0;
    std::vector<uint64_t> w_;
};

BitVec unit_vector(std::size_t n, std::size_t i);

/* rows x cols matrix over F2, row-major packed. */
class F2Matrix {
public:
    F2Matrix() = default;
    F2Matrix(std::size_t rows, std::size_t cols);
    static F2Matrix from_entries(std::size_t rows, std::size_t cols,
                                 const std::vector<std::pair<std::size_t, std::size_t>>& entries);
    static F2Matrix from_columns(std::size_t rows, const std::vector<BitVec>& columns);
    static F2Matrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool get(std::size_t i, std::size_t j) const { return r_[i].get(j); }
    void set(std::size_t i, std::size_t j, bool v = true);
    const BitVec& row(std::size_t i) const { return r_[i]; }
    std::vector<std::pair<std::size_t, std::size_t>> entries() const;
    std::vector<BitVec> columns() const;

    BitVec apply(const BitVec& v) const;
    F2Matrix transpose() const;
    F2Matrix operator*(const F2Matrix& o) const;
    bool is_zero() const;
    bool operator==(const F2Matrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && r_ == o.r_; }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<BitVec> r_;
};

/* Subspace in reduced row-echelon form; pivots strictly increasing. */
struct SubspaceBasis {
    std::size_t ambient_dim = 0;
    std::vector<BitVec> vectors;
    std::vector<std::size_t> pivots;

    std::size_t dim() const { return vectors.size(); }
    /* v minus its projection; zero iff v lies in the span */
    BitVec reduce(const BitVec& v) const;
    bool contains(const BitVec& v) const { return !reduce(v).any(); }
};

/*
 * Incremental elimination with lowest-index pivots. Each stored row has its pivot as
 * lowest set bit. Optionally tracks which inserted vectors combine into each row.
 */
class Echelon {
public:
    explicit Echelon(std::size_t dim = 0, std::size_t track = 0);

    std::size_t dim() const { return dim_; }
    std::size_t rank() const { return rows_.size(); }
    /* reduce v in place; bits left only at non-pivot columns */
    void reduce(BitVec& v) const;
    void reduce(BitVec& v, BitVec& combo) const;
    bool contains(BitVec v) const;
    /* returns true if v was independent */
    bool insert(BitVec v);
    bool insert(BitVec v, BitVec combo);
    bool is_pivot(std::size_t col) const { return pivot_row_[col] >= 0; }
    std::vector<std::size_t> pivots() const;
    std::vector<std::size_t> free_columns() const;
    const std::vector<BitVec>& rows() const { return rows_; }
    const std::vector<BitVec>& combos() const { return combo_; }
    SubspaceBasis basis() const;

private:
    std::size_t dim_, track_;
    std::vector<BitVec> rows_, combo_;
    std::vector<long> pivot_row_;
};

struct RankKernelImage {
    std::size_t rank = 0;
    SubspaceBasis kernel;
    SubspaceBasis image;
};

RankKernelImage rank_kernel_image(const F2Matrix& m);
std::size_t rank(const F2Matrix& m);
/* echelon particular solution (free variables zero); throws std::invalid_argument on size mismatch */
std::optional<BitVec> solve(const F2Matrix& m, const BitVec& target);
/* coordinates of [v] in cycles/boundaries w.r.t. a fixed complement basis */
BitVec quotient_coordinates(const SubspaceBasis& cycles, const SubspaceBasis& boundaries, const BitVec& v);

/* kernel of the map sending source basis vector j to images[j] */
SubspaceBasis kernel_of_images(const std::vector<BitVec>& images, std::size_t source_dim, std::size_t target_dim);

/*
 * Homology-style quotient Z/B with precomputed complement representatives.
 * coordinates() expects v in Z.
 */
class QuotientCoords {
public:
    QuotientCoords() = default;
    QuotientCoords(const SubspaceBasis& cycles, const SubspaceBasis& boundaries);
    QuotientCoords(const SubspaceBasis& cycles, const Echelon& boundaries);

    std::size_t dim() const { return reps_.size(); }
    const std::vector<BitVec>& representatives() const { return reps_; }
    BitVec coordinates(const BitVec& v) const;
    bool is_zero_class(const BitVec& v) const;

private:
    void build(const SubspaceBasis& cycles);
    Echelon bound_;
    std::vector<BitVec> reps_;
    Echelon rep_ech_;
};

}  // namespace cyclo2
