#include "cyclo2/f2linalg.hpp"

#include <bit>
#include <stdexcept>

namespace cyclo2 {

BitVec& BitVec::operator^=(const BitVec& o)
{
    if (o.n_ != n_)
        throw std::invalid_argument("BitVec size mismatch");
    for (std::size_t i = 0; i < w_.size(); ++i)
        w_[i] ^= o.w_[i];
    return *this;
}

void BitVec::xor_tail(const BitVec& o, std::size_t word)
{
    for (std::size_t i = word; i < w_.size(); ++i)
        w_[i] ^= o.w_[i];
}

bool BitVec::any() const
{
    for (uint64_t x : w_)
        if (x)
            return true;
    return false;
}

std::size_t BitVec::count() const
{
    std::size_t c = 0;
    for (uint64_t x : w_)
        c += std::popcount(x);
    return c;
}

long BitVec::next(std::size_t from) const
{
    if (from >= n_)
        return -1;
    std::size_t i = from >> 6;
    uint64_t x = w_[i] & (~uint64_t(0) << (from & 63));
    while (true) {
        if (x)
            return long(i * 64 + std::countr_zero(x));
        if (++i >= w_.size())
            return -1;
        x = w_[i];
    }
}

std::vector<std::size_t> BitVec::ones() const
{
    std::vector<std::size_t> r;
    for (std::size_t i = 0; i < w_.size(); ++i) {
        uint64_t x = w_[i];
        while (x) {
            r.push_back(i * 64 + std::countr_zero(x));
            x &= x - 1;
        }
    }
    return r;
}

bool BitVec::dot(const BitVec& o) const
{
    uint64_t acc = 0;
    for (std::size_t i = 0; i < w_.size(); ++i)
        acc ^= w_[i] & o.w_[i];
    return std::popcount(acc) & 1;
}

BitVec BitVec::concat(const BitVec& o) const
{
    BitVec r(n_ + o.n_);
    for (std::size_t i : ones())
        r.set(i);
    for (std::size_t i : o.ones())
        r.set(n_ + i);
    return r;
}

BitVec BitVec::slice(std::size_t from, std::size_t len) const
{
    BitVec r(len);
    for (long i = next(from); i >= 0 && std::size_t(i) < from + len; i = next(std::size_t(i) + 1))
        r.set(std::size_t(i) - from);
    return r;
}

BitVec unit_vector(std::size_t n, std::size_t i)
{
    BitVec v(n);
    v.set(i);
    return v;
}

F2Matrix::F2Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), r_(rows, BitVec(cols)) {}

F2Matrix F2Matrix::from_entries(std::size_t rows, std::size_t cols,
                                const std::vector<std::pair<std::size_t, std::size_t>>& entries)
{
    F2Matrix m(rows, cols);
    for (auto [i, j] : entries) {
        if (i >= rows || j >= cols)
            throw std::out_of_range("matrix entry out of range");
        m.r_[i].set(j);
    }
    return m;
}

F2Matrix F2Matrix::from_columns(std::size_t rows, const std::vector<BitVec>& columns)
{
    F2Matrix m(rows, columns.size());
    for (std::size_t j = 0; j < columns.size(); ++j) {
        if (columns[j].size() != rows)
            throw std::invalid_argument("column length mismatch");
        for (std::size_t i : columns[j].ones())
            m.r_[i].set(j);
    }
    return m;
}

F2Matrix F2Matrix::identity(std::size_t n)
{
    F2Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m.r_[i].set(i);
    return m;
}

void F2Matrix::set(std::size_t i, std::size_t j, bool v)
{
    if (v)
        r_[i].set(j);
    else
        r_[i].reset(j);
}

std::vector<std::pair<std::size_t, std::size_t>> F2Matrix::entries() const
{
    std::vector<std::pair<std::size_t, std::size_t>> e;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j : r_[i].ones())
            e.emplace_back(i, j);
    return e;
}

std::vector<BitVec> F2Matrix::columns() const
{
    std::vector<BitVec> c(cols_, BitVec(rows_));
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j : r_[i].ones())
            c[j].set(i);
    return c;
}

BitVec F2Matrix::apply(const BitVec& v) const
{
    if (v.size() != cols_)
        throw std::invalid_argument("apply: vector length mismatch");
    BitVec out(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        if (r_[i].dot(v))
            out.set(i);
    return out;
}

F2Matrix F2Matrix::transpose() const
{
    F2Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j : r_[i].ones())
            t.r_[j].set(i);
    return t;
}

F2Matrix F2Matrix::operator*(const F2Matrix& o) const
{
    if (cols_ != o.rows_)
        throw std::invalid_argument("matrix product shape mismatch");
    F2Matrix p(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k : r_[i].ones())
            p.r_[i] ^= o.r_[k];
    return p;
}

bool F2Matrix::is_zero() const
{
    for (const auto& r : r_)
        if (r.any())
            return false;
    return true;
}

BitVec SubspaceBasis::reduce(const BitVec& v) const
{
    BitVec r = v;
    for (std::size_t k = 0; k < vectors.size(); ++k)
        if (r.get(pivots[k]))
            r ^= vectors[k];
    return r;
}

Echelon::Echelon(std::size_t dim, std::size_t track) : dim_(dim), track_(track), pivot_row_(dim, -1) {}

void Echelon::reduce(BitVec& v) const
{
    for (long p = v.lowest(); p >= 0; p = v.next(std::size_t(p) + 1)) {
        long r = pivot_row_[std::size_t(p)];
        if (r >= 0)
            v.xor_tail(rows_[std::size_t(r)], std::size_t(p) >> 6);
    }
}

void Echelon::reduce(BitVec& v, BitVec& combo) const
{
    for (long p = v.lowest(); p >= 0; p = v.next(std::size_t(p) + 1)) {
        long r = pivot_row_[std::size_t(p)];
        if (r >= 0) {
            v.xor_tail(rows_[std::size_t(r)], std::size_t(p) >> 6);
            combo ^= combo_[std::size_t(r)];
        }
    }
}

bool Echelon::contains(BitVec v) const
{
    reduce(v);
    return !v.any();
}

bool Echelon::insert(BitVec v)
{
    if (v.size() != dim_)
        throw std::invalid_argument("Echelon: vector length mismatch");
    reduce(v);
    long p = v.lowest();
    if (p < 0)
        return false;
    pivot_row_[std::size_t(p)] = long(rows_.size());
    rows_.push_back(std::move(v));
    if (track_)
        combo_.push_back(BitVec(track_));
    return true;
}

bool Echelon::insert(BitVec v, BitVec combo)
{
    if (v.size() != dim_ || combo.size() != track_)
        throw std::invalid_argument("Echelon: vector length mismatch");
    reduce(v, combo);
    long p = v.lowest();
    if (p < 0)
        return false;
    pivot_row_[std::size_t(p)] = long(rows_.size());
    rows_.push_back(std::move(v));
    combo_.push_back(std::move(combo));
    return true;
}

std::vector<std::size_t> Echelon::pivots() const
{
    std::vector<std::size_t> p;
    for (std::size_t c = 0; c < dim_; ++c)
        if (pivot_row_[c] >= 0)
            p.push_back(c);
    return p;
}

std::vector<std::size_t> Echelon::free_columns() const
{
    std::vector<std::size_t> f;
    for (std::size_t c = 0; c < dim_; ++c)
        if (pivot_row_[c] < 0)
            f.push_back(c);
    return f;
}

SubspaceBasis Echelon::basis() const
{
    SubspaceBasis b;
    b.ambient_dim = dim_;
    for (std::size_t c = 0; c < dim_; ++c) {
        long r = pivot_row_[c];
        if (r < 0)
            continue;
        BitVec v = rows_[std::size_t(r)];
        /* clear the other pivot columns */
        for (long p = v.next(c + 1); p >= 0; p = v.next(std::size_t(p) + 1)) {
            long q = pivot_row_[std::size_t(p)];
            if (q >= 0)
                v.xor_tail(rows_[std::size_t(q)], std::size_t(p) >> 6);
        }
        b.vectors.push_back(std::move(v));
        b.pivots.push_back(c);
    }
    return b;
}

SubspaceBasis kernel_of_images(const std::vector<BitVec>& images, std::size_t source_dim, std::size_t target_dim)
{
    if (images.size() != source_dim)
        throw std::invalid_argument("kernel_of_images: wrong number of images");
    Echelon e(target_dim, source_dim);
    Echelon ker(source_dim);
    for (std::size_t j = 0; j < source_dim; ++j) {
        BitVec v = images[j];
        BitVec c = unit_vector(source_dim, j);
        e.reduce(v, c);
        if (v.any())
            e.insert(std::move(v), std::move(c));
        else
            ker.insert(std::move(c));
    }
    return ker.basis();
}

RankKernelImage rank_kernel_image(const F2Matrix& m)
{
    RankKernelImage out;
    auto cols = m.columns();
    Echelon img(m.rows());
    for (const auto& c : cols)
        img.insert(c);
    out.rank = img.rank();
    out.image = img.basis();
    out.kernel = kernel_of_images(cols, m.cols(), m.rows());
    return out;
}

std::size_t rank(const F2Matrix& m)
{
    Echelon e(m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        e.insert(m.row(i));
    return e.rank();
}

std::optional<BitVec> solve(const F2Matrix& m, const BitVec& target)
{
    if (target.size() != m.rows())
        throw std::invalid_argument("solve: target length must equal row count");
    /* row-reduce [m | target] to RREF; free variables set to zero */
    std::size_t n = m.cols();
    Echelon e(n + 1);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        BitVec r = m.row(i).concat(BitVec(1));
        if (target.get(i))
            r.set(n);
        e.insert(std::move(r));
    }
    SubspaceBasis b = e.basis();
    BitVec x(n);
    for (std::size_t k = 0; k < b.dim(); ++k) {
        if (b.pivots[k] == n)
            return std::nullopt;
        if (b.vectors[k].get(n))
            x.set(b.pivots[k]);
    }
    return x;
}

QuotientCoords::QuotientCoords(const SubspaceBasis& cycles, const SubspaceBasis& boundaries)
    : bound_(cycles.ambient_dim)
{
    for (const auto& b : boundaries.vectors)
        bound_.insert(b);
    build(cycles);
}

QuotientCoords::QuotientCoords(const SubspaceBasis& cycles, const Echelon& boundaries) : bound_(boundaries)
{
    build(cycles);
}

void QuotientCoords::build(const SubspaceBasis& cycles)
{
    Echelon probe(cycles.ambient_dim);
    for (const auto& z : cycles.vectors) {
        BitVec v = z;
        bound_.reduce(v);
        if (v.any() && probe.insert(v))
            reps_.push_back(v);
    }
    for (const auto& b : bound_.rows())
        if (!cycles.contains(b))
            throw std::logic_error("boundary not contained in cycles");
    rep_ech_ = Echelon(cycles.ambient_dim, reps_.size());
    for (std::size_t i = 0; i < reps_.size(); ++i)
        rep_ech_.insert(reps_[i], unit_vector(reps_.size(), i));
}

BitVec QuotientCoords::coordinates(const BitVec& v) const
{
    BitVec r = v;
    bound_.reduce(r);
    BitVec c(reps_.size());
    rep_ech_.reduce(r, c);
    if (r.any())
        throw std::invalid_argument("quotient_coordinates: vector is not a cycle");
    return c;
}

bool QuotientCoords::is_zero_class(const BitVec& v) const
{
    return !coordinates(v).any();
}

BitVec quotient_coordinates(const SubspaceBasis& cycles, const SubspaceBasis& boundaries, const BitVec& v)
{
    if (v.size() != cycles.ambient_dim)
        throw std::invalid_argument("quotient_coordinates: length mismatch");
    if (!cycles.contains(v))
        throw std::invalid_argument("quotient_coordinates: vector is not a cycle");
    QuotientCoords q(cycles, boundaries);
    return q.coordinates(v);
}

}  // namespace cyclo2
