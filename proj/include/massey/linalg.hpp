#pragma once

// Exact linear algebra over prime fields F_p (p < 256).
//
// Vectors and matrices store one byte per entry. Row reduction switches to a
// bit-packed row engine when p == 2, so large coboundary matrices over F_2
// reduce with word-wide XORs. The public results are identical for both engines.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "massey/error.hpp"

namespace massey {

inline bool is_prime(std::uint32_t n) {
    if (n < 2) return false;
    for (std::uint32_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

inline void check_modulus(std::uint32_t p) {
    if (!is_prime(p) || p > 251) throw InputError("modulus " + std::to_string(p) + " is not a prime below 256");
}

namespace detail {

inline std::uint8_t reduce_mod(std::int64_t v, std::uint32_t p) {
    auto r = v % static_cast<std::int64_t>(p);
    if (r < 0) r += p;
    return static_cast<std::uint8_t>(r);
}

inline std::uint8_t add_mod(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
    auto s = a + b;
    return static_cast<std::uint8_t>(s >= p ? s - p : s);
}

inline std::uint8_t sub_mod(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
    return static_cast<std::uint8_t>(a >= b ? a - b : a + p - b);
}

inline std::uint8_t mul_mod(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
    return static_cast<std::uint8_t>((a * b) % p);
}

inline std::uint8_t neg_mod(std::uint32_t a, std::uint32_t p) { return static_cast<std::uint8_t>(a == 0 ? 0 : p - a); }

inline std::uint8_t inv_mod(std::uint32_t a, std::uint32_t p) {
    if (a % p == 0) throw Error("zero has no multiplicative inverse");
    std::uint32_t result = 1, base = a % p, e = p - 2;
    while (e) {
        if (e & 1u) result = (result * base) % p;
        base = (base * base) % p;
        e >>= 1u;
    }
    return static_cast<std::uint8_t>(result);
}

}  // namespace detail

/// An element of F_p carrying its modulus.
class Scalar {
public:
    Scalar(std::int64_t value, std::uint32_t p) : value_(detail::reduce_mod(value, p)), p_(p) {}

    std::uint32_t value() const noexcept { return value_; }
    std::uint32_t modulus() const noexcept { return p_; }

    Scalar inverse() const { return Scalar(detail::inv_mod(value_, p_), p_); }

    friend Scalar operator+(Scalar a, Scalar b) { return Scalar(a.value_ + b.value_, a.p_); }
    friend Scalar operator-(Scalar a, Scalar b) { return Scalar(std::int64_t(a.value_) - b.value_, a.p_); }
    friend Scalar operator*(Scalar a, Scalar b) { return Scalar(std::int64_t(a.value_) * b.value_, a.p_); }
    friend bool operator==(Scalar a, Scalar b) = default;

private:
    std::uint32_t value_;
    std::uint32_t p_;
};

class Vec {
public:
    Vec() = default;
    Vec(std::uint32_t p, std::size_t dim) : p_(p), e_(dim, 0) {}
    Vec(std::uint32_t p, const std::vector<std::int64_t>& values) : p_(p), e_(values.size()) {
        for (std::size_t i = 0; i < values.size(); ++i) e_[i] = detail::reduce_mod(values[i], p);
    }
    Vec(std::uint32_t p, std::initializer_list<std::int64_t> values)
        : Vec(p, std::vector<std::int64_t>(values)) {}

    static Vec unit(std::uint32_t p, std::size_t dim, std::size_t i) {
        Vec v(p, dim);
        v.e_.at(i) = 1;
        return v;
    }

    std::uint32_t modulus() const noexcept { return p_; }
    std::size_t dim() const noexcept { return e_.size(); }
    std::uint8_t operator[](std::size_t i) const { return e_[i]; }
    Scalar at(std::size_t i) const { return Scalar(e_.at(i), p_); }
    void set(std::size_t i, std::int64_t v) { e_.at(i) = detail::reduce_mod(v, p_); }

    const std::vector<std::uint8_t>& data() const noexcept { return e_; }
    std::vector<std::uint8_t>& data() noexcept { return e_; }

    bool is_zero() const {
        return std::all_of(e_.begin(), e_.end(), [](std::uint8_t x) { return x == 0; });
    }

    /// this += c * x
    void axpy(std::uint32_t c, const Vec& x) {
        check_same(x, "Vec::axpy");
        c %= p_;
        if (c == 0) return;
        for (std::size_t i = 0; i < e_.size(); ++i)
            if (x.e_[i]) e_[i] = static_cast<std::uint8_t>((e_[i] + c * x.e_[i]) % p_);
    }

    Vec scaled(std::uint32_t c) const {
        Vec r(p_, dim());
        r.axpy(c, *this);
        return r;
    }

    Vec& operator+=(const Vec& o) {
        axpy(1, o);
        return *this;
    }
    Vec& operator-=(const Vec& o) {
        axpy(p_ - 1, o);
        return *this;
    }
    friend Vec operator+(Vec a, const Vec& b) { return a += b; }
    friend Vec operator-(Vec a, const Vec& b) { return a -= b; }
    Vec operator-() const { return scaled(p_ - 1); }

    friend bool operator==(const Vec& a, const Vec& b) { return a.p_ == b.p_ && a.e_ == b.e_; }
    friend bool operator<(const Vec& a, const Vec& b) { return a.e_ < b.e_; }

    friend std::ostream& operator<<(std::ostream& os, const Vec& v) {
        os << '(';
        for (std::size_t i = 0; i < v.dim(); ++i) os << (i ? "," : "") << int(v.e_[i]);
        return os << ')';
    }

private:
    void check_same(const Vec& o, const char* where) const {
        if (o.dim() != dim()) throw DimensionMismatch(where, dim(), o.dim());
        if (o.p_ != p_) throw InputError(std::string(where) + ": modulus mismatch");
    }

    std::uint32_t p_ = 2;
    std::vector<std::uint8_t> e_;
};

class Mat {
public:
    Mat() = default;
    Mat(std::uint32_t p, std::size_t rows, std::size_t cols) : p_(p), rows_(rows), cols_(cols), e_(rows * cols, 0) {}
    Mat(std::uint32_t p, const std::vector<std::vector<std::int64_t>>& rows) : p_(p), rows_(rows.size()) {
        cols_ = rows.empty() ? 0 : rows.front().size();
        e_.reserve(rows_ * cols_);
        for (const auto& r : rows) {
            if (r.size() != cols_) throw DimensionMismatch("Mat: ragged row", cols_, r.size());
            for (auto v : r) e_.push_back(detail::reduce_mod(v, p));
        }
    }

    static Mat identity(std::uint32_t p, std::size_t n) {
        Mat m(p, n, n);
        for (std::size_t i = 0; i < n; ++i) m.e_[i * n + i] = 1;
        return m;
    }

    static Mat from_columns(std::uint32_t p, std::size_t rows, const std::vector<Vec>& columns) {
        Mat m(p, rows, columns.size());
        for (std::size_t j = 0; j < columns.size(); ++j) {
            if (columns[j].dim() != rows) throw DimensionMismatch("Mat::from_columns", rows, columns[j].dim());
            for (std::size_t i = 0; i < rows; ++i) m.e_[i * m.cols_ + j] = columns[j][i];
        }
        return m;
    }

    static Mat from_rows(std::uint32_t p, std::size_t cols, const std::vector<Vec>& rows) {
        Mat m(p, rows.size(), cols);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].dim() != cols) throw DimensionMismatch("Mat::from_rows", cols, rows[i].dim());
            std::copy(rows[i].data().begin(), rows[i].data().end(), m.e_.begin() + i * cols);
        }
        return m;
    }

    std::uint32_t modulus() const noexcept { return p_; }
    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool is_square() const noexcept { return rows_ == cols_; }

    std::uint8_t operator()(std::size_t r, std::size_t c) const { return e_[r * cols_ + c]; }
    std::uint8_t at(std::size_t r, std::size_t c) const { return e_.at(r * cols_ + c); }
    void set(std::size_t r, std::size_t c, std::int64_t v) { e_.at(r * cols_ + c) = detail::reduce_mod(v, p_); }

    const std::vector<std::uint8_t>& data() const noexcept { return e_; }
    std::vector<std::uint8_t>& data() noexcept { return e_; }

    Vec row(std::size_t r) const {
        Vec v(p_, cols_);
        std::copy(e_.begin() + r * cols_, e_.begin() + (r + 1) * cols_, v.data().begin());
        return v;
    }

    Vec column(std::size_t c) const {
        Vec v(p_, rows_);
        for (std::size_t r = 0; r < rows_; ++r) v.data()[r] = e_[r * cols_ + c];
        return v;
    }

    Mat transpose() const {
        Mat t(p_, cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c) t.e_[c * rows_ + r] = e_[r * cols_ + c];
        return t;
    }

    friend Mat operator*(const Mat& a, const Mat& b) {
        if (a.cols_ != b.rows_) throw DimensionMismatch("Mat product", a.cols_, b.rows_);
        Mat c(a.p_, a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                std::uint32_t x = a.e_[i * a.cols_ + k];
                if (!x) continue;
                for (std::size_t j = 0; j < b.cols_; ++j)
                    c.e_[i * c.cols_ + j] = static_cast<std::uint8_t>((c.e_[i * c.cols_ + j] + x * b.e_[k * b.cols_ + j]) % a.p_);
            }
        return c;
    }

    friend Vec operator*(const Mat& a, const Vec& v) {
        if (a.cols_ != v.dim()) throw DimensionMismatch("Mat-vector product", a.cols_, v.dim());
        Vec r(a.p_, a.rows_);
        for (std::size_t i = 0; i < a.rows_; ++i) {
            std::uint32_t s = 0;
            for (std::size_t k = 0; k < a.cols_; ++k) s += std::uint32_t(a.e_[i * a.cols_ + k]) * v[k];
            r.data()[i] = static_cast<std::uint8_t>(s % a.p_);
        }
        return r;
    }

    friend Mat operator-(const Mat& a, const Mat& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DimensionMismatch("Mat difference", a.e_.size(), b.e_.size());
        Mat c = a;
        for (std::size_t i = 0; i < c.e_.size(); ++i) c.e_[i] = detail::sub_mod(a.e_[i], b.e_[i], a.p_);
        return c;
    }

    friend bool operator==(const Mat& a, const Mat& b) {
        return a.p_ == b.p_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.e_ == b.e_;
    }
    friend bool operator<(const Mat& a, const Mat& b) { return a.e_ < b.e_; }

    friend std::ostream& operator<<(std::ostream& os, const Mat& m) {
        os << '[';
        for (std::size_t r = 0; r < m.rows_; ++r) {
            os << (r ? ",[" : "[");
            for (std::size_t c = 0; c < m.cols_; ++c) os << (c ? "," : "") << int(m(r, c));
            os << ']';
        }
        return os << ']';
    }

private:
    std::uint32_t p_ = 2;
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<std::uint8_t> e_;
};

namespace detail {

// Row storage for p == 2: 64 entries per word.
class PackedRows {
public:
    explicit PackedRows(const Mat& m)
        : rows_(m.rows()), cols_(m.cols()), words_((m.cols() + 63) / 64), bits_(rows_ * words_, 0) {
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c)
                if (m(r, c)) bits_[r * words_ + c / 64] |= std::uint64_t{1} << (c % 64);
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::uint32_t get(std::size_t r, std::size_t c) const { return (bits_[r * words_ + c / 64] >> (c % 64)) & 1u; }
    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b) return;
        std::swap_ranges(bits_.begin() + a * words_, bits_.begin() + (a + 1) * words_, bits_.begin() + b * words_);
    }
    void normalize(std::size_t, std::size_t) {}
    void eliminate(std::size_t dst, std::size_t src, std::size_t from_col) {
        for (std::size_t w = from_col / 64; w < words_; ++w) bits_[dst * words_ + w] ^= bits_[src * words_ + w];
    }

    Mat to_mat() const {
        Mat m(2, rows_, cols_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c)
                if (get(r, c)) m.data()[r * cols_ + c] = 1;
        return m;
    }

private:
    std::size_t rows_, cols_, words_;
    std::vector<std::uint64_t> bits_;
};

class ByteRows {
public:
    explicit ByteRows(const Mat& m) : m_(m), p_(m.modulus()) {}

    std::size_t rows() const { return m_.rows(); }
    std::size_t cols() const { return m_.cols(); }
    std::uint32_t get(std::size_t r, std::size_t c) const { return m_(r, c); }
    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b) return;
        auto& d = m_.data();
        std::swap_ranges(d.begin() + a * cols(), d.begin() + (a + 1) * cols(), d.begin() + b * cols());
    }
    void normalize(std::size_t r, std::size_t c) {
        auto inv = inv_mod(get(r, c), p_);
        if (inv == 1) return;
        auto* row = m_.data().data() + r * cols();
        for (std::size_t k = c; k < cols(); ++k) row[k] = mul_mod(row[k], inv, p_);
    }
    // dst -= dst[col] * src, where src has a unit pivot at col.
    void eliminate(std::size_t dst, std::size_t src, std::size_t col) {
        auto* d = m_.data().data() + dst * cols();
        const auto* s = m_.data().data() + src * cols();
        std::uint32_t f = p_ - d[col];
        for (std::size_t k = col; k < cols(); ++k)
            if (s[k]) d[k] = static_cast<std::uint8_t>((d[k] + f * s[k]) % p_);
    }

    Mat to_mat() const { return m_; }

private:
    Mat m_;
    std::uint32_t p_;
};

template <class Rows>
std::vector<std::size_t> gauss_jordan(Rows& m) {
    std::vector<std::size_t> pivots;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < m.cols() && rank < m.rows(); ++col) {
        std::size_t r = rank;
        while (r < m.rows() && m.get(r, col) == 0) ++r;
        if (r == m.rows()) continue;
        m.swap_rows(r, rank);
        m.normalize(rank, col);
        for (std::size_t other = 0; other < m.rows(); ++other)
            if (other != rank && m.get(other, col) != 0) m.eliminate(other, rank, col);
        pivots.push_back(col);
        ++rank;
    }
    return pivots;
}

}  // namespace detail

struct RrefResult {
    Mat reduced;
    std::size_t rank = 0;
    std::vector<std::size_t> pivot_cols;
};

/// Reduced row-echelon form. The pivot for each column is the first nonzero
/// entry at or below the current rank row, so results are reproducible.
inline RrefResult rref(const Mat& m) {
    RrefResult out;
    if (m.modulus() == 2) {
        detail::PackedRows rows(m);
        out.pivot_cols = detail::gauss_jordan(rows);
        out.reduced = rows.to_mat();
    } else {
        detail::ByteRows rows(m);
        out.pivot_cols = detail::gauss_jordan(rows);
        out.reduced = rows.to_mat();
    }
    out.rank = out.pivot_cols.size();
    return out;
}

inline std::size_t rank(const Mat& m) { return rref(m).rank; }

inline std::vector<Vec> kernel_basis_from_rref(const RrefResult& r, std::size_t cols) {
    const auto p = r.reduced.modulus();
    std::vector<bool> is_pivot(cols, false);
    for (auto c : r.pivot_cols) is_pivot[c] = true;
    std::vector<Vec> basis;
    for (std::size_t f = 0; f < cols; ++f) {
        if (is_pivot[f]) continue;
        Vec v(p, cols);
        v.set(f, 1);
        for (std::size_t i = 0; i < r.pivot_cols.size(); ++i) v.set(r.pivot_cols[i], -std::int64_t(r.reduced(i, f)));
        basis.push_back(std::move(v));
    }
    return basis;
}

inline std::vector<Vec> kernel_basis(const Mat& m) { return kernel_basis_from_rref(rref(m), m.cols()); }

/// Solutions of A x = b: a particular solution (absent when inconsistent) and a kernel basis.
struct AffineSolutionSet {
    std::optional<Vec> particular;
    std::vector<Vec> kernel_basis;

    bool consistent() const noexcept { return particular.has_value(); }
};

inline AffineSolutionSet solve_affine(const Mat& a, const Vec& b) {
    if (a.rows() != b.dim()) throw DimensionMismatch("solve_affine", a.rows(), b.dim());
    const auto p = a.modulus();
    Mat aug(p, a.rows(), a.cols() + 1);
    for (std::size_t r = 0; r < a.rows(); ++r) {
        for (std::size_t c = 0; c < a.cols(); ++c) aug.data()[r * aug.cols() + c] = a(r, c);
        aug.data()[r * aug.cols() + a.cols()] = b[r];
    }
    auto red = rref(aug);
    AffineSolutionSet out;
    RrefResult left{red.reduced, 0, {}};
    bool consistent = true;
    for (auto c : red.pivot_cols) {
        if (c == a.cols())
            consistent = false;
        else
            left.pivot_cols.push_back(c);
    }
    left.rank = left.pivot_cols.size();
    out.kernel_basis = kernel_basis_from_rref(left, a.cols());
    if (consistent) {
        Vec x(p, a.cols());
        for (std::size_t i = 0; i < left.pivot_cols.size(); ++i) x.set(left.pivot_cols[i], red.reduced(i, a.cols()));
        out.particular = std::move(x);
    }
    return out;
}

/// Lazily walks particular + span(kernel_basis) in lexicographic coefficient order
/// (last basis vector varies fastest). Refuses to start when p^k exceeds the budget.
class AffineEnumerator {
public:
    static constexpr std::size_t kDefaultBudget = std::size_t{1} << 20;

    AffineEnumerator(Vec particular, std::vector<Vec> basis, std::size_t budget = kDefaultBudget)
        : base_(std::move(particular)), basis_(std::move(basis)), coeffs_(basis_.size(), 0) {
        std::size_t total = 1;
        for (std::size_t i = 0; i < basis_.size(); ++i) {
            total *= base_.modulus();
            if (total > budget) throw BudgetExceeded("affine enumeration", total, budget);
        }
        count_ = total;
    }

    std::size_t size() const noexcept { return count_; }

    std::optional<Vec> next() {
        if (done_) return std::nullopt;
        Vec v = base_;
        for (std::size_t i = 0; i < basis_.size(); ++i) v.axpy(coeffs_[i], basis_[i]);
        std::size_t i = coeffs_.size();
        while (i > 0) {
            --i;
            if (++coeffs_[i] < base_.modulus()) break;
            coeffs_[i] = 0;
            if (i == 0) done_ = true;
        }
        if (coeffs_.empty()) done_ = true;
        return v;
    }

private:
    Vec base_;
    std::vector<Vec> basis_;
    std::vector<std::uint32_t> coeffs_;
    std::size_t count_ = 0;
    bool done_ = false;
};

/// A subspace of F_p^n kept as its unique reduced echelon basis. Each basis
/// vector may carry a tag vector that follows it through every row operation,
/// which records how the basis vector was obtained from the inserted vectors.
class RowSpace {
public:
    RowSpace(std::uint32_t p, std::size_t ambient_dim, std::size_t tag_dim = 0)
        : p_(p), n_(ambient_dim), tag_dim_(tag_dim) {}

    std::uint32_t modulus() const noexcept { return p_; }
    std::size_t ambient_dim() const noexcept { return n_; }
    std::size_t dim() const noexcept { return basis_.size(); }
    const std::vector<Vec>& basis() const noexcept { return basis_; }
    const std::vector<std::size_t>& pivots() const noexcept { return pivots_; }

    struct Reduction {
        Vec remainder;  // zero at every pivot column; equals v minus a combination of the basis
        Vec tag;        // the same combination applied to the tags
    };

    Reduction reduce(const Vec& v) const {
        if (v.dim() != n_) throw DimensionMismatch("RowSpace::reduce", n_, v.dim());
        Reduction out{v, Vec(p_, tag_dim_)};
        for (std::size_t i = 0; i < basis_.size(); ++i) {
            std::uint32_t c = out.remainder[pivots_[i]];
            if (!c) continue;
            out.remainder.axpy(p_ - c, basis_[i]);
            if (tag_dim_) out.tag.axpy(c, tags_[i]);
        }
        return out;
    }

    /// Canonical representative of the coset v + span.
    Vec normal_form(const Vec& v) const { return reduce(v).remainder; }

    bool contains(const Vec& v) const { return normal_form(v).is_zero(); }

    /// Adds v (with its tag) to the span. Returns false if v was already in it.
    bool insert(const Vec& v, const Vec& tag = {}) {
        auto red = reduce(v);
        if (red.remainder.is_zero()) return false;
        Vec t(p_, tag_dim_);
        if (tag_dim_) {
            if (tag.dim() != tag_dim_) throw DimensionMismatch("RowSpace::insert tag", tag_dim_, tag.dim());
            t = tag - red.tag;
        }
        Vec& r = red.remainder;
        std::size_t q = 0;
        while (r[q] == 0) ++q;
        auto inv = detail::inv_mod(r[q], p_);
        r = r.scaled(inv);
        if (tag_dim_) t = t.scaled(inv);
        for (std::size_t i = 0; i < basis_.size(); ++i) {
            std::uint32_t c = basis_[i][q];
            if (!c) continue;
            basis_[i].axpy(p_ - c, r);
            if (tag_dim_) tags_[i].axpy(p_ - c, t);
        }
        auto pos = static_cast<std::size_t>(std::lower_bound(pivots_.begin(), pivots_.end(), q) - pivots_.begin());
        pivots_.insert(pivots_.begin() + pos, q);
        basis_.insert(basis_.begin() + pos, std::move(r));
        if (tag_dim_) tags_.insert(tags_.begin() + pos, std::move(t));
        return true;
    }

    const std::vector<Vec>& tags() const noexcept { return tags_; }

private:
    std::uint32_t p_;
    std::size_t n_;
    std::size_t tag_dim_;
    std::vector<Vec> basis_;
    std::vector<Vec> tags_;
    std::vector<std::size_t> pivots_;
};

/// True iff v - particular lies in span(basis).
inline bool in_coset(const Vec& v, const Vec& particular, const std::vector<Vec>& basis) {
    if (v.dim() != particular.dim()) throw DimensionMismatch("in_coset", particular.dim(), v.dim());
    RowSpace span(v.modulus(), v.dim());
    for (const auto& b : basis) {
        if (b.dim() != v.dim()) throw DimensionMismatch("in_coset basis", v.dim(), b.dim());
        span.insert(b);
    }
    return span.contains(v - particular);
}

/// For functionals given by coordinate vectors: if ker(phi1) is contained in
/// ker(phi2), returns lambda with phi2 = lambda * phi1.
inline std::optional<Scalar> proportionality_witness(const Vec& phi1, const Vec& phi2) {
    if (phi1.dim() != phi2.dim()) throw DimensionMismatch("proportionality_witness", phi1.dim(), phi2.dim());
    const auto p = phi1.modulus();
    // Kernel containment is equivalent to rank{phi1, phi2} == rank{phi1}.
    auto r1 = rank(Mat::from_rows(p, phi1.dim(), {phi1}));
    auto r12 = rank(Mat::from_rows(p, phi1.dim(), {phi1, phi2}));
    if (r12 != r1) return std::nullopt;
    if (r1 == 0) return Scalar(0, p);
    std::size_t k = 0;
    while (phi1[k] == 0) ++k;
    return Scalar(phi2[k], p) * Scalar(phi1[k], p).inverse();
}

inline Mat inverse(const Mat& x) {
    if (!x.is_square()) throw DimensionMismatch("inverse of non-square matrix", x.rows(), x.cols());
    const auto n = x.rows();
    const auto p = x.modulus();
    if (n == 0) return x;
    Mat aug(p, n, 2 * n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) aug.data()[r * 2 * n + c] = x(r, c);
        aug.data()[r * 2 * n + n + r] = 1;
    }
    auto red = rref(aug);
    if (red.rank < n || red.pivot_cols[n - 1] != n - 1) throw SingularMatrix();
    Mat inv(p, n, n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) inv.data()[r * n + c] = red.reduced(r, n + c);
    return inv;
}

/// (X^-1)^T: the matrix of the dual action in the dual basis.
inline Mat inv_transpose(const Mat& x) { return inverse(x).transpose(); }

inline bool is_invertible(const Mat& x) { return x.is_square() && rank(x) == x.rows(); }

}  // namespace massey
