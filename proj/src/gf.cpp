#include "phex/gf.hpp"

namespace phex {

bool is_prime(std::uint32_t n) {
    if (n < 2) return false;
    for (std::uint32_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

namespace {

std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
    // Fermat: a^(p-2) mod p.
    std::uint64_t result = 1, base = a % p;
    std::uint32_t e = p - 2;
    while (e) {
        if (e & 1) result = result * base % p;
        base = base * base % p;
        e >>= 1;
    }
    return static_cast<std::uint32_t>(result);
}

}  // namespace

FieldMatrix::FieldMatrix(std::uint32_t p, int rows, int cols)
    : p_(p), rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols, 0) {
    if (!is_prime(p)) throw std::invalid_argument("field modulus must be prime");
    if (rows < 0 || cols < 0) throw std::invalid_argument("negative matrix shape");
}

FieldMatrix FieldMatrix::identity(std::uint32_t p, int n) {
    FieldMatrix I(p, n, n);
    for (int i = 0; i < n; ++i) I.set(i, i, 1);
    return I;
}

FieldMatrix FieldMatrix::operator*(const FieldMatrix& rhs) const {
    if (cols_ != rhs.rows_ || p_ != rhs.p_)
        throw std::invalid_argument("matrix product shape/field mismatch");
    FieldMatrix out(p_, rows_, rhs.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            std::uint64_t v = (*this)(i, k);
            if (!v) continue;
            for (int j = 0; j < rhs.cols_; ++j) {
                std::uint64_t acc = out(i, j) + v * rhs(k, j);
                out.a_[out.idx(i, j)] = static_cast<std::uint32_t>(acc % p_);
            }
        }
    return out;
}

FieldMatrix FieldMatrix::operator-(const FieldMatrix& rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_ || p_ != rhs.p_)
        throw std::invalid_argument("matrix difference shape/field mismatch");
    FieldMatrix out(p_, rows_, cols_);
    for (std::size_t t = 0; t < a_.size(); ++t) out.a_[t] = (a_[t] + p_ - rhs.a_[t]) % p_;
    return out;
}

bool FieldMatrix::is_zero() const {
    for (std::uint32_t v : a_)
        if (v) return false;
    return true;
}

FieldMatrix FieldMatrix::transpose() const {
    FieldMatrix out(p_, cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) out.a_[out.idx(j, i)] = (*this)(i, j);
    return out;
}

FieldMatrix FieldMatrix::column(int c) const {
    FieldMatrix out(p_, rows_, 1);
    for (int i = 0; i < rows_; ++i) out.a_[i] = (*this)(i, c);
    return out;
}

FieldMatrix FieldMatrix::negated() const {
    FieldMatrix out(p_, rows_, cols_);
    for (std::size_t t = 0; t < a_.size(); ++t) out.a_[t] = a_[t] ? p_ - a_[t] : 0;
    return out;
}

FieldMatrix FieldMatrix::hcat(const FieldMatrix& right) const {
    if (rows_ != right.rows_ || p_ != right.p_)
        throw std::invalid_argument("hcat shape/field mismatch");
    FieldMatrix out(p_, rows_, cols_ + right.cols_);
    for (int i = 0; i < rows_; ++i) {
        for (int j = 0; j < cols_; ++j) out.a_[out.idx(i, j)] = (*this)(i, j);
        for (int j = 0; j < right.cols_; ++j) out.a_[out.idx(i, cols_ + j)] = right(i, j);
    }
    return out;
}

FieldMatrix FieldMatrix::vcat(const FieldMatrix& below) const {
    if (cols_ != below.cols_ || p_ != below.p_)
        throw std::invalid_argument("vcat shape/field mismatch");
    FieldMatrix out(p_, rows_ + below.rows_, cols_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) out.a_[out.idx(i, j)] = (*this)(i, j);
    for (int i = 0; i < below.rows_; ++i)
        for (int j = 0; j < cols_; ++j) out.a_[out.idx(rows_ + i, j)] = below(i, j);
    return out;
}

FieldMatrix FieldMatrix::block_diag(const std::vector<FieldMatrix>& blocks, std::uint32_t p) {
    int rows = 0, cols = 0;
    for (const FieldMatrix& b : blocks) {
        rows += b.rows();
        cols += b.cols();
    }
    FieldMatrix out(p, rows, cols);
    int r0 = 0, c0 = 0;
    for (const FieldMatrix& b : blocks) {
        for (int i = 0; i < b.rows(); ++i)
            for (int j = 0; j < b.cols(); ++j) out.set(r0 + i, c0 + j, b(i, j));
        r0 += b.rows();
        c0 += b.cols();
    }
    return out;
}

std::vector<std::uint32_t> FieldMatrix::col_values(int c) const {
    std::vector<std::uint32_t> out(rows_);
    for (int i = 0; i < rows_; ++i) out[i] = (*this)(i, c);
    return out;
}

// --- elimination ------------------------------------------------------------

namespace {

// Bit-packed GF(2) row reduction. Rows are 64-bit word vectors; column j is
// bit (j & 63) of word (j >> 6).
Echelon echelon_gf2(const FieldMatrix& M) {
    const int rows = M.rows(), cols = M.cols();
    const int words = (cols + 63) / 64;
    std::vector<std::uint64_t> bits(static_cast<std::size_t>(rows) * words, 0);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j)
            if (M(i, j)) bits[static_cast<std::size_t>(i) * words + (j >> 6)] |= 1ull << (j & 63);

    auto get = [&](int i, int j) {
        return (bits[static_cast<std::size_t>(i) * words + (j >> 6)] >> (j & 63)) & 1ull;
    };

    std::vector<int> pivot_cols;
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int pr = -1;
        for (int i = r; i < rows; ++i)
            if (get(i, c)) {
                pr = i;
                break;
            }
        if (pr < 0) continue;
        if (pr != r)
            for (int w = 0; w < words; ++w)
                std::swap(bits[static_cast<std::size_t>(pr) * words + w],
                          bits[static_cast<std::size_t>(r) * words + w]);
        for (int i = 0; i < rows; ++i) {
            if (i == r || !get(i, c)) continue;
            std::uint64_t* dst = &bits[static_cast<std::size_t>(i) * words];
            const std::uint64_t* src = &bits[static_cast<std::size_t>(r) * words];
            for (int w = 0; w < words; ++w) dst[w] ^= src[w];
        }
        pivot_cols.push_back(c);
        ++r;
    }

    Echelon out{FieldMatrix(2, rows, cols), std::move(pivot_cols)};
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j)
            if (get(i, j)) out.rref.set(i, j, 1);
    return out;
}

Echelon echelon_generic(const FieldMatrix& M) {
    const std::uint32_t p = M.p();
    const int rows = M.rows(), cols = M.cols();
    FieldMatrix R = M;
    std::vector<int> pivot_cols;
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int pr = -1;
        for (int i = r; i < rows; ++i)
            if (R(i, c)) {
                pr = i;
                break;
            }
        if (pr < 0) continue;
        if (pr != r)
            for (int j = 0; j < cols; ++j) {
                std::uint32_t tmp = R(r, j);
                R.set(r, j, R(pr, j));
                R.set(pr, j, tmp);
            }
        std::uint32_t inv = inv_mod(R(r, c), p);
        for (int j = c; j < cols; ++j)
            R.set(r, j, static_cast<std::uint32_t>(static_cast<std::uint64_t>(R(r, j)) * inv % p));
        for (int i = 0; i < rows; ++i) {
            if (i == r) continue;
            std::uint32_t f = R(i, c);
            if (!f) continue;
            for (int j = c; j < cols; ++j) {
                std::uint64_t v = R(i, j) + static_cast<std::uint64_t>(p - f) * R(r, j) % p;
                R.set(i, j, static_cast<std::uint32_t>(v % p));
            }
        }
        pivot_cols.push_back(c);
        ++r;
    }
    return Echelon{std::move(R), std::move(pivot_cols)};
}

}  // namespace

Echelon echelon(const FieldMatrix& M) {
    return M.p() == 2 ? echelon_gf2(M) : echelon_generic(M);
}

int rank(const FieldMatrix& M) { return echelon(M).rank(); }

std::optional<FieldMatrix> solve_columns(const FieldMatrix& M, const FieldMatrix& B) {
    if (M.rows() != B.rows() || M.p() != B.p())
        throw std::invalid_argument("solve: shape/field mismatch");
    Echelon e = echelon(M.hcat(B));
    FieldMatrix X(M.p(), M.cols(), B.cols());
    // A pivot in the appended block means that column is outside the span.
    for (int pc : e.pivot_cols)
        if (pc >= M.cols()) return std::nullopt;
    for (std::size_t r = 0; r < e.pivot_cols.size(); ++r) {
        int pc = e.pivot_cols[r];
        for (int j = 0; j < B.cols(); ++j)
            X.set(pc, j, e.rref(static_cast<int>(r), M.cols() + j));
    }
    return X;
}

std::optional<std::vector<std::uint32_t>> solve(const FieldMatrix& M,
                                                const std::vector<std::uint32_t>& b) {
    if (static_cast<int>(b.size()) != M.rows())
        throw std::invalid_argument("solve: right-hand side length mismatch");
    FieldMatrix B(M.p(), M.rows(), 1);
    for (int i = 0; i < M.rows(); ++i) B.set(i, 0, b[i]);
    auto X = solve_columns(M, B);
    if (!X) return std::nullopt;
    return X->col_values(0);
}

std::pair<Subspace, Subspace> image_kernel(const FieldMatrix& M) {
    Echelon e = echelon(M);
    const int r = e.rank();

    Subspace image{M.rows(), FieldMatrix(M.p(), M.rows(), r)};
    for (int t = 0; t < r; ++t)
        for (int i = 0; i < M.rows(); ++i) image.basis.set(i, t, M(i, e.pivot_cols[t]));

    std::vector<int> free_cols;
    {
        std::size_t pi = 0;
        for (int c = 0; c < M.cols(); ++c) {
            if (pi < e.pivot_cols.size() && e.pivot_cols[pi] == c)
                ++pi;
            else
                free_cols.push_back(c);
        }
    }
    Subspace kernel{M.cols(), FieldMatrix(M.p(), M.cols(), static_cast<int>(free_cols.size()))};
    for (std::size_t t = 0; t < free_cols.size(); ++t) {
        int fc = free_cols[t];
        kernel.basis.set(fc, static_cast<int>(t), 1);
        for (int row = 0; row < r; ++row) {
            std::uint32_t v = e.rref(row, fc);
            if (v) kernel.basis.set(e.pivot_cols[row], static_cast<int>(t), M.p() - v);
        }
    }
    return {std::move(image), std::move(kernel)};
}

bool subspace_contains(const Subspace& U, const FieldMatrix& vectors) {
    if (U.ambient != vectors.rows()) throw std::invalid_argument("ambient dimension mismatch");
    return solve_columns(U.basis, vectors).has_value();
}

bool subspace_equal(const Subspace& U, const Subspace& V) {
    if (U.ambient != V.ambient) throw std::invalid_argument("ambient dimension mismatch");
    return subspace_contains(V, U.basis) && subspace_contains(U, V.basis);
}

FieldMatrix inverse(const FieldMatrix& M) {
    if (M.rows() != M.cols()) throw std::invalid_argument("inverse: matrix not square");
    auto X = solve_columns(M, FieldMatrix::identity(M.p(), M.rows()));
    if (!X || rank(M) != M.rows()) throw std::invalid_argument("inverse: matrix singular");
    return *X;
}

}  // namespace phex
