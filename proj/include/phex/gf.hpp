#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

namespace phex {

bool is_prime(std::uint32_t n);

// Dense matrix over GF(p), p a small prime. Entries are residues in [0, p).
// All arithmetic is exact; no floating point anywhere.
class FieldMatrix {
public:
    FieldMatrix() = default;
    FieldMatrix(std::uint32_t p, int rows, int cols);

    static FieldMatrix identity(std::uint32_t p, int n);

    std::uint32_t p() const { return p_; }
    int rows() const { return rows_; }
    int cols() const { return cols_; }

    std::uint32_t operator()(int r, int c) const { return a_[idx(r, c)]; }
    void set(int r, int c, std::uint32_t v) { a_[idx(r, c)] = v % p_; }

    FieldMatrix operator*(const FieldMatrix& rhs) const;
    FieldMatrix operator-(const FieldMatrix& rhs) const;
    bool operator==(const FieldMatrix& rhs) const = default;
    bool is_zero() const;

    FieldMatrix transpose() const;
    FieldMatrix column(int c) const;
    FieldMatrix negated() const;

    // Columns of `right` appended on the right; row counts must agree.
    FieldMatrix hcat(const FieldMatrix& right) const;
    // Rows of `below` appended underneath; column counts must agree.
    FieldMatrix vcat(const FieldMatrix& below) const;
    // Block-diagonal sum.
    static FieldMatrix block_diag(const std::vector<FieldMatrix>& blocks, std::uint32_t p);

    std::vector<std::uint32_t> col_values(int c) const;

private:
    std::size_t idx(int r, int c) const { return static_cast<std::size_t>(r) * cols_ + c; }
    std::uint32_t p_ = 2;
    int rows_ = 0, cols_ = 0;
    std::vector<std::uint32_t> a_;
};

// A subspace of GF(p)^ambient given by an independent column basis.
struct Subspace {
    int ambient = 0;
    FieldMatrix basis;  // ambient x dim, independent columns
    int dim() const { return basis.cols(); }
};

// Row echelon data: reduced row-echelon form plus pivot columns, computed by
// Gaussian elimination with first-nonzero pivoting. Deterministic. The GF(2)
// path runs on bit-packed rows.
struct Echelon {
    FieldMatrix rref;
    std::vector<int> pivot_cols;  // ascending
    int rank() const { return static_cast<int>(pivot_cols.size()); }
};
Echelon echelon(const FieldMatrix& M);

int rank(const FieldMatrix& M);

// Some x with Mx = b, or nullopt iff b is outside the column span.
std::optional<std::vector<std::uint32_t>> solve(const FieldMatrix& M,
                                                const std::vector<std::uint32_t>& b);

// Column-wise solve: X with M X = B, or nullopt if any column is outside the
// span. Free variables are set to zero, so the witness is deterministic.
std::optional<FieldMatrix> solve_columns(const FieldMatrix& M, const FieldMatrix& B);

// Bases of the column space (pivot columns of M) and the nullspace.
// dim(image) + dim(kernel) == cols always.
std::pair<Subspace, Subspace> image_kernel(const FieldMatrix& M);

// Mutual containment, decided by solving each basis column against the other
// basis.
bool subspace_equal(const Subspace& U, const Subspace& V);

// Every column of `vectors` lies in the span of U.basis.
bool subspace_contains(const Subspace& U, const FieldMatrix& vectors);

// Inverse of a square invertible matrix; throws std::invalid_argument otherwise.
FieldMatrix inverse(const FieldMatrix& M);

}  // namespace phex
