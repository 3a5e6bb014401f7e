#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace ext2cat {

using i64 = long long;

/* Dense integer matrix. Rows/cols may be zero (maps to/from the zero
 * module show up everywhere), so every routine has to tolerate empty
 * shapes. */
struct IntMat {
    int rows = 0;
    int cols = 0;
    std::vector<i64> a;

    IntMat() = default;
    IntMat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, 0) {}

    i64& at(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
    i64 at(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

    static IntMat identity(int n);
    static IntMat zero(int r, int c) { return IntMat(r, c); }
    static IntMat diag(const std::vector<i64>& d);

    bool operator==(const IntMat& o) const { return rows == o.rows && cols == o.cols && a == o.a; }

    IntMat transposed() const;
    std::string to_string() const;
};

IntMat mat_mul(const IntMat& x, const IntMat& y);
IntMat mat_add(const IntMat& x, const IntMat& y);
IntMat mat_sub(const IntMat& x, const IntMat& y);
IntMat mat_neg(const IntMat& x);
IntMat hstack(const IntMat& x, const IntMat& y);

/* u * a * v = d with u, v unimodular over Z; d diagonal, nonnegative,
 * with d[i] | d[i+1]. uinv, vinv are the tracked inverses. */
struct SnfResult {
    IntMat d, u, v, uinv, vinv;
    int rank = 0;  // number of nonzero diagonal entries
    std::vector<i64> diag() const;
};

SnfResult smith_form(IntMat m);

/* Basis of the integer kernel lattice {x : m x = 0}, one column per
 * basis vector. */
IntMat lattice_kernel(const IntMat& m);

/* One integer solution of m x = y, if any. */
std::optional<std::vector<i64>> solve_int(const IntMat& m, const std::vector<i64>& y);

/* Column-style Hermite basis of the column lattice of `gens`, which must
 * have full row rank. Result is square lower-triangular with positive
 * diagonal and reduced off-diagonal entries, canonical for the lattice. */
IntMat hnf_basis(const IntMat& gens);

/* Solve h x = y for lower-triangular h (exact division required). */
std::optional<std::vector<i64>> solve_lower_triangular(const IntMat& h, const std::vector<i64>& y);

/* Column-wise solve h X = B; nullopt if some column fails. */
std::optional<IntMat> solve_lower_triangular_mat(const IntMat& h, const IntMat& b);

i64 gcd_i64(i64 a, i64 b);

}  // namespace ext2cat
