#include "ext2cat/intmat.hpp"

#include <cassert>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

namespace ext2cat {

i64 gcd_i64(i64 a, i64 b)
{
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        i64 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

IntMat IntMat::identity(int n)
{
    IntMat m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

IntMat IntMat::diag(const std::vector<i64>& d)
{
    IntMat m(static_cast<int>(d.size()), static_cast<int>(d.size()));
    for (int i = 0; i < m.rows; ++i) m.at(i, i) = d[i];
    return m;
}

IntMat IntMat::transposed() const
{
    IntMat t(cols, rows);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) t.at(j, i) = at(i, j);
    return t;
}

std::string IntMat::to_string() const
{
    std::ostringstream os;
    os << "[";
    for (int i = 0; i < rows; ++i) {
        os << "[";
        for (int j = 0; j < cols; ++j) {
            os << at(i, j);
            if (j + 1 < cols) os << ",";
        }
        os << "]";
        if (i + 1 < rows) os << ",";
    }
    os << "]";
    return os.str();
}

IntMat mat_mul(const IntMat& x, const IntMat& y)
{
    if (x.cols != y.rows) throw std::invalid_argument("mat_mul: shape mismatch");
    IntMat r(x.rows, y.cols);
    for (int i = 0; i < x.rows; ++i)
        for (int k = 0; k < x.cols; ++k) {
            i64 xv = x.at(i, k);
            if (xv == 0) continue;
            for (int j = 0; j < y.cols; ++j) r.at(i, j) += xv * y.at(k, j);
        }
    return r;
}

IntMat mat_add(const IntMat& x, const IntMat& y)
{
    assert(x.rows == y.rows && x.cols == y.cols);
    IntMat r = x;
    for (size_t i = 0; i < r.a.size(); ++i) r.a[i] += y.a[i];
    return r;
}

IntMat mat_sub(const IntMat& x, const IntMat& y)
{
    assert(x.rows == y.rows && x.cols == y.cols);
    IntMat r = x;
    for (size_t i = 0; i < r.a.size(); ++i) r.a[i] -= y.a[i];
    return r;
}

IntMat mat_neg(const IntMat& x)
{
    IntMat r = x;
    for (auto& v : r.a) v = -v;
    return r;
}

IntMat hstack(const IntMat& x, const IntMat& y)
{
    assert(x.rows == y.rows);
    IntMat r(x.rows, x.cols + y.cols);
    for (int i = 0; i < x.rows; ++i) {
        for (int j = 0; j < x.cols; ++j) r.at(i, j) = x.at(i, j);
        for (int j = 0; j < y.cols; ++j) r.at(i, x.cols + j) = y.at(i, j);
    }
    return r;
}

std::vector<i64> SnfResult::diag() const
{
    std::vector<i64> out;
    int n = std::min(d.rows, d.cols);
    for (int i = 0; i < n; ++i) out.push_back(d.at(i, i));
    return out;
}

namespace {

/* Elementary transforms applied simultaneously to the working matrix and
 * the accumulated witnesses. Row ops touch u (and uinv columns); column
 * ops touch v (and vinv rows). */
struct SnfWork {
    IntMat d, u, v, uinv, vinv;

    void swap_rows(int i, int j)
    {
        if (i == j) return;
        for (int c = 0; c < d.cols; ++c) std::swap(d.at(i, c), d.at(j, c));
        for (int c = 0; c < u.cols; ++c) std::swap(u.at(i, c), u.at(j, c));
        for (int r = 0; r < uinv.rows; ++r) std::swap(uinv.at(r, i), uinv.at(r, j));
    }
    void swap_cols(int i, int j)
    {
        if (i == j) return;
        for (int r = 0; r < d.rows; ++r) std::swap(d.at(r, i), d.at(r, j));
        for (int r = 0; r < v.rows; ++r) std::swap(v.at(r, i), v.at(r, j));
        for (int c = 0; c < vinv.cols; ++c) std::swap(vinv.at(i, c), vinv.at(j, c));
    }
    void negate_row(int i)
    {
        for (int c = 0; c < d.cols; ++c) d.at(i, c) = -d.at(i, c);
        for (int c = 0; c < u.cols; ++c) u.at(i, c) = -u.at(i, c);
        for (int r = 0; r < uinv.rows; ++r) uinv.at(r, i) = -uinv.at(r, i);
    }
    // row_i += k * row_j
    void add_row(int i, int j, i64 k)
    {
        if (k == 0) return;
        for (int c = 0; c < d.cols; ++c) d.at(i, c) += k * d.at(j, c);
        for (int c = 0; c < u.cols; ++c) u.at(i, c) += k * u.at(j, c);
        for (int r = 0; r < uinv.rows; ++r) uinv.at(r, j) -= k * uinv.at(r, i);
    }
    // col_i += k * col_j
    void add_col(int i, int j, i64 k)
    {
        if (k == 0) return;
        for (int r = 0; r < d.rows; ++r) d.at(r, i) += k * d.at(r, j);
        for (int r = 0; r < v.rows; ++r) v.at(r, i) += k * v.at(r, j);
        for (int c = 0; c < vinv.cols; ++c) vinv.at(j, c) -= k * vinv.at(i, c);
    }
};

bool is_diag_chain(const IntMat& m)
{
    int n = std::min(m.rows, m.cols);
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j)
            if (i != j && m.at(i, j) != 0) return false;
    i64 prev = -1;
    for (int i = 0; i < n; ++i) {
        i64 di = m.at(i, i);
        if (di < 0) return false;
        if (prev == 0 && di != 0) return false;
        if (prev > 0 && (di == 0 ? false : di % prev != 0)) return false;
        if (prev > 0 && di == 0) { /* zeros after positives are fine only at the tail */
            prev = 0;
            continue;
        }
        prev = di;
    }
    return true;
}

}  // namespace

SnfResult smith_form(IntMat m)
{
    SnfWork w;
    w.d = std::move(m);
    w.u = IntMat::identity(w.d.rows);
    w.uinv = IntMat::identity(w.d.rows);
    w.v = IntMat::identity(w.d.cols);
    w.vinv = IntMat::identity(w.d.cols);

    const int n = std::min(w.d.rows, w.d.cols);

    // Fast path: already diagonal with a divisibility chain. Keeping the
    // witnesses literally equal to the identity makes downstream
    // canonical forms reproducible.
    if (is_diag_chain(w.d)) {
        SnfResult res{w.d, w.u, w.v, w.uinv, w.vinv, 0};
        for (int i = 0; i < n; ++i)
            if (res.d.at(i, i) != 0) res.rank++;
        return res;
    }

    for (int k = 0; k < n; ++k) {
        // find minimal nonzero |entry| in the lower-right block
        int pi = -1, pj = -1;
        i64 best = 0;
        for (int i = k; i < w.d.rows; ++i)
            for (int j = k; j < w.d.cols; ++j) {
                i64 v = w.d.at(i, j) < 0 ? -w.d.at(i, j) : w.d.at(i, j);
                if (v != 0 && (pi < 0 || v < best)) {
                    best = v;
                    pi = i;
                    pj = j;
                }
            }
        if (pi < 0) break;  // block is zero
        w.swap_rows(k, pi);
        w.swap_cols(k, pj);

        for (;;) {
            bool clean = true;
            for (int i = k + 1; i < w.d.rows; ++i) {
                if (w.d.at(i, k) == 0) continue;
                i64 q = w.d.at(i, k) / w.d.at(k, k);
                w.add_row(i, k, -q);
                if (w.d.at(i, k) != 0) {
                    // remainder is smaller than the pivot: promote it
                    w.swap_rows(k, i);
                    clean = false;
                }
            }
            for (int j = k + 1; j < w.d.cols; ++j) {
                if (w.d.at(k, j) == 0) continue;
                i64 q = w.d.at(k, j) / w.d.at(k, k);
                w.add_col(j, k, -q);
                if (w.d.at(k, j) != 0) {
                    w.swap_cols(k, j);
                    clean = false;
                }
            }
            if (!clean) continue;
            // pivot row and column are clear; enforce pivot | rest of block
            bool divides = true;
            for (int i = k + 1; i < w.d.rows && divides; ++i)
                for (int j = k + 1; j < w.d.cols && divides; ++j)
                    if (w.d.at(i, j) % w.d.at(k, k) != 0) {
                        w.add_row(k, i, 1);
                        divides = false;
                    }
            if (divides) break;
        }
        if (w.d.at(k, k) < 0) w.negate_row(k);
    }

    SnfResult res{std::move(w.d), std::move(w.u), std::move(w.v), std::move(w.uinv), std::move(w.vinv), 0};
    for (int i = 0; i < n; ++i)
        if (res.d.at(i, i) != 0) res.rank++;
    return res;
}

IntMat lattice_kernel(const IntMat& m)
{
    SnfResult s = smith_form(m);
    int n = std::min(m.rows, m.cols);
    std::vector<int> keep;
    for (int j = 0; j < m.cols; ++j)
        if (j >= n || s.d.at(j, j) == 0) keep.push_back(j);
    IntMat k(m.cols, static_cast<int>(keep.size()));
    for (int r = 0; r < m.cols; ++r)
        for (size_t c = 0; c < keep.size(); ++c) k.at(r, static_cast<int>(c)) = s.v.at(r, keep[c]);
    return k;
}

std::optional<std::vector<i64>> solve_int(const IntMat& m, const std::vector<i64>& y)
{
    assert(static_cast<int>(y.size()) == m.rows);
    SnfResult s = smith_form(m);
    // m x = y  <=>  d (vinv x) = u y
    std::vector<i64> uy(m.rows, 0);
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.rows; ++j) uy[i] += s.u.at(i, j) * y[j];
    std::vector<i64> w(m.cols, 0);
    int n = std::min(m.rows, m.cols);
    for (int i = 0; i < m.rows; ++i) {
        i64 di = i < n ? s.d.at(i, i) : 0;
        if (di == 0) {
            if (uy[i] != 0) return std::nullopt;
        } else {
            if (uy[i] % di != 0) return std::nullopt;
            w[i] = uy[i] / di;
        }
    }
    std::vector<i64> x(m.cols, 0);
    for (int i = 0; i < m.cols; ++i)
        for (int j = 0; j < m.cols; ++j) x[i] += s.v.at(i, j) * w[j];
    return x;
}

IntMat hnf_basis(const IntMat& gens)
{
    // column elimination; h starts as a working copy and ends square
    IntMat h = gens;
    int r = h.rows, c = h.cols;
    if (r == 0) return IntMat(0, 0);
    if (c < r) throw std::invalid_argument("hnf_basis: not full rank");
    int col = 0;
    for (int row = 0; row < r; ++row) {
        // gcd-combine columns col..c-1 so that h(row, col) > 0 and the rest are 0
        for (;;) {
            int p = -1;
            i64 best = 0;
            for (int j = col; j < c; ++j) {
                i64 v = h.at(row, j) < 0 ? -h.at(row, j) : h.at(row, j);
                if (v != 0 && (p < 0 || v < best)) {
                    best = v;
                    p = j;
                }
            }
            if (p < 0) throw std::invalid_argument("hnf_basis: rank deficient");
            if (p != col)
                for (int i = 0; i < r; ++i) std::swap(h.at(i, p), h.at(i, col));
            bool clean = true;
            for (int j = col + 1; j < c; ++j) {
                if (h.at(row, j) == 0) continue;
                i64 q = h.at(row, j) / h.at(row, col);
                for (int i = 0; i < r; ++i) h.at(i, j) -= q * h.at(i, col);
                if (h.at(row, j) != 0) clean = false;
            }
            if (clean) break;
        }
        if (h.at(row, col) < 0)
            for (int i = 0; i < r; ++i) h.at(i, col) = -h.at(i, col);
        // reduce earlier columns at this row to canonical range [0, pivot)
        for (int j = 0; j < col; ++j) {
            i64 q = h.at(row, j) / h.at(row, col);
            if (h.at(row, j) % h.at(row, col) < 0) q -= 1;
            if (q != 0)
                for (int i = 0; i < r; ++i) h.at(i, j) -= q * h.at(i, col);
        }
        ++col;
    }
    IntMat out(r, r);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) out.at(i, j) = h.at(i, j);
    return out;
}

std::optional<std::vector<i64>> solve_lower_triangular(const IntMat& h, const std::vector<i64>& y)
{
    assert(h.rows == h.cols && static_cast<int>(y.size()) == h.rows);
    int n = h.rows;
    std::vector<i64> x(n, 0);
    for (int i = 0; i < n; ++i) {
        i64 acc = y[i];
        for (int j = 0; j < i; ++j) acc -= h.at(i, j) * x[j];
        if (h.at(i, i) == 0 || acc % h.at(i, i) != 0) return std::nullopt;
        x[i] = acc / h.at(i, i);
    }
    return x;
}

std::optional<IntMat> solve_lower_triangular_mat(const IntMat& h, const IntMat& b)
{
    assert(h.rows == b.rows);
    IntMat x(h.cols, b.cols);
    for (int j = 0; j < b.cols; ++j) {
        std::vector<i64> col(b.rows);
        for (int i = 0; i < b.rows; ++i) col[i] = b.at(i, j);
        auto sol = solve_lower_triangular(h, col);
        if (!sol) return std::nullopt;
        for (int i = 0; i < h.cols; ++i) x.at(i, j) = (*sol)[i];
    }
    return x;
}

}  // namespace ext2cat
