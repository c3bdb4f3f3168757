#include "sdlat/gf.hpp"

namespace sdlat {

bool is_prime(unsigned v) {
    if (v < 2) return false;
    for (unsigned d = 2; d * d <= v; ++d)
        if (v % d == 0) return false;
    return true;
}

uint8_t fp_inv(uint8_t a, uint8_t p) {
    if (a == 0) throw std::domain_error("fp_inv: division by zero");
    // extended Euclid on (a, p)
    int t = 0, new_t = 1;
    int r = p, new_r = a;
    while (new_r != 0) {
        int q = r / new_r;
        t -= q * new_t;
        std::swap(t, new_t);
        r -= q * new_r;
        std::swap(r, new_r);
    }
    return fp_reduce(t, p);
}

FpMat FpMat::from_rows(uint8_t p, const std::vector<std::vector<int>>& rows) {
    FpMat m(p, int(rows.size()), rows.empty() ? 0 : int(rows[0].size()));
    for (int r = 0; r < m.rows; ++r) {
        if (int(rows[r].size()) != m.cols) throw std::invalid_argument("ragged rows");
        for (int c = 0; c < m.cols; ++c) m.at(r, c) = fp_reduce(rows[r][c], p);
    }
    return m;
}

RrefResult rref(const FpMat& in) {
    RrefResult res{in, 0, {}};
    FpMat& m = res.m;
    const uint8_t p = m.p;
    int pivot_row = 0;
    for (int col = 0; col < m.cols && pivot_row < m.rows; ++col) {
        int sel = -1;
        for (int r = pivot_row; r < m.rows; ++r)
            if (m.at(r, col) != 0) { sel = r; break; }
        if (sel < 0) continue;
        if (sel != pivot_row)
            for (int c = 0; c < m.cols; ++c) std::swap(m.at(sel, c), m.at(pivot_row, c));
        uint8_t inv = fp_inv(m.at(pivot_row, col), p);
        if (inv != 1)
            for (int c = col; c < m.cols; ++c) m.at(pivot_row, c) = fp_mul(m.at(pivot_row, c), inv, p);
        for (int r = 0; r < m.rows; ++r) {
            if (r == pivot_row) continue;
            uint8_t f = m.at(r, col);
            if (f == 0) continue;
            for (int c = col; c < m.cols; ++c)
                m.at(r, c) = fp_sub(m.at(r, c), fp_mul(f, m.at(pivot_row, c), p), p);
        }
        res.pivots.push_back(col);
        ++pivot_row;
    }
    res.rank = pivot_row;
    return res;
}

FpMat kernel_basis(const FpMat& in) {
    RrefResult r = rref(in);
    const uint8_t p = in.p;
    const int n = in.cols;
    std::vector<bool> is_pivot(n, false);
    for (int c : r.pivots) is_pivot[c] = true;

    FpMat k(p, n - r.rank, n);
    int out = 0;
    for (int free_col = 0; free_col < n; ++free_col) {
        if (is_pivot[free_col]) continue;
        k.at(out, free_col) = 1;
        for (int i = 0; i < r.rank; ++i)
            k.at(out, r.pivots[i]) = fp_neg(r.m.at(i, free_col), p);
        ++out;
    }
    return k;
}

FpMat matmul(const FpMat& x, const FpMat& y) {
    if (x.cols != y.rows || x.p != y.p) throw std::invalid_argument("matmul: shape/field mismatch");
    FpMat z(x.p, x.rows, y.cols);
    for (int i = 0; i < x.rows; ++i)
        for (int j = 0; j < y.cols; ++j) {
            unsigned acc = 0;
            for (int t = 0; t < x.cols; ++t) acc += unsigned(x.at(i, t)) * y.at(t, j);
            z.at(i, j) = uint8_t(acc % x.p);
        }
    return z;
}

FpMat transpose(const FpMat& m) {
    FpMat t(m.p, m.cols, m.rows);
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j) t.at(j, i) = m.at(i, j);
    return t;
}

bool is_zero(const FpMat& m) {
    for (uint8_t v : m.a)
        if (v != 0) return false;
    return true;
}

std::vector<uint8_t> try_invert(const FpMat& m) {
    if (m.rows != m.cols) return {};
    const int n = m.rows;
    FpMat aug(m.p, n, 2 * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) aug.at(i, j) = m.at(i, j);
        aug.at(i, n + i) = 1;
    }
    RrefResult r = rref(aug);
    if (r.rank != n) return {};
    for (int i = 0; i < n; ++i)
        if (r.pivots[i] != i) return {};
    std::vector<uint8_t> inv(size_t(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) inv[size_t(i) * n + j] = r.m.at(i, n + j);
    return inv;
}

}  // namespace sdlat
