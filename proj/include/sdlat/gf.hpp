#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace sdlat {

// Exact linear algebra over GF(p) for prime p < 256. The modulus travels
// with each matrix rather than being a compile-time constant; the hot
// enumeration kernels specialize p = 7 separately.

bool is_prime(unsigned v);

inline uint8_t fp_reduce(int v, uint8_t p) {
    int r = v % p;
    return uint8_t(r < 0 ? r + p : r);
}

inline uint8_t fp_add(uint8_t a, uint8_t b, uint8_t p) {
    unsigned t = unsigned(a) + b;
    return uint8_t(t >= p ? t - p : t);
}

inline uint8_t fp_sub(uint8_t a, uint8_t b, uint8_t p) {
    return a >= b ? uint8_t(a - b) : uint8_t(a + p - b);
}

inline uint8_t fp_mul(uint8_t a, uint8_t b, uint8_t p) {
    return uint8_t((unsigned(a) * b) % p);
}

inline uint8_t fp_neg(uint8_t a, uint8_t p) { return a ? uint8_t(p - a) : uint8_t(0); }

// Multiplicative inverse; throws std::domain_error on zero input.
uint8_t fp_inv(uint8_t a, uint8_t p);

struct FpMat {
    uint8_t p = 7;
    int rows = 0;
    int cols = 0;
    std::vector<uint8_t> a;  // row-major, entries in [0, p)

    FpMat() = default;
    FpMat(uint8_t p_, int rows_, int cols_)
        : p(p_), rows(rows_), cols(cols_), a(size_t(rows_) * size_t(cols_), 0) {}

    uint8_t& at(int r, int c) { return a[size_t(r) * cols + c]; }
    uint8_t at(int r, int c) const { return a[size_t(r) * cols + c]; }
    std::span<uint8_t> row(int r) { return {a.data() + size_t(r) * cols, size_t(cols)}; }
    std::span<const uint8_t> row(int r) const { return {a.data() + size_t(r) * cols, size_t(cols)}; }

    bool operator==(const FpMat&) const = default;

    static FpMat identity(uint8_t p, int n) {
        FpMat m(p, n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    static FpMat from_rows(uint8_t p, const std::vector<std::vector<int>>& rows);
};

struct RrefResult {
    FpMat m;
    int rank = 0;
    std::vector<int> pivots;
};

// Reduced row echelon form. Pivot selection scans for the first nonzero
// entry in column order, so the output is deterministic.
RrefResult rref(const FpMat& m);

// Basis of the right kernel {x : M x^T = 0}, one basis vector per row.
// Row count is always cols - rank.
FpMat kernel_basis(const FpMat& m);

FpMat matmul(const FpMat& x, const FpMat& y);
FpMat transpose(const FpMat& m);
bool is_zero(const FpMat& m);

// Inverse of a square matrix; empty result if singular.
std::vector<uint8_t> try_invert(const FpMat& m);

}  // namespace sdlat
