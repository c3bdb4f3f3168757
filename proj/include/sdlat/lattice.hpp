#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "sdlat/codes.hpp"

namespace sdlat {

// Construction A over GF(7): vectors x in Z^n with x mod 7 in C, in the
// coordinates of the 7-frame (so the geometric norm of x is sum(x_i^2)/7).

struct LatticeReport {
    int min_norm = 0;
    uint64_t kissing = 0;
    bool is_d20_plus = false;

    bool operator==(const LatticeReport&) const = default;
};

// Number of integer lifts x of a GF(7) codeword with sum(x_i^2) = 14 (norm 2).
// Zero coordinates lift only to 0; a nonzero value v lifts to the smaller of
// {v, v-7} unless switched to the alternative, and only the +-3/+-4 class has
// an alternative within reach of 14.
uint64_t norm2_lift_count(std::span<const uint8_t> codeword);

// Integer vectors with sum(x_i^2) = target_sum reducing into C, counted with
// the closed-form per-codeword lift count during a scalar-class enumeration
// pass. p = 7, any n <= 32, target_sum <= 20.
uint64_t norm_shell_count(const LinearCode& c, int target_sum, int threads = 0);

// One enumeration pass producing both the weight enumerator and the lattice
// report of a self-dual length-20 code over GF(7) with minimum weight >= 8.
// wide_minimal counts the minimal vectors with two or more coordinates of
// magnitude >= 2; it is zero exactly when every minimal vector satisfies the
// one-large-coordinate property (always the case when min_weight = 9).
struct CodeAnalysis {
    WeightEnumerator we;
    int min_weight = 0;
    uint64_t wide_minimal = 0;
    LatticeReport report;
};
CodeAnalysis analyze_code20(const LinearCode& c, int threads = 0);

// Lattice report only (min norm, kissing number, D20+ verdict).
LatticeReport kissing_number(const LinearCode& c, int threads = 0);

struct MinimalVector {
    std::array<int8_t, 20> x;

    auto operator<=>(const MinimalVector&) const = default;
};

// All integer vectors with sum(x_i^2) = 14 and x mod 7 in C, sorted
// lexicographically. Size equals the kissing number.
std::vector<MinimalVector> minimal_vectors(const LinearCode& c, int threads = 0);

// |det| of a triangular basis of {x in Z^n : x mod p in C}. Equals p^(n/2)
// exactly when A_p(C) is unimodular (C self-dual).
int64_t lattice_basis_determinant(const LinearCode& c);

std::string lattice_report_to_json(const LatticeReport& r);

}  // namespace sdlat
