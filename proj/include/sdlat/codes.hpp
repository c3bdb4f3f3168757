#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sdlat/gf.hpp"

namespace sdlat {

// A linear [n,k] code over GF(p), stored as its reduced-row-echelon generator
// matrix. Two codes are the same subspace iff their stored generators are
// equal, so operator== is subspace equality (not monomial equivalence).
struct LinearCode {
    uint8_t p = 7;
    int n = 0;
    int k = 0;
    FpMat gen;  // k x n, RREF, rank k

    bool operator==(const LinearCode&) const = default;
};

// Exact weight distribution A_0..A_n.
struct WeightEnumerator {
    std::vector<uint64_t> coeff;

    bool operator==(const WeightEnumerator&) const = default;
    uint64_t total() const {
        uint64_t s = 0;
        for (uint64_t c : coeff) s += c;
        return s;
    }
};

// Row space of an arbitrary matrix.
LinearCode code_from_matrix(const FpMat& f);

LinearCode dual(const LinearCode& c);

// k = n/2 and G G^T = 0.
bool is_self_dual(const LinearCode& c);

bool code_contains(const LinearCode& c, std::span<const uint8_t> v);

// v reduced modulo the code: pivot coordinates eliminated against the RREF
// generator. Zero result means v is a codeword.
std::vector<uint8_t> reduce_mod_code(const LinearCode& c, std::span<const uint8_t> v);

// The [19,10] cyclic quadratic residue code over GF(7). x^19 - 1 splits over
// GF(7) as (x - 1) times six irreducible cubics; the generator polynomial is
// the product of the three cubics belonging to the quadratic residue classes
// mod 19.
LinearCode qr_code_19();

// Extends qr_code_19 by the coordinate lambda * sum(c), choosing lambda so
// the result is self-dual. Produces a self-dual [20,10,9] code.
LinearCode extend_qr20();

// Exact weight enumerator by scalar-class enumeration ((p^k - 1)/(p - 1)
// representatives). Guard: p^k <= 2^36. threads = 0 means hardware count.
WeightEnumerator weight_enumerator(const LinearCode& c, int threads = 0);

// Smallest nonzero codeword weight, full enumeration. stop_floor is an
// optional known lower bound: the scan stops once it is reached.
int minimum_weight(const LinearCode& c, int threads = 0, int stop_floor = 1);

// Minimum weight via two complementary information sets: enumerates all
// codewords with at most floor(max_d/2) nonzero symbols on one side, which
// covers every codeword of weight <= max_d. Returns nullopt if the minimum
// exceeds max_d. If abort_below > 0, returns as soon as any codeword of
// weight < abort_below is seen (the value is then an upper bound, not
// necessarily the minimum). Requires n = 2k; falls back to full enumeration
// when the pivot complement is not an information set.
std::optional<int> bounded_minimum_weight(const LinearCode& c, int max_d, int abort_below = 0);

// [20,10] code with generator (I | X), X = [[A, B], [-B^T, A^T]] built from
// 5x5 circulants (negacirculants when nega is set) with first rows a and b.
LinearCode four_circulant(std::span<const uint8_t> a, std::span<const uint8_t> b, bool nega);

// [20,10] code with generator (I | R), R the 10x10 circulant with first row r.
LinearCode double_circulant(std::span<const uint8_t> r);

// Neighbor C(x) = <C ∩ <x>^perp, x> of a self-dual code, for x with x.x = 0.
LinearCode neighbor(const LinearCode& c, std::span<const uint8_t> x);

// --- code file format -------------------------------------------------------
// JSON: {"p": int, "n": int, "k": int, "generator": [[int,...],...]};
// writers emit the RREF generator, readers accept any full-rank matrix.

std::string code_to_json(const LinearCode& c);
LinearCode code_from_json(const std::string& text);
void save_code(const LinearCode& c, const std::string& path);
LinearCode load_code(const std::string& path);

}  // namespace sdlat
