#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sdlat/codes.hpp"
#include "sdlat/gf.hpp"

namespace sdlat {

// n x n matrix with entries +-1.
struct SignMatrix {
    int n = 0;
    std::vector<int8_t> a;  // row-major

    SignMatrix() = default;
    explicit SignMatrix(int n_) : n(n_), a(size_t(n_) * size_t(n_), 1) {}
    int8_t& at(int r, int c) { return a[size_t(r) * n + c]; }
    int8_t at(int r, int c) const { return a[size_t(r) * n + c]; }
    bool operator==(const SignMatrix&) const = default;
};

// Orientation of the complete graph: dominates(u,v) xor dominates(v,u) for
// every pair u != v.
struct Tournament {
    int n = 0;
    std::vector<uint8_t> adj;  // adj[u*n+v] = 1 iff u beats v

    Tournament() = default;
    explicit Tournament(int n_) : n(n_), adj(size_t(n_) * size_t(n_), 0) {}
    uint8_t& at(int u, int v) { return adj[size_t(u) * n + v]; }
    uint8_t at(int u, int v) const { return adj[size_t(u) * n + v]; }
};

// H H^T = n I over the integers.
bool is_hadamard(const SignMatrix& h);

// Hadamard and H + H^T = 2I.
bool is_skew_hadamard(const SignMatrix& h);

// Paley construction for prime q = 3 (mod 4): order q+1, rows/columns
// indexed by {inf} union GF(q), off-diagonal core entries given by the
// quadratic residue character of the index difference.
SignMatrix paley_skew_hadamard(int q);

// Normalize H to have an all-plus first row by diagonal conjugation, strip
// the border, and read the core as a tournament adjacency.
Tournament tournament_from_skew(const SignMatrix& h);

// Inverse of tournament_from_skew. Requires a doubly regular input.
SignMatrix skew_from_tournament(const Tournament& t);

// Every out-degree (n-1)/2 and every ordered pair of distinct vertices with
// exactly (n-3)/4 common out-neighbors.
bool is_doubly_regular(const Tournament& t);

// Randomized hill climbing for a doubly regular tournament of order
// n = 3 (mod 4): cost is the sum of squared defects of the out-degrees and
// the pairwise common-out-neighbor counts, moves flip a single arc, plateaus
// trigger a restart. Restarts run in parallel; the successful restart with
// the smallest index wins, so the result depends only on the seed.
// Throws std::runtime_error when max_restarts is exhausted.
Tournament search_drt(int n, uint64_t seed, int max_restarts = 20000, int threads = 0);

// (H + 2I) mod p, the generator matrix of the derived code.
FpMat hadamard_code_matrix(const SignMatrix& h, uint8_t p = 7);

// Seeded tournament searches at order 19 until one yields a derived code
// whose weight enumerator differs from the Paley class, i.e. a representative
// of the second skew-Hadamard equivalence class of order 20.
SignMatrix find_second_skew_class(uint64_t seed, int max_seeds = 64, int threads = 0);

// --- sign matrix file format --------------------------------------------------
// First line n, then n lines of n space-separated entries from {1, -1}.

std::string sign_matrix_to_text(const SignMatrix& h);
SignMatrix sign_matrix_from_text(const std::string& text);
void save_sign_matrix(const SignMatrix& h, const std::string& path);
SignMatrix load_sign_matrix(const std::string& path);

}  // namespace sdlat
