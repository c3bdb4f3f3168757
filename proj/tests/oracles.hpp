#pragma once

// Independent reference implementations used only by tests. Each one takes
// the dumbest correct route (full message scans, integer ball enumeration,
// per-coordinate lift DFS) so that agreement with the library's optimized
// paths is meaningful.

#include <vector>

#include "sdlat/codes.hpp"
#include "sdlat/gf.hpp"
#include "sdlat/rng.hpp"

namespace oracles {

using namespace sdlat;

// weight distribution by scanning all p^k messages
inline WeightEnumerator naive_weight_enumerator(const LinearCode& c) {
    WeightEnumerator we;
    we.coeff.assign(size_t(c.n) + 1, 0);
    uint64_t total = 1;
    for (int i = 0; i < c.k; ++i) total *= c.p;
    std::vector<uint8_t> msg(size_t(c.k), 0), cw(size_t(c.n));
    for (uint64_t m = 0; m < total; ++m) {
        uint64_t t = m;
        for (int i = 0; i < c.k; ++i) {
            msg[size_t(i)] = uint8_t(t % c.p);
            t /= c.p;
        }
        std::fill(cw.begin(), cw.end(), uint8_t(0));
        for (int i = 0; i < c.k; ++i) {
            if (!msg[size_t(i)]) continue;
            for (int j = 0; j < c.n; ++j)
                cw[size_t(j)] = fp_add(cw[size_t(j)], fp_mul(msg[size_t(i)], c.gen.at(i, j), c.p), c.p);
        }
        int w = 0;
        for (uint8_t v : cw) w += v != 0;
        ++we.coeff[size_t(w)];
    }
    return we;
}

// integer vectors with sum of squares = target reducing into a GF(7) code,
// by scanning the whole box |x_i| <= 3 (4^2 already exceeds 14)
inline uint64_t ball_shell_count(const LinearCode& c, int target) {
    uint64_t count = 0;
    std::vector<int> x(size_t(c.n), -3);
    std::vector<uint8_t> mod(size_t(c.n));
    for (;;) {
        int sum = 0;
        for (int v : x) sum += v * v;
        if (sum == target) {
            for (int i = 0; i < c.n; ++i) mod[size_t(i)] = uint8_t(((x[size_t(i)] % 7) + 7) % 7);
            if (code_contains(c, mod)) ++count;
        }
        int i = 0;
        while (i < c.n && x[size_t(i)] == 3) {
            x[size_t(i)] = -3;
            ++i;
        }
        if (i == c.n) break;
        ++x[size_t(i)];
    }
    return count;
}

// lifts of one codeword hitting a target sum of squares, by DFS over the
// per-coordinate candidates {v-7, v} (and 0 for zero coordinates)
inline uint64_t naive_lift_count(std::span<const uint8_t> cw, int target) {
    uint64_t count = 0;
    auto rec = [&](auto&& self, size_t i, int sum) -> void {
        if (sum > target) return;
        if (i == cw.size()) {
            if (sum == target) ++count;
            return;
        }
        int v = cw[i];
        if (v == 0) {
            self(self, i + 1, sum);
            return;
        }
        self(self, i + 1, sum + v * v);
        self(self, i + 1, sum + (v - 7) * (v - 7));
    };
    rec(rec, 0, 0);
    return count;
}

// random full-rank code over GF(p)
inline LinearCode random_code(Rng& rng, uint8_t p, int n, int k) {
    for (;;) {
        FpMat m(p, k, n);
        for (auto& v : m.a) v = uint8_t(rng.below(p));
        LinearCode c = code_from_matrix(m);
        if (c.k == k) return c;
    }
}

// random self-dual [4,2] code over GF(7): generator (I | X) with X X^T = -I
inline LinearCode random_self_dual_4_2(Rng& rng) {
    for (;;) {
        FpMat g(7, 2, 4);
        g.at(0, 0) = 1;
        g.at(1, 1) = 1;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) g.at(i, 2 + j) = uint8_t(rng.below(7));
        LinearCode c = code_from_matrix(g);
        if (is_self_dual(c)) return c;
    }
}

// signed column permutation of a generator matrix (monomial transformation)
inline LinearCode monomial_transform(const LinearCode& c, Rng& rng) {
    std::vector<int> perm(size_t(c.n));
    for (int i = 0; i < c.n; ++i) perm[size_t(i)] = i;
    for (size_t i = perm.size(); i > 1; --i) std::swap(perm[i - 1], perm[rng.below(i)]);
    FpMat m(c.p, c.k, c.n);
    for (int j = 0; j < c.n; ++j) {
        uint8_t sign = rng.coin() ? 1 : uint8_t(c.p - 1);
        for (int i = 0; i < c.k; ++i) m.at(i, perm[size_t(j)]) = fp_mul(c.gen.at(i, j), sign, c.p);
    }
    return code_from_matrix(m);
}

}  // namespace oracles
