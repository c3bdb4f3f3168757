#include "sdlat/lattice.hpp"

#include <algorithm>
#include <cstdlib>

#include "json.hpp"
#include "sdlat/enumerate.hpp"

namespace sdlat {

namespace {

// Lift counting over GF(7). A nonzero coordinate value falls in one of three
// +- classes with minimal lift squares 1, 4, 9 and alternative squares 36,
// 25, 16. With base = n1 + 4*n2 + 9*n3, only the third class's alternative
// (+7 per switch) can still reach a target sum <= 20, so the number of lifts
// hitting the target is C(n3, s) where base + 7s = target.
constexpr int kMaxProfile = 33;

struct LiftTables {
    // packed: low 32 bits = target 14 count, high 32 bits = target 7 count
    std::vector<uint64_t> packed;
    uint64_t binom[kMaxProfile][kMaxProfile] = {};

    LiftTables() : packed(size_t(kMaxProfile) * kMaxProfile * kMaxProfile, 0) {
        for (int n = 0; n < kMaxProfile; ++n) {
            binom[n][0] = 1;
            for (int k = 1; k <= n; ++k)
                binom[n][k] = binom[n - 1][k - 1] + (k <= n - 1 ? binom[n - 1][k] : 0);
        }
        for (int n1 = 0; n1 < kMaxProfile; ++n1)
            for (int n2 = 0; n2 < kMaxProfile; ++n2)
                for (int n3 = 0; n3 < kMaxProfile; ++n3) {
                    uint64_t v = uint64_t(count(n1, n2, n3, 14)) | (uint64_t(count(n1, n2, n3, 7)) << 32);
                    packed[idx(n1, n2, n3)] = v;
                }
    }

    static size_t idx(int n1, int n2, int n3) {
        return (size_t(n1) * kMaxProfile + size_t(n2)) * kMaxProfile + size_t(n3);
    }

    uint64_t count(int n1, int n2, int n3, int target) const {
        int base = n1 + 4 * n2 + 9 * n3;
        if (base == 0 || base > target) return 0;
        int rem = target - base;
        if (rem % 7 != 0) return 0;
        int s = rem / 7;
        if (s > n3) return 0;
        return binom[n3][s];
    }
};

const LiftTables& lift_tables() {
    static const LiftTables t;
    return t;
}

struct Profile {
    int n1, n2, n3;
};

inline Profile profile_of(const uint8_t* cw, int n) {
    // per-value packed class increments: byte lanes n1 | n2<<8 | n3<<16
    static constexpr uint32_t kLut[7] = {0, 1, 1u << 8, 1u << 16, 1u << 16, 1u << 8, 1};
    uint32_t acc = 0;
    for (int i = 0; i < n; ++i) acc += kLut[cw[i]];
    return {int(acc & 0xFF), int((acc >> 8) & 0xFF), int((acc >> 16) & 0xFF)};
}

// Scalar multiples permute the +- classes: the profiles of s*c over
// s = 1..6 are (n1,n2,n3), (n3,n1,n2), (n2,n3,n1), each twice.
inline uint64_t lift_sum_all_scalars(const LiftTables& t, const Profile& p) {
    return 2 * (t.packed[LiftTables::idx(p.n1, p.n2, p.n3)] +
                t.packed[LiftTables::idx(p.n3, p.n1, p.n2)] +
                t.packed[LiftTables::idx(p.n2, p.n3, p.n1)]);
}

void require_gf7(const LinearCode& c) {
    if (c.p != 7) throw std::invalid_argument("lattice operations require p = 7");
}

}  // namespace

uint64_t norm2_lift_count(std::span<const uint8_t> codeword) {
    Profile p = profile_of(codeword.data(), int(codeword.size()));
    return lift_tables().count(p.n1, p.n2, p.n3, 14);
}

uint64_t norm_shell_count(const LinearCode& c, int target_sum, int threads) {
    require_gf7(c);
    if (target_sum < 1 || target_sum > 20) throw std::invalid_argument("norm_shell_count: target out of range");
    if (c.k == 0) return 0;
    const LiftTables& t = lift_tables();
    const int n = c.n;
    struct Tally {
        uint64_t count = 0;
    };
    auto locals = for_each_representative<Tally>(c, threads, [&t, n, target_sum](Tally& tal, const uint8_t* cw) {
        Profile p = profile_of(cw, n);
        tal.count += 2 * (t.count(p.n1, p.n2, p.n3, target_sum) + t.count(p.n3, p.n1, p.n2, target_sum) +
                          t.count(p.n2, p.n3, p.n1, target_sum));
    });
    uint64_t total = 0;
    for (const auto& l : locals) total += l.count;
    return total;
}

CodeAnalysis analyze_code20(const LinearCode& c, int threads) {
    require_gf7(c);
    if (c.n != 20) throw std::invalid_argument("analyze_code20: length must be 20");
    if (!is_self_dual(c)) throw std::invalid_argument("analyze_code20: code must be self-dual");

    const LiftTables& t = lift_tables();
    struct Tally {
        uint64_t w[21] = {};
        uint64_t packed = 0;  // low: norm-2 lifts, high: norm-1 lifts
        uint64_t wide = 0;    // norm-2 lifts with >= 2 coordinates of magnitude >= 2
    };
    auto locals = for_each_representative<Tally>(c, threads, [&t](Tally& tal, const uint8_t* cw) {
        Profile p = profile_of(cw, 20);
        ++tal.w[p.n1 + p.n2 + p.n3];
        tal.packed += lift_sum_all_scalars(t, p);
        // a norm-2 lift never switches to an alternative representative, so
        // its large coordinates are exactly the second- and third-class ones
        const Profile rots[3] = {{p.n1, p.n2, p.n3}, {p.n3, p.n1, p.n2}, {p.n2, p.n3, p.n1}};
        for (const Profile& r : rots)
            if (r.n2 + r.n3 >= 2)
                tal.wide += 2 * (t.packed[LiftTables::idx(r.n1, r.n2, r.n3)] & 0xFFFFFFFFull);
    });

    CodeAnalysis out;
    out.we.coeff.assign(21, 0);
    uint64_t packed = 0;
    for (const auto& l : locals) {
        for (int i = 0; i <= 20; ++i) out.we.coeff[size_t(i)] += l.w[i];
        packed += l.packed;
        out.wide_minimal += l.wide;
    }
    for (auto& x : out.we.coeff) x *= 6;
    out.we.coeff[0] = 1;

    out.min_weight = 0;
    for (int i = 1; i <= 20; ++i)
        if (out.we.coeff[size_t(i)]) { out.min_weight = i; break; }
    if (out.min_weight < 8)
        throw std::invalid_argument("lattice report requires minimum weight >= 8 (got " +
                                    std::to_string(out.min_weight) + ")");

    uint64_t norm2 = packed & 0xFFFFFFFFull;
    uint64_t norm1 = packed >> 32;
    if (norm1 != 0) throw std::runtime_error("analyze_code20: unexpected norm-1 vector");
    if (norm2 == 0) throw std::runtime_error("analyze_code20: empty norm-2 shell");
    out.report.min_norm = 2;
    out.report.kissing = norm2;
    out.report.is_d20_plus = norm2 == 760;
    return out;
}

LatticeReport kissing_number(const LinearCode& c, int threads) {
    return analyze_code20(c, threads).report;
}

namespace {

// minimal lift of a value, and the alternative for the +-3 class
constexpr int8_t kMinRep[7] = {0, 1, 2, 3, -3, -2, -1};

void expand_lifts(const uint8_t* scaled, std::vector<MinimalVector>& out) {
    Profile p = profile_of(scaled, 20);
    int base = p.n1 + 4 * p.n2 + 9 * p.n3;
    if (base == 0 || base > 14 || (14 - base) % 7 != 0) return;
    int switches = (14 - base) / 7;
    if (switches > p.n3) return;

    int class3[20], n3 = 0;
    MinimalVector mv{};
    for (int i = 0; i < 20; ++i) {
        uint8_t v = scaled[i];
        mv.x[size_t(i)] = kMinRep[v];
        if (v == 3 || v == 4) class3[n3++] = i;
    }
    // nonzero codeword: base >= 1, so base + 7s = 14 leaves s in {0, 1}
    if (switches == 0) {
        out.push_back(mv);
        return;
    }
    for (int j = 0; j < n3; ++j) {
        MinimalVector w = mv;
        int i = class3[j];
        w.x[size_t(i)] = scaled[i] == 3 ? int8_t(-4) : int8_t(4);
        out.push_back(w);
    }
}

}  // namespace

std::vector<MinimalVector> minimal_vectors(const LinearCode& c, int threads) {
    require_gf7(c);
    if (c.n != 20) throw std::invalid_argument("minimal_vectors: length must be 20");
    if (!is_self_dual(c)) throw std::invalid_argument("minimal_vectors: code must be self-dual");

    const LiftTables& t = lift_tables();
    struct Local {
        std::vector<MinimalVector> vecs;
    };
    auto locals = for_each_representative<Local>(c, threads, [&t](Local& loc, const uint8_t* cw) {
        Profile p = profile_of(cw, 20);
        if ((lift_sum_all_scalars(t, p) & 0xFFFFFFFFull) == 0) return;
        uint8_t scaled[20];
        for (int s = 1; s <= 6; ++s) {
            for (int i = 0; i < 20; ++i) scaled[i] = uint8_t((s * cw[i]) % 7);
            expand_lifts(scaled, loc.vecs);
        }
    });

    std::vector<MinimalVector> all;
    for (auto& l : locals) all.insert(all.end(), l.vecs.begin(), l.vecs.end());
    std::sort(all.begin(), all.end());
    return all;
}

int64_t lattice_basis_determinant(const LinearCode& c) {
    if (!is_self_dual(c)) throw std::invalid_argument("lattice_basis_determinant: code must be self-dual");
    const int n = c.n;
    const int rows = c.k + n;
    std::vector<std::vector<int64_t>> m(size_t(rows), std::vector<int64_t>(size_t(n), 0));
    for (int i = 0; i < c.k; ++i)
        for (int j = 0; j < n; ++j) m[size_t(i)][size_t(j)] = c.gen.at(i, j);
    for (int i = 0; i < n; ++i) m[size_t(c.k + i)][size_t(i)] = c.p;

    // integer row reduction to a triangular basis: repeatedly reduce the
    // column by its smallest nonzero entry until one entry remains
    for (int col = 0; col < n; ++col) {
        for (;;) {
            int best = -1;
            int nonzero = 0;
            for (int r = col; r < rows; ++r) {
                if (m[size_t(r)][size_t(col)] == 0) continue;
                ++nonzero;
                if (best < 0 || std::llabs(m[size_t(r)][size_t(col)]) <
                                    std::llabs(m[size_t(best)][size_t(col)]))
                    best = r;
            }
            if (best < 0) throw std::runtime_error("lattice basis is not full rank");
            if (nonzero == 1) {
                std::swap(m[size_t(col)], m[size_t(best)]);
                break;
            }
            int64_t pivot = m[size_t(best)][size_t(col)];
            for (int r = col; r < rows; ++r) {
                if (r == best || m[size_t(r)][size_t(col)] == 0) continue;
                int64_t q = m[size_t(r)][size_t(col)] / pivot;
                for (int j = 0; j < n; ++j) m[size_t(r)][size_t(j)] -= q * m[size_t(best)][size_t(j)];
            }
        }
    }
    int64_t det = 1;
    for (int i = 0; i < n; ++i) det *= m[size_t(i)][size_t(i)];
    return std::llabs(det);
}

std::string lattice_report_to_json(const LatticeReport& r) {
    nlohmann::json j;
    j["min_norm"] = r.min_norm;
    j["kissing"] = r.kissing;
    j["is_d20_plus"] = r.is_d20_plus;
    return j.dump();
}

}  // namespace sdlat
