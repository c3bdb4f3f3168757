#include "sdlat/codes.hpp"

#include <algorithm>
#include <climits>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "sdlat/enumerate.hpp"

namespace sdlat {

namespace {

void check_enumerable(const LinearCode& c) {
    // p^k <= 2^36 keeps a full scalar-class scan tractable
    uint64_t size = 1;
    const uint64_t cap = 1ull << 36;
    for (int i = 0; i < c.k; ++i) {
        size *= c.p;
        if (size > cap) throw std::invalid_argument("weight enumeration too large: p^k exceeds 2^36");
    }
}

int nonzero_count(const uint8_t* v, int n) {
    int w = 0;
    for (int i = 0; i < n; ++i) w += v[i] != 0;
    return w;
}

}  // namespace

uint64_t representative_count(uint8_t p, int k) {
    uint64_t total = 0, power = 1;
    for (int i = 0; i < k; ++i) {
        total += power;
        power *= p;
    }
    return total;
}

LinearCode code_from_matrix(const FpMat& f) {
    if (!is_prime(f.p)) throw std::invalid_argument("modulus must be prime");
    RrefResult r = rref(f);
    LinearCode c;
    c.p = f.p;
    c.n = f.cols;
    c.k = r.rank;
    c.gen = FpMat(f.p, r.rank, f.cols);
    for (int i = 0; i < r.rank; ++i)
        for (int j = 0; j < f.cols; ++j) c.gen.at(i, j) = r.m.at(i, j);
    return c;
}

LinearCode dual(const LinearCode& c) {
    return code_from_matrix(kernel_basis(c.gen));
}

bool is_self_dual(const LinearCode& c) {
    if (c.n == 0 || c.n % 2 != 0 || c.k != c.n / 2) return false;
    return is_zero(matmul(c.gen, transpose(c.gen)));
}

std::vector<uint8_t> reduce_mod_code(const LinearCode& c, std::span<const uint8_t> v) {
    if (int(v.size()) != c.n) throw std::invalid_argument("vector length mismatch");
    std::vector<uint8_t> r(v.begin(), v.end());
    for (int i = 0; i < c.k; ++i) {
        int pivot = -1;
        for (int j = 0; j < c.n; ++j)
            if (c.gen.at(i, j) != 0) { pivot = j; break; }
        uint8_t f = r[size_t(pivot)];
        if (f == 0) continue;
        for (int j = pivot; j < c.n; ++j)
            r[size_t(j)] = fp_sub(r[size_t(j)], fp_mul(f, c.gen.at(i, j), c.p), c.p);
    }
    return r;
}

bool code_contains(const LinearCode& c, std::span<const uint8_t> v) {
    auto r = reduce_mod_code(c, v);
    return std::all_of(r.begin(), r.end(), [](uint8_t x) { return x == 0; });
}

// --- quadratic residue code --------------------------------------------------

namespace {

using Poly = std::vector<uint8_t>;  // coeff[i] multiplies x^i

Poly poly_trim(Poly a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
    return a;
}

Poly poly_mul(const Poly& a, const Poly& b, uint8_t p) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j)
            r[i + j] = fp_add(r[i + j], fp_mul(a[i], b[j], p), p);
    return r;
}

// remainder of a modulo monic b
Poly poly_mod(Poly a, const Poly& b, uint8_t p) {
    a = poly_trim(std::move(a));
    const size_t db = b.size() - 1;
    while (a.size() > db) {
        uint8_t lead = a.back();
        size_t shift = a.size() - 1 - db;
        if (lead != 0)
            for (size_t i = 0; i <= db; ++i)
                a[shift + i] = fp_sub(a[shift + i], fp_mul(lead, b[i], p), p);
        a.pop_back();
        a = poly_trim(std::move(a));
    }
    return a;
}

}  // namespace

LinearCode qr_code_19() {
    const uint8_t p = 7;
    Poly x19m1(20, 0);
    x19m1[0] = p - 1;
    x19m1[19] = 1;

    // 7 has order 3 mod 19, so x^19 - 1 = (x - 1) * (six irreducible cubics).
    // Trial division over all monic cubics finds exactly those six.
    std::vector<Poly> cubics;
    for (int c0 = 0; c0 < 7; ++c0)
        for (int c1 = 0; c1 < 7; ++c1)
            for (int c2 = 0; c2 < 7; ++c2) {
                Poly f = {uint8_t(c0), uint8_t(c1), uint8_t(c2), 1};
                if (poly_mod(x19m1, f, p).empty()) cubics.push_back(f);
            }
    if (cubics.size() != 6) throw std::runtime_error("qr_code_19: expected six cubic factors of x^19-1");

    // theta(x) = sum of x^r over the quadratic residues r mod 19. Evaluated at
    // any root of a cubic factor it gives the Gaussian period of that factor's
    // residue class, so theta mod f is a constant, and the constant takes one
    // value on the residue-class cubics and the other on the rest. The two
    // choices yield the two (equivalent) quadratic residue codes; we take the
    // cubics where the period equals 1.
    static const int kResidues[9] = {1, 4, 5, 6, 7, 9, 11, 16, 17};
    Poly theta(18, 0);
    for (int r : kResidues) theta[size_t(r)] = 1;

    std::vector<Poly> chosen;
    for (const Poly& f : cubics) {
        Poly rem = poly_mod(theta, f, p);
        if (rem.size() > 1) throw std::runtime_error("qr_code_19: Gaussian period is not constant");
        uint8_t value = rem.empty() ? 0 : rem[0];
        if (value == 1) chosen.push_back(f);
    }
    if (chosen.size() != 3) throw std::runtime_error("qr_code_19: residue-class cubics not found");

    Poly g = {1};
    for (const Poly& f : chosen) g = poly_mul(g, f, p);
    if (g.size() != 10) throw std::runtime_error("qr_code_19: generator polynomial degree != 9");
    if (!poly_mod(x19m1, g, p).empty())
        throw std::runtime_error("qr_code_19: generator does not divide x^19-1");

    FpMat m(p, 10, 19);
    for (int i = 0; i < 10; ++i)
        for (int j = 0; j < 10; ++j) m.at(i, i + j) = g[size_t(j)];
    LinearCode c = code_from_matrix(m);
    if (c.k != 10) throw std::runtime_error("qr_code_19: dimension != 10");
    return c;
}

LinearCode extend_qr20() {
    LinearCode c19 = qr_code_19();
    for (uint8_t lambda = 0; lambda < 7; ++lambda) {
        FpMat m(c19.p, c19.k, 20);
        for (int i = 0; i < c19.k; ++i) {
            unsigned sum = 0;
            for (int j = 0; j < 19; ++j) {
                m.at(i, j) = c19.gen.at(i, j);
                sum += c19.gen.at(i, j);
            }
            m.at(i, 19) = fp_mul(lambda, uint8_t(sum % 7), 7);
        }
        LinearCode ext = code_from_matrix(m);
        if (is_self_dual(ext)) {
            if (lambda == 0) throw std::runtime_error("extend_qr20: lambda 0 cannot be self-dual");
            return ext;
        }
    }
    throw std::runtime_error("extend_qr20: no extension coordinate yields a self-dual code");
}

// --- weight statistics -------------------------------------------------------

WeightEnumerator weight_enumerator(const LinearCode& c, int threads) {
    check_enumerable(c);
    WeightEnumerator we;
    we.coeff.assign(size_t(c.n) + 1, 0);
    if (c.k == 0) {
        we.coeff[0] = 1;
        return we;
    }
    struct Tally {
        uint64_t w[enum_detail::kMaxCols + 1] = {};
    };
    const int n = c.n;
    auto locals = for_each_representative<Tally>(c, threads, [n](Tally& t, const uint8_t* cw) {
        ++t.w[nonzero_count(cw, n)];
    });
    for (const auto& l : locals)
        for (int i = 0; i <= n; ++i) we.coeff[size_t(i)] += l.w[i];
    for (auto& x : we.coeff) x *= uint64_t(c.p - 1);
    we.coeff[0] = 1;
    return we;
}

int minimum_weight(const LinearCode& c, int threads, int stop_floor) {
    if (c.k == 0) throw std::invalid_argument("minimum_weight: the zero code has no nonzero codeword");
    check_enumerable(c);
    struct Tally {
        int best = INT_MAX;
    };
    const int n = c.n;
    const int floor_w = std::max(stop_floor, 1);
    std::atomic<bool> cancel{false};
    auto locals = for_each_representative<Tally>(
        c, threads,
        [n, floor_w, &cancel](Tally& t, const uint8_t* cw) {
            int w = nonzero_count(cw, n);
            if (w < t.best) {
                t.best = w;
                if (w <= floor_w) cancel.store(true, std::memory_order_relaxed);
            }
        },
        &cancel);
    int best = INT_MAX;
    for (const auto& l : locals) best = std::min(best, l.best);
    return best;
}

// --- bounded minimum weight via complementary information sets ---------------

namespace {

// One-sided scan: messages with 1..max_picks nonzero symbols over a k x k
// half-matrix (the image of the complementary half under the systematic
// generator). Weight of the codeword = #picks + weight of the accumulated
// half. First nonzero scalar fixed to 1 (weights are scalar-invariant).
struct SideScanner {
    const uint8_t* rows;
    int k;
    int abort_below;
    int best;
    uint8_t acc[16];

    bool run(int max_picks) {
        std::fill(acc, acc + k, uint8_t(0));
        return dfs(0, max_picks, 0);
    }

    bool dfs(int start, int picks_left, int msg_wt) {
        for (int i = start; i < k; ++i) {
            const uint8_t* ri = rows + size_t(i) * k;
            const int smax = msg_wt == 0 ? 1 : 6;
            for (int s = 1; s <= smax; ++s) {
                enum_detail::add_row_p7(acc, ri, k);
                int w = msg_wt + 1 + nonzero_count(acc, k);
                if (w < best) {
                    best = w;
                    if (abort_below > 0 && best < abort_below) return true;
                }
                if (picks_left > 1 && dfs(i + 1, picks_left - 1, msg_wt + 1)) return true;
            }
            for (int s = smax; s < 7; ++s) enum_detail::add_row_p7(acc, ri, k);
        }
        return false;
    }
};

}  // namespace

std::optional<int> bounded_minimum_weight(const LinearCode& c, int max_d, int abort_below) {
    if (c.k == 0) throw std::invalid_argument("bounded_minimum_weight: zero code");
    const int k = c.k;
    bool splittable = c.p == 7 && c.n == 2 * k && k <= 16;
    std::vector<uint8_t> side1, side2;
    if (splittable) {
        std::vector<int> pivots, rest;
        for (int i = 0; i < k; ++i) {
            int col = 0;
            while (col < c.n && c.gen.at(i, col) == 0) ++col;
            pivots.push_back(col);
        }
        std::vector<bool> is_pivot(size_t(c.n), false);
        for (int col : pivots) is_pivot[size_t(col)] = true;
        for (int col = 0; col < c.n; ++col)
            if (!is_pivot[size_t(col)]) rest.push_back(col);

        FpMat x(c.p, k, k);
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) x.at(i, j) = c.gen.at(i, rest[size_t(j)]);
        std::vector<uint8_t> y = try_invert(x);
        if (y.empty())
            splittable = false;  // complement is not an information set
        else {
            side1 = x.a;
            side2 = std::move(y);
        }
    }

    if (!splittable) {
        int mw = minimum_weight(c);
        if (abort_below > 0 && mw < abort_below) return mw;
        if (mw <= max_d) return mw;
        return std::nullopt;
    }

    // A codeword of weight w has at most floor(w/2) nonzero symbols on one of
    // the two halves, so scanning both sides to floor(max_d/2) picks sees
    // every codeword of weight <= max_d.
    const int picks = std::max(1, max_d / 2);
    SideScanner scan{side1.data(), k, abort_below, INT_MAX, {}};
    bool aborted = scan.run(picks);
    if (!aborted) {
        scan.rows = side2.data();
        aborted = scan.run(picks);
    }
    if (aborted) return scan.best;
    if (scan.best <= max_d) return scan.best;
    return std::nullopt;
}

// --- circulant families ------------------------------------------------------

namespace {

// 5x5 circulant (or negacirculant: wrapped entries negated) with first row v.
void fill_circulant(FpMat& x, int r0, int c0, std::span<const uint8_t> v, bool nega, bool transposed) {
    const int m = int(v.size());
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            int d = j - i;
            uint8_t val = v[size_t((d % m + m) % m)];
            if (nega && d < 0) val = fp_neg(val, x.p);
            if (transposed)
                x.at(r0 + j, c0 + i) = val;
            else
                x.at(r0 + i, c0 + j) = val;
        }
}

}  // namespace

LinearCode four_circulant(std::span<const uint8_t> a, std::span<const uint8_t> b, bool nega) {
    if (a.size() != 5 || b.size() != 5) throw std::invalid_argument("four_circulant: rows must have 5 symbols");
    FpMat g(7, 10, 20);
    for (int i = 0; i < 10; ++i) g.at(i, i) = 1;
    FpMat x(7, 10, 10);
    fill_circulant(x, 0, 0, a, nega, false);   // A
    fill_circulant(x, 0, 5, b, nega, false);   // B
    fill_circulant(x, 5, 0, b, nega, true);    // B^T, negated below
    for (int i = 5; i < 10; ++i)
        for (int j = 0; j < 5; ++j) x.at(i, j) = fp_neg(x.at(i, j), 7);
    fill_circulant(x, 5, 5, a, nega, true);    // A^T
    for (int i = 0; i < 10; ++i)
        for (int j = 0; j < 10; ++j) g.at(i, 10 + j) = x.at(i, j);
    return code_from_matrix(g);
}

LinearCode double_circulant(std::span<const uint8_t> r) {
    if (r.size() != 10) throw std::invalid_argument("double_circulant: first row must have 10 symbols");
    FpMat g(7, 10, 20);
    for (int i = 0; i < 10; ++i) {
        g.at(i, i) = 1;
        for (int j = 0; j < 10; ++j) g.at(i, 10 + (i + j) % 10) = r[size_t(j)];
    }
    return code_from_matrix(g);
}

LinearCode neighbor(const LinearCode& c, std::span<const uint8_t> x) {
    if (int(x.size()) != c.n) throw std::invalid_argument("neighbor: vector length mismatch");
    if (!is_self_dual(c)) throw std::invalid_argument("neighbor: code must be self-dual");
    unsigned selfdot = 0;
    bool nonzero = false;
    for (uint8_t v : x) {
        if (v >= c.p) throw std::invalid_argument("neighbor: entry out of range");
        selfdot += unsigned(v) * v;
        nonzero |= v != 0;
    }
    if (!nonzero) throw std::invalid_argument("neighbor: x must be nonzero");
    if (selfdot % c.p != 0) throw std::invalid_argument("neighbor: x.x != 0");

    // inner products of x with the generator rows
    std::vector<uint8_t> dots(size_t(c.k));
    int pivot = -1;
    for (int i = 0; i < c.k; ++i) {
        unsigned acc = 0;
        for (int j = 0; j < c.n; ++j) acc += unsigned(c.gen.at(i, j)) * x[size_t(j)];
        dots[size_t(i)] = uint8_t(acc % c.p);
        if (pivot < 0 && dots[size_t(i)] != 0) pivot = i;
    }
    if (pivot < 0) return c;  // x in C^perp = C, so C(x) = C

    FpMat m(c.p, c.k, c.n);
    uint8_t inv = fp_inv(dots[size_t(pivot)], c.p);
    int out = 0;
    for (int i = 0; i < c.k; ++i) {
        if (i == pivot) continue;
        uint8_t f = fp_mul(dots[size_t(i)], inv, c.p);
        for (int j = 0; j < c.n; ++j)
            m.at(out, j) = fp_sub(c.gen.at(i, j), fp_mul(f, c.gen.at(pivot, j), c.p), c.p);
        ++out;
    }
    for (int j = 0; j < c.n; ++j) m.at(out, j) = x[size_t(j)];
    LinearCode nb = code_from_matrix(m);
    if (nb.k != c.k) throw std::runtime_error("neighbor: unexpected dimension");
    return nb;
}

// --- file format --------------------------------------------------------------

std::string code_to_json(const LinearCode& c) {
    nlohmann::json j;
    j["p"] = c.p;
    j["n"] = c.n;
    j["k"] = c.k;
    auto rows = nlohmann::json::array();
    for (int i = 0; i < c.k; ++i) {
        auto row = nlohmann::json::array();
        for (int jj = 0; jj < c.n; ++jj) row.push_back(int(c.gen.at(i, jj)));
        rows.push_back(std::move(row));
    }
    j["generator"] = std::move(rows);
    return j.dump();
}

LinearCode code_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    int p = j.at("p").get<int>();
    int n = j.at("n").get<int>();
    int k = j.at("k").get<int>();
    if (p < 2 || p > 255 || !is_prime(unsigned(p))) throw std::invalid_argument("code file: p must be a prime < 256");
    if (n < 1 || k < 0 || k > n) throw std::invalid_argument("code file: bad dimensions");
    const auto& rows = j.at("generator");
    if (int(rows.size()) != k) throw std::invalid_argument("code file: generator row count != k");
    FpMat m(uint8_t(p), k, n);
    for (int i = 0; i < k; ++i) {
        const auto& row = rows.at(size_t(i));
        if (int(row.size()) != n) throw std::invalid_argument("code file: generator row length != n");
        for (int c = 0; c < n; ++c) {
            int v = row.at(size_t(c)).get<int>();
            if (v < 0 || v >= p) throw std::invalid_argument("code file: entry out of range [0,p)");
            m.at(i, c) = uint8_t(v);
        }
    }
    LinearCode code = code_from_matrix(m);
    if (code.k != k) throw std::invalid_argument("code file: generator matrix is not full rank");
    return code;
}

void save_code(const LinearCode& c, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << code_to_json(c) << "\n";
}

LinearCode load_code(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return code_from_json(ss.str());
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error(path + ": " + e.what());
    } catch (const std::invalid_argument& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
}

}  // namespace sdlat
