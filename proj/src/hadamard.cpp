#include "sdlat/hadamard.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include "sdlat/enumerate.hpp"
#include "sdlat/rng.hpp"

namespace sdlat {

bool is_hadamard(const SignMatrix& h) {
    const int n = h.n;
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            int dot = 0;
            for (int t = 0; t < n; ++t) dot += int(h.at(i, t)) * h.at(j, t);
            if (dot != (i == j ? n : 0)) return false;
        }
    return true;
}

bool is_skew_hadamard(const SignMatrix& h) {
    const int n = h.n;
    for (int i = 0; i < n; ++i) {
        if (h.at(i, i) != 1) return false;
        for (int j = i + 1; j < n; ++j)
            if (h.at(i, j) + h.at(j, i) != 0) return false;
    }
    return is_hadamard(h);
}

SignMatrix paley_skew_hadamard(int q) {
    if (q < 3 || !is_prime(unsigned(q)) || q % 4 != 3)
        throw std::invalid_argument("paley_skew_hadamard: q must be a prime = 3 (mod 4)");

    // quadratic residue character mod q
    std::vector<int8_t> chi(size_t(q), 0);
    for (int t = 1; t < q; ++t) chi[size_t((t * t) % q)] = 1;
    for (int t = 1; t < q; ++t)
        if (chi[size_t(t)] == 0) chi[size_t(t)] = -1;

    // rows/columns: index 0 is the point at infinity, 1+i is i in GF(q)
    SignMatrix h(q + 1);
    h.at(0, 0) = 1;
    for (int i = 0; i < q; ++i) {
        h.at(0, 1 + i) = 1;
        h.at(1 + i, 0) = -1;
        for (int j = 0; j < q; ++j)
            h.at(1 + i, 1 + j) = i == j ? int8_t(1) : chi[size_t(((j - i) % q + q) % q)];
    }
    return h;
}

Tournament tournament_from_skew(const SignMatrix& h) {
    if (!is_skew_hadamard(h)) throw std::invalid_argument("tournament_from_skew: input is not skew-Hadamard");
    const int n = h.n;
    // diagonal conjugation by the first row makes row 0 all-plus
    std::vector<int8_t> d(size_t(n), 0);
    for (int j = 0; j < n; ++j) d[size_t(j)] = h.at(0, j);
    Tournament t(n - 1);
    for (int u = 0; u < n - 1; ++u)
        for (int v = 0; v < n - 1; ++v) {
            if (u == v) continue;
            int m = int(d[size_t(u + 1)]) * h.at(u + 1, v + 1) * d[size_t(v + 1)];
            t.at(u, v) = m == 1 ? 1 : 0;
        }
    return t;
}

SignMatrix skew_from_tournament(const Tournament& t) {
    if (!is_doubly_regular(t)) throw std::invalid_argument("skew_from_tournament: tournament is not doubly regular");
    const int n = t.n + 1;
    SignMatrix h(n);
    h.at(0, 0) = 1;
    for (int j = 1; j < n; ++j) {
        h.at(0, j) = 1;
        h.at(j, 0) = -1;
    }
    for (int u = 0; u < t.n; ++u)
        for (int v = 0; v < t.n; ++v)
            h.at(u + 1, v + 1) = u == v ? int8_t(1) : int8_t(2 * t.at(u, v) - 1);
    return h;
}

bool is_doubly_regular(const Tournament& t) {
    const int n = t.n;
    if (n < 3 || n % 4 != 3) return false;
    for (int u = 0; u < n; ++u) {
        if (t.at(u, u)) return false;
        int deg = 0;
        for (int v = 0; v < n; ++v) {
            if (u == v) continue;
            if (t.at(u, v) + t.at(v, u) != 1) return false;
            deg += t.at(u, v);
        }
        if (deg != (n - 1) / 2) return false;
    }
    const int lambda = (n - 3) / 4;
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v) {
            if (u == v) continue;
            int c = 0;
            for (int z = 0; z < n; ++z) c += t.at(u, z) & t.at(v, z);
            if (c != lambda) return false;
        }
    return true;
}

// --- doubly regular tournament search -----------------------------------------

namespace {

// Local-search state. The squared-defect cost
//   sum_u (outdeg(u) - (n-1)/2)^2 + sum_{u != v} (common(u,v) - (n-3)/4)^2
// is maintained incrementally: an arc flip touches two out-degrees and O(n)
// of the common counts. Moves are directed-triangle reversals, which keep
// every out-degree at (n-1)/2, so only the common-count term ever varies;
// single-arc flips turned out to strand the walk on degree-balanced local
// optima far too often to be usable at order 19.
struct DrtState {
    int n = 0;
    int deg_target = 0;
    int common_target = 0;
    std::vector<uint8_t> adj;
    std::vector<int> outdeg;
    std::vector<int> common;  // n*n, symmetric, diagonal unused
    int64_t cost = 0;

    uint8_t a(int u, int v) const { return adj[size_t(u) * n + v]; }
    int& com(int u, int v) { return common[size_t(u) * n + v]; }
    int com(int u, int v) const { return common[size_t(u) * n + v]; }

    // rotational tournament (u beats u+1 .. u+(n-1)/2), scrambled by
    // degree-preserving triangle reversals
    void init_regular(int order, Rng& rng) {
        n = order;
        deg_target = (n - 1) / 2;
        common_target = (n - 3) / 4;
        adj.assign(size_t(n) * n, 0);
        for (int u = 0; u < n; ++u)
            for (int d = 1; d <= deg_target; ++d) adj[size_t(u) * n + (u + d) % n] = 1;
        for (int i = 0; i < 200 * n; ++i) {
            int u, v, w;
            if (pick_triangle(rng, u, v, w)) {
                adj[size_t(u) * n + v] = 0;
                adj[size_t(v) * n + u] = 1;
                adj[size_t(v) * n + w] = 0;
                adj[size_t(w) * n + v] = 1;
                adj[size_t(w) * n + u] = 0;
                adj[size_t(u) * n + w] = 1;
            }
        }
        outdeg.assign(size_t(n), 0);
        for (int u = 0; u < n; ++u)
            for (int v = 0; v < n; ++v) outdeg[size_t(u)] += a(u, v);
        common.assign(size_t(n) * n, 0);
        for (int u = 0; u < n; ++u)
            for (int v = 0; v < n; ++v) {
                if (u == v) continue;
                int c = 0;
                for (int z = 0; z < n; ++z) c += a(u, z) & a(v, z);
                com(u, v) = c;
            }
        cost = full_cost();
    }

    int64_t full_cost() const {
        int64_t c = 0;
        for (int u = 0; u < n; ++u) {
            int64_t d = outdeg[size_t(u)] - deg_target;
            c += d * d;
        }
        for (int u = 0; u < n; ++u)
            for (int v = 0; v < n; ++v) {
                if (u == v) continue;
                int64_t d = com(u, v) - common_target;
                c += d * d;
            }
        return c;
    }

    bool pick_triangle(Rng& rng, int& u, int& v, int& w) const {
        u = int(rng.below(uint64_t(n)));
        v = int(rng.below(uint64_t(n)));
        if (u == v || !a(u, v)) return false;
        w = int(rng.below(uint64_t(n)));
        if (w == u || w == v || !a(v, w) || !a(w, u)) return false;
        return true;
    }

    static int64_t sq(int64_t x) { return x * x; }

    // flip the arc u->v (requires a(u,v) == 1), updating common counts,
    // out-degrees, and the cost
    void flip(int u, int v) {
        int64_t d = 0;
        d += sq(outdeg[size_t(u)] - 1 - deg_target) - sq(outdeg[size_t(u)] - deg_target);
        d += sq(outdeg[size_t(v)] + 1 - deg_target) - sq(outdeg[size_t(v)] - deg_target);
        for (int y = 0; y < n; ++y) {
            if (y != u && a(y, v)) {
                int c = com(u, y);
                d += 2 * (sq(c - 1 - common_target) - sq(c - common_target));
                --com(u, y);
                --com(y, u);
            }
            if (y != v && a(y, u)) {
                int c = com(v, y);
                d += 2 * (sq(c + 1 - common_target) - sq(c - common_target));
                ++com(v, y);
                ++com(y, v);
            }
        }
        adj[size_t(u) * n + v] = 0;
        adj[size_t(v) * n + u] = 1;
        --outdeg[size_t(u)];
        ++outdeg[size_t(v)];
        cost += d;
    }

    void reverse_triangle(int u, int v, int w) {
        flip(u, v);
        flip(v, w);
        flip(w, u);
    }
};

// One seeded restart: random triangle reversals with Metropolis acceptance
// at a fixed temperature. A reversal that worsens the cost is undone unless
// it wins the acceptance draw.
bool drt_restart(int n, uint64_t restart_seed, Tournament& out) {
    Rng rng(restart_seed);
    DrtState st;
    st.init_regular(n, rng);

    constexpr double kTemperature = 3.0;
    constexpr int kMaxDelta = 256;
    static const auto kAccept = [] {
        std::array<uint32_t, kMaxDelta> t{};
        for (int d = 0; d < kMaxDelta; ++d)
            t[size_t(d)] = uint32_t(4294967295.0 * std::exp(-double(d) / kTemperature));
        return t;
    }();

    const int64_t max_steps = 1'200'000;
    for (int64_t step = 0; step < max_steps && st.cost != 0; ++step) {
        int u, v, w;
        if (!st.pick_triangle(rng, u, v, w)) continue;
        int64_t before = st.cost;
        st.reverse_triangle(u, v, w);
        int64_t delta = st.cost - before;
        if (delta > 0) {
            uint32_t draw = uint32_t(rng.next() >> 32);
            if (delta >= kMaxDelta || draw >= kAccept[size_t(delta)]) st.reverse_triangle(w, v, u);
        }
    }
    if (st.cost != 0) return false;

    Tournament t(n);
    t.adj = st.adj;
    return (out = std::move(t), true);
}

}  // namespace

Tournament search_drt(int n, uint64_t seed, int max_restarts, int threads) {
    if (n < 3 || n % 4 != 3) throw std::invalid_argument("search_drt: order must be = 3 (mod 4)");
    threads = resolve_threads(threads);

    std::mutex mtx;
    int best_index = max_restarts;  // smallest successful restart index
    Tournament best;
    std::atomic<int> next{0};

    auto work = [&] {
        for (;;) {
            int idx = next.fetch_add(1, std::memory_order_relaxed);
            if (idx >= max_restarts) return;
            {
                std::lock_guard<std::mutex> lk(mtx);
                if (idx > best_index) return;  // a smaller index already succeeded
            }
            Tournament t;
            if (drt_restart(n, derive_seed(seed, uint64_t(idx)), t)) {
                std::lock_guard<std::mutex> lk(mtx);
                if (idx < best_index) {
                    best_index = idx;
                    best = std::move(t);
                }
            }
        }
    };

    std::vector<std::thread> pool;
    for (int w = 1; w < threads; ++w) pool.emplace_back(work);
    work();
    for (auto& th : pool) th.join();

    if (best_index == max_restarts)
        throw std::runtime_error("search_drt: no doubly regular tournament found; retry with another seed");
    return best;
}

FpMat hadamard_code_matrix(const SignMatrix& h, uint8_t p) {
    FpMat f(p, h.n, h.n);
    for (int i = 0; i < h.n; ++i)
        for (int j = 0; j < h.n; ++j) f.at(i, j) = fp_reduce(h.at(i, j) + (i == j ? 2 : 0), p);
    return f;
}

SignMatrix find_second_skew_class(uint64_t seed, int max_seeds, int threads) {
    WeightEnumerator paley_we =
        weight_enumerator(code_from_matrix(hadamard_code_matrix(paley_skew_hadamard(19))), threads);
    for (int i = 0; i < max_seeds; ++i) {
        Tournament t = search_drt(19, derive_seed(seed, uint64_t(i)), 20000, threads);
        SignMatrix h = skew_from_tournament(t);
        WeightEnumerator we = weight_enumerator(code_from_matrix(hadamard_code_matrix(h)), threads);
        if (we != paley_we) return h;
    }
    throw std::runtime_error("find_second_skew_class: only the Paley class appeared; retry with another seed");
}

// --- file format ----------------------------------------------------------------

std::string sign_matrix_to_text(const SignMatrix& h) {
    std::ostringstream out;
    out << h.n << "\n";
    for (int i = 0; i < h.n; ++i) {
        for (int j = 0; j < h.n; ++j) out << (j ? " " : "") << int(h.at(i, j));
        out << "\n";
    }
    return out.str();
}

SignMatrix sign_matrix_from_text(const std::string& text) {
    std::istringstream in(text);
    int n = 0;
    if (!(in >> n) || n < 1 || n > 4096) throw std::invalid_argument("sign matrix: bad order on line 1");
    SignMatrix h(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            int v;
            if (!(in >> v) || (v != 1 && v != -1))
                throw std::invalid_argument("sign matrix: bad entry on line " + std::to_string(i + 2));
            h.at(i, j) = int8_t(v);
        }
    return h;
}

void save_sign_matrix(const SignMatrix& h, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << sign_matrix_to_text(h);
}

SignMatrix load_sign_matrix(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return sign_matrix_from_text(ss.str());
    } catch (const std::invalid_argument& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
}

}  // namespace sdlat
