#pragma once

#include <atomic>
#include <cstdint>
#include <cstring>
#include <thread>
#include <vector>

#include "sdlat/codes.hpp"

namespace sdlat {

inline int resolve_threads(int threads) {
    if (threads > 0) return threads;
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? int(hw) : 1;
}

namespace enum_detail {

// Every nonzero codeword has a unique scalar multiple whose first nonzero
// message symbol is 1, so the walk visits messages
//   (0,...,0, 1, c_{t+1}, ..., c_{k-1})
// and per-class tallies get scaled by p-1 afterwards. The running codeword
// is updated by adding one generator row per tree edge; p consecutive adds
// of the same row restore the buffer, which keeps the recursion free of
// copies. Work is split into tasks by the leading index t plus the first
// three free symbols, and workers claim tasks from a shared counter, so
// tallies merge by plain addition and the result is identical for any
// thread count.

constexpr int kMaxCols = 32;

inline void add_row_p7(uint8_t* x, const uint8_t* y, int n) {
    for (int i = 0; i < n; ++i) {
        uint8_t t = uint8_t(x[i] + y[i]);
        x[i] = t >= 7 ? uint8_t(t - 7) : t;
    }
}

inline void add_row_tab(uint8_t* x, const uint8_t* y, int n, const uint8_t* tab) {
    for (int i = 0; i < n; ++i) x[i] = tab[x[i] + y[i]];
}

struct Task {
    int lead;
    int prefix;  // -1: whole subtree; else base-p digits for the next 3 rows
};

inline std::vector<Task> make_tasks(int k, int p) {
    std::vector<Task> tasks;
    const int split = p * p * p;
    for (int lead = 0; lead < k; ++lead) {
        int free_rows = k - 1 - lead;
        if (free_rows >= 3) {
            for (int pre = 0; pre < split; ++pre) tasks.push_back({lead, pre});
        } else {
            tasks.push_back({lead, -1});
        }
    }
    return tasks;
}

template <bool P7, class Local, class LeafFn>
void subtree(const uint8_t* rows, int k, int n, int depth, uint8_t* cur, uint8_t p,
             const uint8_t* tab, Local& local, LeafFn& leaf, const std::atomic<bool>* cancel) {
    if (depth == k) {
        leaf(local, cur);
        return;
    }
    if (cancel && k - depth >= 3 && cancel->load(std::memory_order_relaxed)) return;
    const uint8_t* rj = rows + size_t(depth) * n;
    for (int c = 0; c < p; ++c) {
        subtree<P7>(rows, k, n, depth + 1, cur, p, tab, local, leaf, cancel);
        if constexpr (P7)
            add_row_p7(cur, rj, n);
        else
            add_row_tab(cur, rj, n, tab);
    }
    // p adds of rj have restored cur
}

template <bool P7, class Local, class LeafFn>
void run_task(const Task& t, const uint8_t* rows, int k, int n, uint8_t p, const uint8_t* tab,
              Local& local, LeafFn& leaf, const std::atomic<bool>* cancel) {
    uint8_t cur[kMaxCols];
    std::memcpy(cur, rows + size_t(t.lead) * n, size_t(n));
    int depth = t.lead + 1;
    if (t.prefix >= 0) {
        int pre = t.prefix;
        for (int d = 0; d < 3; ++d) {
            int coeff = pre % p;
            pre /= p;
            const uint8_t* r = rows + size_t(depth) * n;
            for (int c = 0; c < coeff; ++c) {
                if constexpr (P7)
                    add_row_p7(cur, r, n);
                else
                    add_row_tab(cur, r, n, tab);
            }
            ++depth;
        }
    }
    subtree<P7>(rows, k, n, depth, cur, p, tab, local, leaf, cancel);
}

}  // namespace enum_detail

// Visits one representative per scalar class of nonzero codewords of c and
// calls leaf(local, codeword_bytes) for each. Returns the per-worker Local
// tallies; merging them must be order-insensitive (integer sums, or lists
// the caller sorts). After a cancel is raised, remaining tallies are
// unspecified — use cancellation only for found/not-found scans.
template <class Local, class LeafFn>
std::vector<Local> for_each_representative(const LinearCode& c, int threads, LeafFn leaf,
                                           std::atomic<bool>* cancel = nullptr) {
    using namespace enum_detail;
    if (c.n > kMaxCols) throw std::invalid_argument("enumeration supports n <= 32");
    const int k = c.k, n = c.n;
    const uint8_t p = c.p;

    threads = resolve_threads(threads);
    std::vector<Local> locals(static_cast<size_t>(threads));
    if (k == 0) return locals;

    std::vector<Task> tasks = make_tasks(k, p);
    std::atomic<size_t> next{0};
    uint8_t tab[512];
    for (int i = 0; i < 2 * int(p); ++i) tab[i] = uint8_t(i % p);

    auto work = [&](int wid) {
        LeafFn fn = leaf;  // private copy per worker
        Local& local = locals[size_t(wid)];
        for (;;) {
            size_t ti = next.fetch_add(1, std::memory_order_relaxed);
            if (ti >= tasks.size()) break;
            if (cancel && cancel->load(std::memory_order_relaxed)) break;
            if (p == 7)
                run_task<true>(tasks[ti], c.gen.a.data(), k, n, p, tab, local, fn, cancel);
            else
                run_task<false>(tasks[ti], c.gen.a.data(), k, n, p, tab, local, fn, cancel);
        }
    };

    if (threads == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(size_t(threads) - 1);
        for (int w = 1; w < threads; ++w) pool.emplace_back(work, w);
        work(0);
        for (auto& th : pool) th.join();
    }
    return locals;
}

// (p^k - 1)/(p - 1), the number of representatives visited.
uint64_t representative_count(uint8_t p, int k);

}  // namespace sdlat
