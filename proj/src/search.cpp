#include "sdlat/search.hpp"

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "sdlat/enumerate.hpp"
#include "sdlat/rng.hpp"

namespace sdlat {

const char* construction_name(Construction c) {
    switch (c) {
        case Construction::four_circulant: return "four-circulant";
        case Construction::four_negacirculant: return "four-negacirculant";
        case Construction::double_circulant: return "double-circulant";
        case Construction::neighbor: return "neighbor";
    }
    return "?";
}

namespace {

uint64_t fnv1a(const void* data, size_t len, uint64_t h = 0xcbf29ce484222325ULL) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (size_t i = 0; i < len; ++i) {
        h ^= p[i];
        h *= 0x100000001b3ULL;
    }
    return h;
}

uint64_t code_hash(const LinearCode& c) {
    uint64_t h = fnv1a(&c.p, 1);
    h = fnv1a(&c.n, sizeof c.n, h);
    h = fnv1a(&c.k, sizeof c.k, h);
    return fnv1a(c.gen.a.data(), c.gen.a.size(), h);
}

// record flowing from the scan phase to the evaluation phase
struct Survivor {
    std::vector<uint8_t> p1, p2;
    int d = 0;
};

struct CampaignState {
    std::string campaign;
    uint64_t seed = 0;
    uint64_t mode_tag = 0;  // sample count for sampled campaigns, 0 otherwise
    uint64_t base_hash = 0;
    std::string phase = "scan";
    uint64_t next_chunk = 0;
    CampaignTally tally;
    std::vector<Survivor> survivors;         // d in {8,9}, awaiting full evaluation
    std::vector<std::vector<uint8_t>> seen;  // neighbor campaign: folded coset keys
    std::vector<SearchResult> results;
};

nlohmann::json tally_to_json(const CampaignTally& t) {
    return {{"scanned", t.scanned},
            {"matched", t.matched},
            {"self_dual", t.self_dual},
            {"weight_le7", t.weight_le7},
            {"weight_8", t.weight_8},
            {"weight_9", t.weight_9},
            {"weight_ge10", t.weight_ge10},
            {"in_code", t.in_code},
            {"coset_dup", t.coset_dup},
            {"not_self_dual", t.not_self_dual}};
}

CampaignTally tally_from_json(const nlohmann::json& j) {
    CampaignTally t;
    t.scanned = j.at("scanned");
    t.matched = j.at("matched");
    t.self_dual = j.at("self_dual");
    t.weight_le7 = j.at("weight_le7");
    t.weight_8 = j.at("weight_8");
    t.weight_9 = j.at("weight_9");
    t.weight_ge10 = j.at("weight_ge10");
    t.in_code = j.at("in_code");
    t.coset_dup = j.at("coset_dup");
    t.not_self_dual = j.at("not_self_dual");
    return t;
}

Construction construction_from_name(const std::string& s) {
    if (s == "four-circulant") return Construction::four_circulant;
    if (s == "four-negacirculant") return Construction::four_negacirculant;
    if (s == "double-circulant") return Construction::double_circulant;
    if (s == "neighbor") return Construction::neighbor;
    throw std::invalid_argument("unknown construction: " + s);
}

const char* param1_key(Construction c) {
    switch (c) {
        case Construction::four_circulant:
        case Construction::four_negacirculant: return "a";
        case Construction::double_circulant: return "r";
        case Construction::neighbor: return "x";
    }
    return "p1";
}

nlohmann::json result_to_json_obj(const SearchResult& r) {
    nlohmann::json j;
    j["construction"] = construction_name(r.construction);
    j[param1_key(r.construction)] = r.p1;
    if (r.construction == Construction::four_circulant || r.construction == Construction::four_negacirculant)
        j["b"] = r.p2;
    j["min_weight"] = r.min_weight;
    j["count"] = r.count;
    j["weight_enumerator"] = r.we.coeff;
    if (r.lattice) {
        j["lattice"] = {{"min_norm", r.lattice->min_norm},
                        {"kissing", r.lattice->kissing},
                        {"is_d20_plus", r.lattice->is_d20_plus}};
    } else {
        j["lattice"] = nullptr;
    }
    return j;
}

SearchResult result_from_json_obj(const nlohmann::json& j) {
    SearchResult r;
    r.construction = construction_from_name(j.at("construction"));
    r.p1 = j.at(param1_key(r.construction)).get<std::vector<uint8_t>>();
    if (j.contains("b")) r.p2 = j.at("b").get<std::vector<uint8_t>>();
    r.min_weight = j.at("min_weight");
    r.count = j.at("count");
    r.we.coeff = j.at("weight_enumerator").get<std::vector<uint64_t>>();
    if (!j.at("lattice").is_null()) {
        const auto& l = j.at("lattice");
        r.lattice = LatticeReport{l.at("min_norm").get<int>(), l.at("kissing").get<uint64_t>(),
                                  l.at("is_d20_plus").get<bool>()};
    }
    return r;
}

void save_state(const CampaignState& st, const std::string& path) {
    nlohmann::json j;
    j["campaign"] = st.campaign;
    j["seed"] = st.seed;
    j["mode_tag"] = st.mode_tag;
    j["base_hash"] = st.base_hash;
    j["phase"] = st.phase;
    j["next_chunk"] = st.next_chunk;
    j["tally"] = tally_to_json(st.tally);
    auto sv = nlohmann::json::array();
    for (const auto& s : st.survivors) sv.push_back({{"p1", s.p1}, {"p2", s.p2}, {"d", s.d}});
    j["survivors"] = std::move(sv);
    auto seen = nlohmann::json::array();
    for (const auto& v : st.seen) seen.push_back(v);
    j["seen"] = std::move(seen);
    auto rs = nlohmann::json::array();
    for (const auto& r : st.results) rs.push_back(result_to_json_obj(r));
    j["results"] = std::move(rs);

    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp);
        if (!out) throw std::runtime_error("cannot write checkpoint " + tmp);
        out << j.dump();
    }
    std::filesystem::rename(tmp, path);
}

CampaignState load_state(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read checkpoint " + path);
    nlohmann::json j = nlohmann::json::parse(in);
    CampaignState st;
    st.campaign = j.at("campaign");
    st.seed = j.at("seed");
    st.mode_tag = j.at("mode_tag");
    st.base_hash = j.at("base_hash");
    st.phase = j.at("phase");
    st.next_chunk = j.at("next_chunk");
    st.tally = tally_from_json(j.at("tally"));
    for (const auto& s : j.at("survivors"))
        st.survivors.push_back({s.at("p1").get<std::vector<uint8_t>>(), s.at("p2").get<std::vector<uint8_t>>(),
                                s.at("d").get<int>()});
    for (const auto& v : j.at("seen")) st.seen.push_back(v.get<std::vector<uint8_t>>());
    for (const auto& r : j.at("results")) st.results.push_back(result_from_json_obj(r));
    return st;
}

struct ChunkOut {
    CampaignTally tally;
    std::vector<Survivor> survivors;
    std::optional<SearchResult> eval_result;
};

void merge_tally(CampaignTally& into, const CampaignTally& from) {
    into.scanned += from.scanned;
    into.matched += from.matched;
    into.self_dual += from.self_dual;
    into.weight_le7 += from.weight_le7;
    into.weight_8 += from.weight_8;
    into.weight_9 += from.weight_9;
    into.weight_ge10 += from.weight_ge10;
    into.in_code += from.in_code;
    into.coset_dup += from.coset_dup;
    into.not_self_dual += from.not_self_dual;
}

// Claims chunk indices from a shared counter, buffers outputs, and folds them
// in ascending index order, so tallies, dedup decisions, and result order do
// not depend on the thread count. The checkpoint callback runs with the
// watermark already advanced; a resumed run recomputes only unfolded chunks.
class PhaseRunner {
  public:
    PhaseRunner(int threads, uint64_t checkpoint_every, std::function<void()> checkpoint)
        : threads_(resolve_threads(threads)), every_(checkpoint_every), checkpoint_(std::move(checkpoint)) {}

    // Returns true if the phase reached `total` chunks folded.
    bool run(uint64_t total, uint64_t& watermark, uint64_t budget,
             const std::function<ChunkOut(uint64_t)>& run_chunk,
             const std::function<void(uint64_t, ChunkOut&&)>& fold,
             const std::function<void(uint64_t, uint64_t)>& progress) {
        const uint64_t start = watermark;
        const uint64_t limit = budget ? std::min(total, start + budget) : total;
        std::atomic<uint64_t> next{start};
        std::mutex mtx;
        std::map<uint64_t, ChunkOut> buffer;
        std::exception_ptr error;
        std::atomic<bool> failed{false};
        uint64_t since_ckpt = 0;

        auto work = [&] {
            for (;;) {
                if (failed.load(std::memory_order_relaxed)) return;
                uint64_t idx = next.fetch_add(1, std::memory_order_relaxed);
                if (idx >= limit) return;
                try {
                    ChunkOut out = run_chunk(idx);
                    std::lock_guard<std::mutex> lk(mtx);
                    buffer.emplace(idx, std::move(out));
                    while (!buffer.empty() && buffer.begin()->first == watermark) {
                        fold(watermark, std::move(buffer.begin()->second));
                        buffer.erase(buffer.begin());
                        ++watermark;
                        ++since_ckpt;
                        if (progress) progress(watermark, total);
                        if (checkpoint_ && every_ && since_ckpt >= every_) {
                            since_ckpt = 0;
                            checkpoint_();
                        }
                    }
                } catch (...) {
                    std::lock_guard<std::mutex> lk(mtx);
                    if (!error) error = std::current_exception();
                    failed.store(true, std::memory_order_relaxed);
                    return;
                }
            }
        };

        std::vector<std::thread> pool;
        for (int w = 1; w < threads_; ++w) pool.emplace_back(work);
        work();
        for (auto& th : pool) th.join();
        if (error) std::rethrow_exception(error);
        return watermark == limit && limit == total;
    }

  private:
    int threads_;
    uint64_t every_;
    std::function<void()> checkpoint_;
};

void bucket_weight(CampaignTally& t, const std::optional<int>& d) {
    if (!d)
        ++t.weight_ge10;
    else if (*d <= 7)
        ++t.weight_le7;
    else if (*d == 8)
        ++t.weight_8;
    else
        ++t.weight_9;
}

bool is_survivor(const std::optional<int>& d) { return d && (*d == 8 || *d == 9); }

// Exact minimum-weight classification into {<=7, 8, 9, >=10} in two stages:
// a depth-3 scan settles d <= 7, and the depth-4 scan then only has to run
// to the first weight-8 word unless the code is one of the rare d >= 9 ones.
std::optional<int> classify_min_weight(const LinearCode& code) {
    auto d3 = bounded_minimum_weight(code, 7, 8);
    if (d3) return d3;
    return bounded_minimum_weight(code, 9, 9);
}

LinearCode build_from_survivor(Construction con, const LinearCode* base, const Survivor& s) {
    switch (con) {
        case Construction::four_circulant: return four_circulant(s.p1, s.p2, false);
        case Construction::four_negacirculant: return four_circulant(s.p1, s.p2, true);
        case Construction::double_circulant: return double_circulant(s.p1);
        case Construction::neighbor: return neighbor(*base, s.p1);
    }
    throw std::logic_error("bad construction");
}

// Scaffolding shared by all campaigns: run the scan phase, then evaluate the
// d in {8,9} survivors (one full enumeration pass each, distributed across
// workers one survivor at a time), deduplicating results by weight
// enumerator as they fold.
class CampaignDriver {
  public:
    CampaignDriver(CampaignState st, Construction con, const LinearCode* base, const CampaignOptions& opts)
        : st_(std::move(st)), con_(con), base_(base), opts_(opts) {}

    CampaignState& state() { return st_; }

    CampaignReport run(uint64_t scan_chunks, const std::function<ChunkOut(uint64_t)>& scan_chunk,
                       const std::function<void(uint64_t, ChunkOut&&)>& scan_fold) {
        auto checkpoint = [this] {
            if (!opts_.checkpoint_path.empty()) save_state(st_, opts_.checkpoint_path);
        };
        PhaseRunner runner(opts_.threads, opts_.checkpoint_every, checkpoint);
        uint64_t budget = opts_.stop_after_chunks;

        bool complete = true;
        if (st_.phase == "scan") {
            uint64_t before = st_.next_chunk;
            complete = runner.run(scan_chunks, st_.next_chunk, budget, scan_chunk, scan_fold,
                                  [this](uint64_t done, uint64_t total) {
                                      if (opts_.progress) opts_.progress(st_.campaign + "/scan", done, total);
                                  });
            if (budget) budget -= std::min(budget, st_.next_chunk - before);
            if (complete) {
                st_.phase = "eval";
                st_.next_chunk = 0;
                checkpoint();
            }
        }

        if (complete && st_.phase == "eval") {
            if (budget == 0 && opts_.stop_after_chunks != 0)
                complete = st_.next_chunk == st_.survivors.size();
            else
                complete = run_eval(runner, budget);
        }

        if (!complete && opts_.checkpoint_path.empty())
            throw std::runtime_error("campaign stopped early but no checkpoint path is set");
        checkpoint();
        return make_report(complete);
    }

  private:
    bool run_eval(PhaseRunner& runner, uint64_t budget) {
        std::map<std::vector<uint64_t>, size_t> by_we;
        for (size_t i = 0; i < st_.results.size(); ++i) by_we[st_.results[i].we.coeff] = i;

        auto run_chunk = [this](uint64_t idx) {
            const Survivor& s = st_.survivors[size_t(idx)];
            LinearCode code = build_from_survivor(con_, base_, s);
            CodeAnalysis an = analyze_code20(code, 1);
            if (an.min_weight != s.d)
                throw std::runtime_error("bounded scan and full enumeration disagree on the minimum weight");
            if (an.min_weight == 9 && an.wide_minimal != 0)
                throw std::runtime_error("a minimal vector of a [20,10,9] code has two large coordinates");
            SearchResult r;
            r.construction = con_;
            r.p1 = s.p1;
            if (con_ == Construction::four_circulant || con_ == Construction::four_negacirculant) r.p2 = s.p2;
            r.min_weight = an.min_weight;
            r.we = an.we;
            r.lattice = an.report;
            ChunkOut out;
            out.eval_result = std::move(r);
            return out;
        };
        auto fold = [this, &by_we](uint64_t, ChunkOut&& out) {
            SearchResult& r = *out.eval_result;
            auto it = by_we.find(r.we.coeff);
            if (it == by_we.end()) {
                by_we.emplace(r.we.coeff, st_.results.size());
                st_.results.push_back(std::move(r));
            } else {
                ++st_.results[it->second].count;
            }
        };
        return runner.run(st_.survivors.size(), st_.next_chunk, budget, run_chunk, fold,
                          [this](uint64_t done, uint64_t total) {
                              if (opts_.progress) opts_.progress(st_.campaign + "/eval", done, total);
                          });
    }

    CampaignReport make_report(bool complete) {
        CampaignReport rep;
        rep.campaign = st_.campaign;
        rep.seed = st_.seed;
        rep.complete = complete;
        rep.tally = st_.tally;
        rep.results = st_.results;
        std::sort(rep.results.begin(), rep.results.end(), [](const SearchResult& a, const SearchResult& b) {
            return std::tie(a.p1, a.p2) < std::tie(b.p1, b.p2);
        });
        return rep;
    }

    CampaignState st_;
    Construction con_;
    const LinearCode* base_;
    CampaignOptions opts_;
};

CampaignState init_or_resume(const CampaignOptions& opts, const std::string& campaign, uint64_t seed,
                             uint64_t mode_tag, uint64_t base_hash) {
    if (opts.resume) {
        if (opts.checkpoint_path.empty()) throw std::invalid_argument("resume requires a checkpoint path");
        CampaignState st = load_state(opts.checkpoint_path);
        if (st.campaign != campaign || st.seed != seed || st.mode_tag != mode_tag || st.base_hash != base_hash)
            throw std::runtime_error("checkpoint does not match this campaign invocation");
        return st;
    }
    CampaignState st;
    st.campaign = campaign;
    st.seed = seed;
    st.mode_tag = mode_tag;
    st.base_hash = base_hash;
    return st;
}

// --- four-circulant ------------------------------------------------------------

constexpr uint32_t kRows5 = 16807;  // 7^5

std::array<uint8_t, 5> digits5(uint32_t idx) {
    std::array<uint8_t, 5> d;
    for (int i = 0; i < 5; ++i) {
        d[size_t(i)] = uint8_t(idx % 7);
        idx /= 7;
    }
    return d;
}

// Joint rotation of both first rows (negacyclic for the nega variant, where
// the wrapped symbol is negated) and global negation multiply the block
// matrix X by a signed permutation, so they give monomially equivalent codes
// with the same weight enumerator and lattice. Only the lexicographically
// smallest orbit member goes to the evaluation phase.
template <size_t N>
void rotate_row(std::array<uint8_t, N>& v, bool nega) {
    uint8_t last = v[N - 1];
    for (size_t i = N - 1; i > 0; --i) v[i] = v[i - 1];
    v[0] = nega ? fp_neg(last, 7) : last;
}

template <size_t N>
void negate_row(std::array<uint8_t, N>& v) {
    for (auto& x : v) x = fp_neg(x, 7);
}

bool orbit_canonical_pair(const std::array<uint8_t, 5>& a, const std::array<uint8_t, 5>& b, bool nega) {
    auto ra = a, rb = b;
    for (int neg = 0; neg < 2; ++neg) {
        for (int rot = 0; rot < (nega ? 10 : 5); ++rot) {
            if (neg || rot) {
                if (std::tie(ra, rb) < std::tie(a, b)) return false;
            }
            rotate_row(ra, nega);
            rotate_row(rb, nega);
        }
        if (nega) break;  // the negacyclic rotation's 5th power is already the negation
        negate_row(ra);
        negate_row(rb);
    }
    return true;
}

bool orbit_canonical_row(const std::array<uint8_t, 10>& r) {
    auto rr = r;
    for (int neg = 0; neg < 2; ++neg) {
        for (int rot = 0; rot < 10; ++rot) {
            if (neg || rot) {
                if (rr < r) return false;
            }
            rotate_row(rr, false);
        }
        negate_row(rr);
    }
    return true;
}

// first row of M M^T for the 5x5 (nega)circulant M with first row v
std::array<uint8_t, 5> gram_first_row(const std::array<uint8_t, 5>& v, bool nega) {
    uint8_t m[5][5];
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) {
            int d = j - i;
            uint8_t val = v[size_t((d % 5 + 5) % 5)];
            if (nega && d < 0) val = fp_neg(val, 7);
            m[i][j] = val;
        }
    std::array<uint8_t, 5> out;
    for (int j = 0; j < 5; ++j) {
        unsigned acc = 0;
        for (int t = 0; t < 5; ++t) acc += unsigned(m[0][t]) * m[j][t];
        out[size_t(j)] = uint8_t(acc % 7);
    }
    return out;
}

uint16_t pack5(const std::array<uint8_t, 5>& d) {
    uint32_t v = 0;
    for (int i = 4; i >= 0; --i) v = v * 7 + d[size_t(i)];
    return uint16_t(v);
}

}  // namespace

CampaignReport search_four_circulant(bool nega, const CampaignOptions& opts) {
    const std::string name = nega ? "four-negacirculant" : "four-circulant";
    CampaignState st = init_or_resume(opts, name, 0, 0, 0);
    Construction con = nega ? Construction::four_negacirculant : Construction::four_circulant;

    // bucket the 7^5 candidate rows b by the first row of B B^T; each row a
    // then meets exactly the b's with A A^T + B B^T = -I
    std::vector<std::vector<uint16_t>> buckets(kRows5);
    for (uint32_t b = 0; b < kRows5; ++b) buckets[pack5(gram_first_row(digits5(b), nega))].push_back(uint16_t(b));

    constexpr uint32_t kChunk = 128;  // rows a per scan chunk
    const uint64_t scan_chunks = (kRows5 + kChunk - 1) / kChunk;

    auto scan_chunk = [&buckets, nega](uint64_t idx) {
        ChunkOut out;
        const uint32_t lo = uint32_t(idx) * kChunk;
        const uint32_t hi = std::min(kRows5, lo + kChunk);
        for (uint32_t ai = lo; ai < hi; ++ai) {
            ++out.tally.scanned;
            auto a = digits5(ai);
            auto fa = gram_first_row(a, nega);
            std::array<uint8_t, 5> target;
            target[0] = fp_sub(6, fa[0], 7);  // -1 - fa[0]
            for (int j = 1; j < 5; ++j) target[size_t(j)] = fp_neg(fa[size_t(j)], 7);
            for (uint16_t bi : buckets[pack5(target)]) {
                ++out.tally.matched;
                ++out.tally.self_dual;
                auto b = digits5(bi);
                LinearCode code = four_circulant(a, b, nega);
                auto d = classify_min_weight(code);
                bucket_weight(out.tally, d);
                // only d = 9 hits get the full enumeration (d = 8 four-circulant
                // codes number in the hundreds of thousands), one per shift orbit
                if (d && *d == 9 && orbit_canonical_pair(a, b, nega))
                    out.survivors.push_back({{a.begin(), a.end()}, {b.begin(), b.end()}, *d});
            }
        }
        return out;
    };

    CampaignDriver driver(std::move(st), con, nullptr, opts);
    auto scan_fold = [&driver](uint64_t, ChunkOut&& out) {
        merge_tally(driver.state().tally, out.tally);
        auto& sv = driver.state().survivors;
        sv.insert(sv.end(), std::make_move_iterator(out.survivors.begin()),
                  std::make_move_iterator(out.survivors.end()));
    };
    return driver.run(scan_chunks, scan_chunk, scan_fold);
}

// --- double circulant ------------------------------------------------------------

namespace {

// rho_s = sum_i r_i r_{i+s}; R R^T = -I iff rho_0 = -1 and rho_1..5 = 0
bool dc_tail_ok(const uint8_t r[10]) {
    for (int s = 1; s <= 5; ++s) {
        unsigned acc = 0;
        for (int i = 0; i < 10; ++i) acc += unsigned(r[i]) * r[(i + s) % 10];
        if (acc % 7 != 0) return false;
    }
    return true;
}

void dc_consider(const uint8_t r[10], ChunkOut& out) {
    ++out.tally.matched;  // passed the rho_0 filter
    if (!dc_tail_ok(r)) return;
    ++out.tally.self_dual;
    std::span<const uint8_t> row(r, 10);
    LinearCode code = double_circulant(row);
    auto d = classify_min_weight(code);
    bucket_weight(out.tally, d);
    if (d && *d == 9) {
        std::array<uint8_t, 10> arr;
        std::copy(r, r + 10, arr.begin());
        if (orbit_canonical_row(arr)) out.survivors.push_back({{r, r + 10}, {}, *d});
    }
}

// DFS over the last 7 digits with a running sum of squares mod 7; only
// leaves with rho_0 = -1 get the full autocorrelation test.
void dc_dfs(uint8_t r[10], int pos, unsigned sumsq, ChunkOut& out) {
    static constexpr unsigned kSq[7] = {0, 1, 4, 2, 2, 4, 1};  // v^2 mod 7
    if (pos == 10) {
        ++out.tally.scanned;
        if (sumsq % 7 == 6) dc_consider(r, out);
        return;
    }
    for (uint8_t v = 0; v < 7; ++v) {
        r[pos] = v;
        dc_dfs(r, pos + 1, sumsq + kSq[v], out);
    }
}

}  // namespace

CampaignReport search_double_circulant(const DoubleCirculantMode& mode, const CampaignOptions& opts) {
    const uint64_t mode_tag = mode.exhaustive ? 0 : mode.samples;
    const uint64_t seed = mode.exhaustive ? 0 : mode.seed;
    CampaignState st = init_or_resume(opts, "double-circulant", seed, mode_tag, 0);

    uint64_t scan_chunks;
    std::function<ChunkOut(uint64_t)> scan_chunk;
    if (mode.exhaustive) {
        scan_chunks = 343;  // first three digits
        scan_chunk = [](uint64_t prefix) {
            ChunkOut out;
            uint8_t r[10];
            static constexpr unsigned kSq[7] = {0, 1, 4, 2, 2, 4, 1};
            r[0] = uint8_t(prefix / 49);
            r[1] = uint8_t((prefix / 7) % 7);
            r[2] = uint8_t(prefix % 7);
            unsigned sumsq = kSq[r[0]] + kSq[r[1]] + kSq[r[2]];
            dc_dfs(r, 3, sumsq, out);
            return out;
        };
    } else {
        constexpr uint64_t kDraws = 65536;  // per chunk
        scan_chunks = (mode.samples + kDraws - 1) / kDraws;
        const uint64_t samples = mode.samples;
        scan_chunk = [seed, samples](uint64_t idx) {
            ChunkOut out;
            const uint64_t lo = idx * kDraws;
            const uint64_t hi = std::min(samples, lo + kDraws);
            uint8_t r[10];
            for (uint64_t draw = lo; draw < hi; ++draw) {
                ++out.tally.scanned;
                Rng rng(derive_seed(seed, draw));
                unsigned sumsq = 0;
                for (auto& v : r) {
                    v = uint8_t(rng.below(7));
                    sumsq += unsigned(v) * v;
                }
                if (sumsq % 7 == 6) dc_consider(r, out);
            }
            return out;
        };
    }

    CampaignDriver driver(std::move(st), Construction::double_circulant, nullptr, opts);
    auto scan_fold = [&driver](uint64_t, ChunkOut&& out) {
        merge_tally(driver.state().tally, out.tally);
        auto& sv = driver.state().survivors;
        sv.insert(sv.end(), std::make_move_iterator(out.survivors.begin()),
                  std::make_move_iterator(out.survivors.end()));
    };
    return driver.run(scan_chunks, scan_chunk, scan_fold);
}

// --- neighbors ---------------------------------------------------------------------

CampaignReport search_neighbors(const LinearCode& c, uint64_t samples, uint64_t seed,
                                const CampaignOptions& opts) {
    if (!is_self_dual(c)) throw std::invalid_argument("search_neighbors: base code must be self-dual");
    if (c.p != 7 || c.n != 20) throw std::invalid_argument("search_neighbors: base code must be [20,10] over GF(7)");
    CampaignState st = init_or_resume(opts, "neighbors", seed, samples, code_hash(c));

    constexpr uint64_t kPerChunk = 16;
    const uint64_t scan_chunks = (samples + kPerChunk - 1) / kPerChunk;

    // per-sample records; coset dedup happens at fold time in sample order
    auto scan_chunk = [&c, seed, samples](uint64_t idx) {
        ChunkOut out;
        const uint64_t lo = idx * kPerChunk;
        const uint64_t hi = std::min(samples, lo + kPerChunk);
        for (uint64_t si = lo; si < hi; ++si) {
            ++out.tally.scanned;
            Rng rng(derive_seed(seed, si));
            std::vector<uint8_t> x(20);
            for (;;) {
                unsigned dot = 0, nonzero = 0;
                for (auto& v : x) {
                    v = uint8_t(rng.below(7));
                    dot += unsigned(v) * v;
                    nonzero |= v;
                }
                if (nonzero && dot % 7 == 0) break;
            }
            std::vector<uint8_t> canon = reduce_mod_code(c, x);
            if (std::all_of(canon.begin(), canon.end(), [](uint8_t v) { return v == 0; })) {
                ++out.tally.in_code;  // C(x) = C, suppressed as a duplicate
                continue;
            }
            LinearCode nb = neighbor(c, x);
            if (!is_self_dual(nb)) {
                ++out.tally.not_self_dual;
                continue;
            }
            auto d = bounded_minimum_weight(nb, 9);
            Survivor s;
            s.p1 = std::move(x);
            s.p2 = std::move(canon);
            s.d = d ? *d : 0;  // 0 encodes "minimum weight >= 10"
            out.survivors.push_back(std::move(s));
        }
        return out;
    };

    std::set<std::vector<uint8_t>> seen_set(st.seen.begin(), st.seen.end());
    CampaignDriver driver(std::move(st), Construction::neighbor, &c, opts);
    auto scan_fold = [&driver, &seen_set](uint64_t, ChunkOut&& out) {
        CampaignState& state = driver.state();
        merge_tally(state.tally, out.tally);
        for (auto& s : out.survivors) {
            if (!seen_set.insert(s.p2).second) {
                ++state.tally.coset_dup;
                continue;
            }
            state.seen.push_back(s.p2);
            ++state.tally.matched;     // distinct coset
            ++state.tally.self_dual;   // neighbor passed the predicate in the chunk
            std::optional<int> d = s.d == 0 ? std::nullopt : std::optional<int>(s.d);
            bucket_weight(state.tally, d);
            if (is_survivor(d)) {
                s.p2.clear();
                state.survivors.push_back(std::move(s));
            }
        }
    };
    return driver.run(scan_chunks, scan_chunk, scan_fold);
}

// --- ledger --------------------------------------------------------------------------

ConjectureSummary conjecture_ledger(const std::vector<SearchResult>& results) {
    ConjectureSummary s;
    std::set<std::vector<uint64_t>> wes;
    for (const auto& r : results) {
        s.results += 1;
        wes.insert(r.we.coeff);
        if (r.min_weight == 9) {
            s.d9_classes += 1;
            s.d9_hits += r.count;
            if (!r.lattice || !r.lattice->is_d20_plus) {
                s.counterexamples += r.count;
                s.counterexample_list.push_back(r);
            }
        }
    }
    for (const auto& we : wes) s.distinct_we.push_back(WeightEnumerator{we});
    return s;
}

std::string conjecture_summary_to_json(const ConjectureSummary& s) {
    nlohmann::json j;
    j["results"] = s.results;
    j["d9_classes"] = s.d9_classes;
    j["d9_hits"] = s.d9_hits;
    j["counterexamples"] = s.counterexamples;
    auto wes = nlohmann::json::array();
    for (const auto& we : s.distinct_we) wes.push_back(we.coeff);
    j["distinct_weight_enumerators"] = std::move(wes);
    auto ce = nlohmann::json::array();
    for (const auto& r : s.counterexample_list) ce.push_back(result_to_json_obj(r));
    j["counterexample_list"] = std::move(ce);
    return j.dump();
}

// --- serialization ----------------------------------------------------------------------

std::string search_result_to_json(const SearchResult& r) { return result_to_json_obj(r).dump(); }

SearchResult search_result_from_json(const std::string& line) {
    return result_from_json_obj(nlohmann::json::parse(line));
}

void save_results_jsonl(const std::vector<SearchResult>& results, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    for (const auto& r : results) out << search_result_to_json(r) << "\n";
}

std::vector<SearchResult> load_results_jsonl(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::vector<SearchResult> out;
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        try {
            out.push_back(search_result_from_json(line));
        } catch (const std::exception& e) {
            throw std::runtime_error(path + ":" + std::to_string(lineno) + ": " + e.what());
        }
    }
    return out;
}

std::string campaign_summary_json(const CampaignReport& report) {
    nlohmann::json j;
    j["campaign"] = report.campaign;
    j["seed"] = report.seed;
    j["complete"] = report.complete;
    j["tally"] = tally_to_json(report.tally);
    j["result_classes"] = report.results.size();
    return j.dump();
}

}  // namespace sdlat
