#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "sdlat/codes.hpp"
#include "sdlat/lattice.hpp"

namespace sdlat {

enum class Construction { four_circulant, four_negacirculant, double_circulant, neighbor };

const char* construction_name(Construction c);

// One deduplicated discovery: the defining parameters of the first code found
// with this weight enumerator, its exact weight data, and the lattice verdict.
struct SearchResult {
    Construction construction = Construction::four_circulant;
    std::vector<uint8_t> p1;  // circulant first row(s) / neighbor vector x
    std::vector<uint8_t> p2;  // second row for four-circulant constructions
    int min_weight = 0;
    // evaluated hits sharing this weight enumerator; circulant campaigns
    // evaluate one representative per rotation/negation orbit
    uint64_t count = 1;
    WeightEnumerator we;
    std::optional<LatticeReport> lattice;
};

struct CampaignTally {
    uint64_t scanned = 0;        // outer candidates / rows / samples examined
    uint64_t matched = 0;        // hash-join matches, filter survivors, unique cosets
    uint64_t self_dual = 0;
    uint64_t weight_le7 = 0;
    uint64_t weight_8 = 0;
    uint64_t weight_9 = 0;
    uint64_t weight_ge10 = 0;
    uint64_t in_code = 0;        // neighbor sampling: x already in C
    uint64_t coset_dup = 0;      // neighbor sampling: coset representative repeated
    uint64_t not_self_dual = 0;  // constructions failing the self-duality predicate

    bool operator==(const CampaignTally&) const = default;
};

struct CampaignReport {
    std::string campaign;
    uint64_t seed = 0;
    bool complete = true;  // false when stopped early with a checkpoint
    CampaignTally tally;
    std::vector<SearchResult> results;  // deduped by weight enumerator, scan order
};

struct CampaignOptions {
    int threads = 0;
    std::string checkpoint_path;          // enables checkpoint/resume when set
    bool resume = false;                  // load checkpoint_path before running
    uint64_t checkpoint_every = 16;       // chunks folded between checkpoint writes
    uint64_t stop_after_chunks = 0;       // 0 = run to completion (interruption hook)
    std::function<void(const std::string&, uint64_t, uint64_t)> progress;
};

// Exhaustive scan of all 7^10 (a, b) pairs via a hash join: B B^T of a
// (nega)circulant is determined by the first row, so b rows are bucketed by
// that fingerprint and each a only meets the b's with A A^T + B B^T = -I,
// which is exactly self-duality of the four-circulant code.
CampaignReport search_four_circulant(bool nega, const CampaignOptions& opts = {});

struct DoubleCirculantMode {
    bool exhaustive = false;
    uint64_t samples = 2'000'000;  // draws when not exhaustive
    uint64_t seed = 1;
};

CampaignReport search_double_circulant(const DoubleCirculantMode& mode, const CampaignOptions& opts = {});

// Seeded sampling of isotropic x; neighbors C(x) deduplicated by the coset
// representative of x modulo C.
CampaignReport search_neighbors(const LinearCode& c, uint64_t samples, uint64_t seed,
                                const CampaignOptions& opts = {});

struct ConjectureSummary {
    uint64_t results = 0;
    uint64_t d9_classes = 0;
    uint64_t d9_hits = 0;
    uint64_t counterexamples = 0;  // d = 9 with A_7(C) not D20+
    std::vector<WeightEnumerator> distinct_we;
    std::vector<SearchResult> counterexample_list;
};

// Aggregates campaign results: any self-dual [20,10,9] code whose lattice is
// not D20+ is a counterexample to uniqueness.
ConjectureSummary conjecture_ledger(const std::vector<SearchResult>& results);

std::string conjecture_summary_to_json(const ConjectureSummary& s);

// --- serialization --------------------------------------------------------------

std::string search_result_to_json(const SearchResult& r);
SearchResult search_result_from_json(const std::string& line);
void save_results_jsonl(const std::vector<SearchResult>& results, const std::string& path);
std::vector<SearchResult> load_results_jsonl(const std::string& path);
std::string campaign_summary_json(const CampaignReport& report);

}  // namespace sdlat
