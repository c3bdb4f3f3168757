#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "oracles.hpp"
#include "sdlat/search.hpp"

#include <filesystem>

using namespace sdlat;

namespace {

bool reports_equal(const CampaignReport& a, const CampaignReport& b) {
    if (a.campaign != b.campaign || a.complete != b.complete || !(a.tally == b.tally)) return false;
    if (a.results.size() != b.results.size()) return false;
    for (size_t i = 0; i < a.results.size(); ++i) {
        const auto& x = a.results[i];
        const auto& y = b.results[i];
        if (x.construction != y.construction || x.p1 != y.p1 || x.p2 != y.p2 ||
            x.min_weight != y.min_weight || x.count != y.count || !(x.we == y.we) ||
            x.lattice.has_value() != y.lattice.has_value())
            return false;
        if (x.lattice && !(*x.lattice == *y.lattice)) return false;
    }
    return true;
}

std::string temp_path(const char* name) {
    return (std::filesystem::temp_directory_path() / name).string();
}

}  // namespace

TEST_CASE("neighbor campaign is deterministic across thread counts") {
    LinearCode qr = extend_qr20();
    CampaignOptions one;
    one.threads = 1;
    CampaignOptions two;
    two.threads = 2;
    CampaignReport a = search_neighbors(qr, 64, 9, one);
    CampaignReport b = search_neighbors(qr, 64, 9, two);
    CHECK(reports_equal(a, b));
    CHECK(a.tally.scanned == 64);
    CHECK(a.tally.not_self_dual == 0);
    // random isotropic vectors essentially never land in the code itself
    CHECK(a.tally.matched + a.tally.in_code + a.tally.coset_dup == 64);
}

TEST_CASE("neighbor campaign checkpoint and resume reproduce the clean run") {
    LinearCode qr = extend_qr20();
    std::string ckpt = temp_path("sdlat_nb.ckpt");

    // seed 2 puts a d=8 neighbor at sample 52, so the 64-sample campaign has
    // a real evaluation phase and the resume paths cross both phases
    CampaignOptions clean;
    clean.threads = 2;
    CampaignReport full = search_neighbors(qr, 64, 2, clean);
    CHECK(full.tally.weight_8 == 1);
    REQUIRE(full.results.size() == 1);
    CHECK(full.results[0].min_weight == 8);
    CHECK(full.results[0].lattice.has_value());

    for (uint64_t stop : {1ull, 4ull}) {  // mid-scan, and at the phase boundary
        std::filesystem::remove(ckpt);
        CampaignOptions part;
        part.threads = 2;
        part.checkpoint_path = ckpt;
        part.checkpoint_every = 1;
        part.stop_after_chunks = stop;
        CampaignReport partial = search_neighbors(qr, 64, 2, part);
        CHECK_FALSE(partial.complete);

        CampaignOptions rest;
        rest.threads = 1;  // different thread count on resume
        rest.checkpoint_path = ckpt;
        rest.resume = true;
        CampaignReport resumed = search_neighbors(qr, 64, 2, rest);
        CHECK(resumed.complete);
        CHECK(reports_equal(full, resumed));
    }
    std::filesystem::remove(ckpt);
}

TEST_CASE("checkpoint refuses a mismatched invocation") {
    LinearCode qr = extend_qr20();
    std::string ckpt = temp_path("sdlat_mismatch.ckpt");
    std::filesystem::remove(ckpt);
    CampaignOptions part;
    part.threads = 1;
    part.checkpoint_path = ckpt;
    part.stop_after_chunks = 1;
    (void)search_neighbors(qr, 48, 4, part);

    CampaignOptions rest;
    rest.checkpoint_path = ckpt;
    rest.resume = true;
    CHECK_THROWS_AS((void)search_neighbors(qr, 48, 5, rest), std::runtime_error);  // wrong seed
    CHECK_THROWS_AS((void)search_double_circulant({false, 48, 4}, rest), std::runtime_error);
    std::filesystem::remove(ckpt);
}

TEST_CASE("pure double-circulant self-dual codes do not exist over GF(7)") {
    // sum of all autocorrelations = (sum r_i)^2, so R R^T = -I would force
    // (sum r_i)^2 = -1 (mod 7), and -1 is not a square mod 7
    Rng rng(606);
    for (int trial = 0; trial < 500; ++trial) {
        std::vector<uint8_t> r(10);
        for (auto& v : r) v = uint8_t(rng.below(7));
        CHECK_FALSE(is_self_dual(double_circulant(r)));
    }
}

TEST_CASE("sampled double-circulant campaign: determinism and resume") {
    DoubleCirculantMode mode;
    mode.exhaustive = false;
    mode.samples = 400000;
    mode.seed = 2;

    CampaignOptions one;
    one.threads = 1;
    CampaignOptions two;
    two.threads = 2;
    CampaignReport a = search_double_circulant(mode, one);
    CampaignReport b = search_double_circulant(mode, two);
    CHECK(reports_equal(a, b));
    CHECK(a.tally.scanned == mode.samples);
    CHECK(a.tally.matched > 0);     // the rho_0 filter passes about 1 in 7
    CHECK(a.tally.self_dual == 0);  // no pure double-circulant code is self-dual

    std::string ckpt = temp_path("sdlat_dc.ckpt");
    std::filesystem::remove(ckpt);
    CampaignOptions part;
    part.threads = 2;
    part.checkpoint_path = ckpt;
    part.checkpoint_every = 1;
    part.stop_after_chunks = 3;
    CampaignReport partial = search_double_circulant(mode, part);
    CHECK_FALSE(partial.complete);
    CampaignOptions rest;
    rest.threads = 2;
    rest.checkpoint_path = ckpt;
    rest.resume = true;
    CampaignReport resumed = search_double_circulant(mode, rest);
    CHECK(resumed.complete);
    CHECK(reports_equal(a, resumed));
    std::filesystem::remove(ckpt);
}

TEST_CASE("exhaustive double-circulant campaign scans all 7^10 rows") {
    DoubleCirculantMode mode;
    mode.exhaustive = true;
    CampaignOptions one;
    one.threads = 1;
    CampaignOptions two;
    two.threads = 2;
    CampaignReport a = search_double_circulant(mode, one);
    CampaignReport b = search_double_circulant(mode, two);
    CHECK(reports_equal(a, b));
    CHECK(a.complete);
    CHECK(a.tally.scanned == 282475249);  // 7^10
    CHECK(a.tally.matched == 40356008);   // rho_0 = -1 count
    CHECK(a.tally.self_dual == 0);
    CHECK(a.results.empty());
}

TEST_CASE("search result serialization round trip") {
    SearchResult r;
    r.construction = Construction::four_negacirculant;
    r.p1 = {1, 2, 3, 4, 5};
    r.p2 = {0, 6, 0, 6, 0};
    r.min_weight = 9;
    r.count = 5;
    r.we.coeff.assign(21, 0);
    r.we.coeff[0] = 1;
    r.we.coeff[9] = 6840;
    r.lattice = LatticeReport{2, 760, true};

    std::string line = search_result_to_json(r);
    SearchResult back = search_result_from_json(line);
    CHECK(back.construction == r.construction);
    CHECK(back.p1 == r.p1);
    CHECK(back.p2 == r.p2);
    CHECK(back.min_weight == r.min_weight);
    CHECK(back.count == r.count);
    CHECK(back.we == r.we);
    REQUIRE(back.lattice.has_value());
    CHECK(*back.lattice == *r.lattice);

    SearchResult nb;
    nb.construction = Construction::neighbor;
    nb.p1.assign(20, 1);
    nb.min_weight = 7;
    nb.we.coeff.assign(21, 0);
    std::string nb_line = search_result_to_json(nb);
    CHECK(nb_line.find("\"x\":") != std::string::npos);
    SearchResult nb_back = search_result_from_json(nb_line);
    CHECK(nb_back.p1 == nb.p1);
    CHECK_FALSE(nb_back.lattice.has_value());

    std::string path = temp_path("sdlat_results.jsonl");
    save_results_jsonl({r, nb}, path);
    auto loaded = load_results_jsonl(path);
    REQUIRE(loaded.size() == 2);
    CHECK(loaded[0].p1 == r.p1);
    CHECK(loaded[1].p1 == nb.p1);
    std::filesystem::remove(path);
}

TEST_CASE("conjecture ledger flags counterexamples") {
    CHECK(conjecture_ledger({}).results == 0);
    CHECK(conjecture_ledger({}).counterexamples == 0);

    SearchResult good;
    good.construction = Construction::four_circulant;
    good.p1 = {1, 0, 0, 0, 0};
    good.p2 = {0, 1, 0, 0, 0};
    good.min_weight = 9;
    good.count = 10;
    good.we.coeff.assign(21, 0);
    good.we.coeff[9] = 6840;
    good.lattice = LatticeReport{2, 760, true};

    SearchResult bad = good;
    bad.we.coeff[9] = 6846;  // distinct enumerator
    bad.count = 1;
    bad.lattice = LatticeReport{2, 720, false};

    ConjectureSummary s = conjecture_ledger({good, bad});
    CHECK(s.results == 2);
    CHECK(s.d9_classes == 2);
    CHECK(s.d9_hits == 11);
    CHECK(s.counterexamples == 1);
    CHECK(s.distinct_we.size() == 2);
    REQUIRE(s.counterexample_list.size() == 1);
    CHECK(s.counterexample_list[0].we.coeff[9] == 6846);

    // d = 8 results never count against the conjecture
    SearchResult d8 = good;
    d8.min_weight = 8;
    d8.lattice = LatticeReport{2, 760, true};
    CHECK(conjecture_ledger({d8}).counterexamples == 0);
}
