// Command-line front end: construction, analysis, lattice verdicts, the
// search campaigns, and the one-shot classification verification pipeline.
//
// Exit codes: 0 success, 1 verification failure, 2 usage error, 3 I/O error.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "sdlat/codes.hpp"
#include "sdlat/enumerate.hpp"
#include "sdlat/hadamard.hpp"
#include "sdlat/known_data.hpp"
#include "sdlat/lattice.hpp"
#include "sdlat/rng.hpp"
#include "sdlat/search.hpp"

using namespace sdlat;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::vector<uint8_t> parse_row(const std::string& text, size_t expect, uint8_t p) {
    std::vector<uint8_t> out;
    std::string cur;
    auto flush = [&] {
        if (cur.empty()) return;
        int v = std::stoi(cur);
        if (v < 0 || v >= int(p)) throw UsageError("entry " + cur + " out of range [0," + std::to_string(p) + ")");
        out.push_back(uint8_t(v));
        cur.clear();
    };
    for (char ch : text) {
        if (ch == ',' || ch == ' ')
            flush();
        else if (ch >= '0' && ch <= '9')
            cur.push_back(ch);
        else
            throw UsageError(std::string("unexpected character '") + ch + "' in row");
    }
    flush();
    if (out.size() != expect)
        throw UsageError("expected " + std::to_string(expect) + " symbols, got " + std::to_string(out.size()));
    return out;
}

int min_weight_from(const WeightEnumerator& we) {
    for (size_t i = 1; i < we.coeff.size(); ++i)
        if (we.coeff[i]) return int(i);
    return 0;
}

nlohmann::json analyze_json(const LinearCode& c, int threads) {
    WeightEnumerator we = weight_enumerator(c, threads);
    nlohmann::json j;
    j["p"] = c.p;
    j["n"] = c.n;
    j["k"] = c.k;
    j["self_dual"] = is_self_dual(c);
    j["min_weight"] = min_weight_from(we);
    j["weight_enumerator"] = we.coeff;
    return j;
}

void write_progress(const std::string& phase, uint64_t done, uint64_t total) {
    static auto start = std::chrono::steady_clock::now();
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    fprintf(stderr, "\r%-28s %10llu / %-10llu  %7.1fs", phase.c_str(), (unsigned long long)done,
            (unsigned long long)total, secs);
    if (done == total) fprintf(stderr, "\n");
    fflush(stderr);
}

SignMatrix load_s2_fixture(const std::string& path) {
    if (!std::filesystem::exists(path))
        throw std::runtime_error("fixture " + path + " not found; run `sdlat search drt --out " + path +
                                 "` to recover it");
    return load_sign_matrix(path);
}

// --- verify-theorem ------------------------------------------------------------

struct Claim {
    std::string id;
    std::string description;
    std::string expected;
    std::string computed;
    bool pass = false;
};

int cmd_verify_theorem(const std::string& s2_path, bool search_s2, uint64_t seed, bool as_json, int threads) {
    std::vector<Claim> claims;
    auto add = [&](std::string id, std::string desc, std::string expected, std::string computed, bool pass) {
        claims.push_back({std::move(id), std::move(desc), std::move(expected), std::move(computed), pass});
    };

    SignMatrix s1 = paley_skew_hadamard(19);
    bool c1 = is_skew_hadamard(s1);
    add("c1", "Paley matrix of order 20 is skew-Hadamard", "skew-Hadamard",
        c1 ? "skew-Hadamard" : "not skew-Hadamard", c1);

    LinearCode cs1 = code_from_matrix(hadamard_code_matrix(s1));
    WeightEnumerator we_s1 = weight_enumerator(cs1, threads);
    bool c2 = is_self_dual(cs1) && std::equal(we_s1.coeff.begin(), we_s1.coeff.end(), kPaleyClassWeights.begin());
    add("c2", "C(S1) is self-dual with the reference weight enumerator", "self-dual, A9=6840",
        std::string(is_self_dual(cs1) ? "self-dual" : "not self-dual") + ", A9=" + std::to_string(we_s1.coeff[9]),
        c2);

    bool c3 = false;
    std::string c3_computed;
    try {
        SignMatrix s2 = search_s2 ? find_second_skew_class(seed, 64, threads) : load_s2_fixture(s2_path);
        bool skew = is_skew_hadamard(s2);
        LinearCode cs2 = code_from_matrix(hadamard_code_matrix(s2));
        WeightEnumerator we_s2 = weight_enumerator(cs2, threads);
        bool match = std::equal(we_s2.coeff.begin(), we_s2.coeff.end(), kSecondClassWeights.begin());
        c3 = skew && is_self_dual(cs2) && min_weight_from(we_s2) == 8 && match;
        c3_computed = !skew ? "fixture is not skew-Hadamard"
                            : "min weight " + std::to_string(min_weight_from(we_s2)) +
                                  (match ? ", reference enumerator" : ", unexpected enumerator");
    } catch (const std::exception& e) {
        c3_computed = e.what();
    }
    add("c3", "C(S2) is self-dual with minimum weight 8 and the reference weight enumerator",
        "skew fixture, min weight 8, A8=1080", c3_computed, c3);

    LinearCode qr = extend_qr20();
    WeightEnumerator we_qr = weight_enumerator(qr, threads);
    bool c4 = is_self_dual(qr) && qr.n == 20 && qr.k == 10 && min_weight_from(we_qr) == 9;
    add("c4", "QR20 is a self-dual [20,10,9] code", "self-dual [20,10,9]",
        "[" + std::to_string(qr.n) + "," + std::to_string(qr.k) + "," +
            std::to_string(min_weight_from(we_qr)) + "]",
        c4);

    add("c5", "W(QR20) = W(C(S1))", "equal", we_qr == we_s1 ? "equal" : "different", we_qr == we_s1);

    bool c6 = false;
    std::string c6_computed;
    try {
        LatticeReport r_qr = kissing_number(qr, threads);
        LatticeReport r_s1 = kissing_number(cs1, threads);
        c6 = r_qr.kissing == kD20PlusKissing && r_s1.kissing == kD20PlusKissing && r_qr.is_d20_plus &&
             r_s1.is_d20_plus;
        c6_computed = "kissing " + std::to_string(r_qr.kissing) + " / " + std::to_string(r_s1.kissing);
    } catch (const std::exception& e) {
        c6_computed = e.what();
    }
    add("c6", "A7(QR20) and A7(C(S1)) have minimum norm 2 and kissing number 760", "kissing 760 / 760",
        c6_computed, c6);

    bool c7 = false;
    std::string c7_computed;
    try {
        auto mv = minimal_vectors(qr, threads);
        size_t bad = 0;
        for (const auto& v : mv) {
            int sum = 0, big = 0;
            std::vector<uint8_t> mod(20);
            for (int i = 0; i < 20; ++i) {
                sum += int(v.x[size_t(i)]) * v.x[size_t(i)];
                big += std::abs(int(v.x[size_t(i)])) >= 2;
                mod[size_t(i)] = uint8_t(((int(v.x[size_t(i)]) % 7) + 7) % 7);
            }
            if (sum != 14 || big > 1 || !code_contains(qr, mod)) ++bad;
        }
        c7 = mv.size() == kD20PlusKissing && bad == 0;
        c7_computed = std::to_string(mv.size()) + " minimal vectors, " + std::to_string(bad) + " violations";
    } catch (const std::exception& e) {
        c7_computed = e.what();
    }
    add("c7", "every minimal vector has at most one coordinate of magnitude >= 2", "760 vectors, 0 violations",
        c7_computed, c7);

    bool all = true;
    for (const auto& cl : claims) all = all && cl.pass;
    if (as_json) {
        nlohmann::json j;
        j["claims"] = nlohmann::json::array();
        for (const auto& cl : claims)
            j["claims"].push_back({{"id", cl.id},
                                   {"description", cl.description},
                                   {"expected", cl.expected},
                                   {"computed", cl.computed},
                                   {"pass", cl.pass}});
        j["verdict"] = all ? "pass" : "fail";
        std::cout << j.dump(2) << "\n";
    } else {
        for (const auto& cl : claims)
            printf("[%s] %s: %s (expected %s, got %s)\n", cl.pass ? "PASS" : "FAIL", cl.id.c_str(),
                   cl.description.c_str(), cl.expected.c_str(), cl.computed.c_str());
        printf("verdict: %s\n", all ? "pass" : "fail");
    }
    return all ? 0 : 1;
}

// --- construct -------------------------------------------------------------------

int cmd_construct(const std::string& kind, const std::vector<std::string>& params, bool nega,
                  const std::string& out, const std::string& s2_path) {
    nlohmann::json info;
    if (kind == "qr20" || kind == "four-circulant" || kind == "double-circulant" ||
        kind == "code-from-hadamard") {
        LinearCode c;
        if (kind == "qr20") {
            c = extend_qr20();
        } else if (kind == "four-circulant") {
            if (params.size() != 2)
                throw UsageError("four-circulant needs two 5-symbol rows, e.g. 1,2,3,4,5 0,1,0,1,0");
            c = four_circulant(parse_row(params[0], 5, 7), parse_row(params[1], 5, 7), nega);
        } else if (kind == "double-circulant") {
            if (params.size() != 1) throw UsageError("double-circulant needs one 10-symbol row");
            c = double_circulant(parse_row(params[0], 10, 7));
        } else {
            if (params.size() != 1) throw UsageError("code-from-hadamard needs a sign matrix file");
            c = code_from_matrix(hadamard_code_matrix(load_sign_matrix(params[0])));
        }
        if (!out.empty()) save_code(c, out);
        info["n"] = c.n;
        info["k"] = c.k;
        info["self_dual"] = is_self_dual(c);
        if (!out.empty()) info["out"] = out;
    } else if (kind == "paley20" || kind == "s2") {
        SignMatrix h = kind == "paley20" ? paley_skew_hadamard(19) : load_s2_fixture(s2_path);
        if (!out.empty()) save_sign_matrix(h, out);
        info["n"] = h.n;
        info["skew_hadamard"] = is_skew_hadamard(h);
        info["code_self_dual"] = is_self_dual(code_from_matrix(hadamard_code_matrix(h)));
        if (!out.empty()) info["out"] = out;
    } else {
        throw UsageError("unknown construct kind: " + kind);
    }
    std::cout << info.dump() << "\n";
    return 0;
}

// --- search ----------------------------------------------------------------------

int emit_campaign(const CampaignReport& rep, const std::string& out) {
    if (!out.empty()) {
        save_results_jsonl(rep.results, out);
        std::cout << campaign_summary_json(rep) << "\n";
    } else {
        std::cerr << campaign_summary_json(rep) << "\n";
        for (const auto& r : rep.results) std::cout << search_result_to_json(r) << "\n";
    }
    if (!rep.complete) {
        std::cerr << "campaign stopped early; resume with --resume\n";
        return 1;
    }
    return 0;
}

int cmd_search_drt(uint64_t seed, int max_seeds, const std::string& out, int threads) {
    SignMatrix h = find_second_skew_class(seed, max_seeds, threads);
    save_sign_matrix(h, out);
    WeightEnumerator we = weight_enumerator(code_from_matrix(hadamard_code_matrix(h)), threads);
    nlohmann::json j;
    j["order"] = h.n;
    j["out"] = out;
    j["skew_hadamard"] = is_skew_hadamard(h);
    j["matches_reference_class"] = std::equal(we.coeff.begin(), we.coeff.end(), kSecondClassWeights.begin());
    std::cout << j.dump() << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"self-dual [20,10] codes over GF(7), skew-Hadamard matrices, and Construction A lattices"};
    app.require_subcommand(1);
    app.fallthrough();
    int threads = 0;
    app.add_option("--threads", threads, "worker threads (0 = hardware)");

    auto* construct = app.add_subcommand("construct", "build a code or sign matrix and write it to a file");
    std::string kind, out, s2_path = "data/s2.mat";
    std::vector<std::string> params;
    bool nega = false;
    construct
        ->add_option("kind", kind, "qr20 | paley20 | s2 | code-from-hadamard | four-circulant | double-circulant")
        ->required();
    construct->add_option("params", params, "construction parameters (rows / input file)");
    construct->add_flag("--nega", nega, "negacirculant blocks for four-circulant");
    construct->add_option("--out", out, "output file");
    construct->add_option("--s2", s2_path, "s2 fixture path");

    auto* analyze = app.add_subcommand("analyze", "weight enumerator and minimum weight of a code file");
    std::string analyze_file;
    analyze->add_option("code", analyze_file, "code file (JSON)")->required();

    auto* lattice = app.add_subcommand("lattice", "Construction A lattice report of a code file");
    std::string lattice_file;
    lattice->add_option("code", lattice_file, "code file (JSON)")->required();

    auto* verify = app.add_subcommand("verify-theorem", "run the full classification verification chain");
    bool search_s2 = false, verify_json = false;
    uint64_t verify_seed = 1;
    std::string verify_s2 = "data/s2.mat";
    verify->add_flag("--search-s2", search_s2, "recover S2 by tournament search instead of the fixture");
    verify->add_flag("--json", verify_json, "machine-readable report");
    verify->add_option("--s2", verify_s2, "s2 fixture path");
    verify->add_option("--seed", verify_seed, "seed for --search-s2");

    auto* search = app.add_subcommand("search", "run a search campaign");
    search->require_subcommand(1);
    std::string ckpt, resume, search_out;
    uint64_t seed = 1, samples = 0;
    bool exhaustive = false, s_nega = false;

    auto add_campaign_opts = [&](CLI::App* sc) {
        sc->add_option("--out", search_out, "results file (JSON lines)");
        sc->add_option("--checkpoint", ckpt, "checkpoint file to write");
        sc->add_option("--resume", resume, "checkpoint file to resume from");
    };
    auto* s_fc = search->add_subcommand("four-circulant", "exhaustive four-(nega)circulant campaign");
    s_fc->add_flag("--nega", s_nega, "negacirculant variant");
    add_campaign_opts(s_fc);
    auto* s_dc = search->add_subcommand("double-circulant", "double circulant campaign");
    s_dc->add_flag("--exhaustive", exhaustive, "scan all 7^10 first rows");
    s_dc->add_option("--samples", samples, "seeded draws in sampling mode (default 2000000)");
    s_dc->add_option("--seed", seed, "sampling seed");
    add_campaign_opts(s_dc);
    auto* s_nb = search->add_subcommand("neighbors", "sampled neighbor campaign");
    std::string nb_code;
    s_nb->add_option("code", nb_code, "base code file")->required();
    s_nb->add_option("--samples", samples, "isotropic vectors to sample (default 1000)");
    s_nb->add_option("--seed", seed, "sampling seed");
    add_campaign_opts(s_nb);
    auto* s_drt = search->add_subcommand("drt", "recover the second skew-Hadamard class and save the fixture");
    int drt_max_seeds = 64;
    std::string drt_out = "data/s2.mat";
    s_drt->add_option("--seed", seed, "search seed");
    s_drt->add_option("--max-seeds", drt_max_seeds, "attempts before giving up");
    s_drt->add_option("--out", drt_out, "fixture output path");

    auto* ledger = app.add_subcommand("ledger", "aggregate campaign results and report counterexamples");
    std::vector<std::string> ledger_files;
    ledger->add_option("files", ledger_files, "JSON-lines result files")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*construct) return cmd_construct(kind, params, nega, out, s2_path);
        if (*analyze) {
            std::cout << analyze_json(load_code(analyze_file), threads).dump() << "\n";
            return 0;
        }
        if (*lattice) {
            std::cout << lattice_report_to_json(kissing_number(load_code(lattice_file), threads)) << "\n";
            return 0;
        }
        if (*verify) return cmd_verify_theorem(verify_s2, search_s2, verify_seed, verify_json, threads);
        if (*search) {
            CampaignOptions opts;
            opts.threads = threads;
            opts.progress = write_progress;
            if (!resume.empty()) {
                opts.checkpoint_path = resume;
                opts.resume = true;
            } else if (!ckpt.empty()) {
                opts.checkpoint_path = ckpt;
            }
            if (*s_fc) return emit_campaign(search_four_circulant(s_nega, opts), search_out);
            if (*s_dc) {
                DoubleCirculantMode mode;
                mode.exhaustive = exhaustive;
                if (samples) mode.samples = samples;
                mode.seed = seed;
                return emit_campaign(search_double_circulant(mode, opts), search_out);
            }
            if (*s_nb) {
                LinearCode base = load_code(nb_code);
                return emit_campaign(search_neighbors(base, samples ? samples : 1000, seed, opts), search_out);
            }
            if (*s_drt) return cmd_search_drt(seed, drt_max_seeds, drt_out, threads);
        }
        if (*ledger) {
            std::vector<SearchResult> all;
            for (const auto& f : ledger_files) {
                auto part = load_results_jsonl(f);
                all.insert(all.end(), part.begin(), part.end());
            }
            ConjectureSummary s = conjecture_ledger(all);
            std::cout << conjecture_summary_to_json(s) << "\n";
            return s.counterexamples ? 1 : 0;
        }
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 2;
}
