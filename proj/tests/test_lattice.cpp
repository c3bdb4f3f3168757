#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "oracles.hpp"
#include "sdlat/hadamard.hpp"
#include "sdlat/known_data.hpp"
#include "sdlat/lattice.hpp"
#include "sdlat/rng.hpp"

#include <set>

using namespace sdlat;

namespace {

std::vector<uint8_t> codeword_with_profile(int n1, int n2, int n3, int n) {
    std::vector<uint8_t> cw(size_t(n), 0);
    int i = 0;
    for (int t = 0; t < n1; ++t) cw[size_t(i++)] = 1;
    for (int t = 0; t < n2; ++t) cw[size_t(i++)] = 2;
    for (int t = 0; t < n3; ++t) cw[size_t(i++)] = 3;
    return cw;
}

}  // namespace

TEST_CASE("norm-2 lift counts from class profiles") {
    CHECK(norm2_lift_count(codeword_with_profile(14, 0, 0, 20)) == 1);
    CHECK(norm2_lift_count(codeword_with_profile(9, 0, 0, 20)) == 0);   // 14-9 not a multiple of 7
    CHECK(norm2_lift_count(codeword_with_profile(10, 1, 0, 20)) == 1);  // base exactly 14
    CHECK(norm2_lift_count(codeword_with_profile(1, 1, 1, 20)) == 1);   // base 14 via 1+4+9
    CHECK(norm2_lift_count(codeword_with_profile(3, 1, 0, 20)) == 0);   // base 7 but no third-class switch
    CHECK(norm2_lift_count(std::vector<uint8_t>(20, 0)) == 0);          // zero codeword
}

TEST_CASE("norm-2 lift count agrees with the naive per-coordinate DFS") {
    Rng rng(314);
    for (int trial = 0; trial < 2000; ++trial) {
        std::vector<uint8_t> cw(20);
        for (auto& v : cw) v = uint8_t(rng.below(7));
        CHECK(norm2_lift_count(cw) == oracles::naive_lift_count(cw, 14));
    }
}

TEST_CASE("shell counts match the integer ball scan on [4,2] self-dual codes") {
    Rng rng(2718);
    for (int trial = 0; trial < 10; ++trial) {
        LinearCode c = oracles::random_self_dual_4_2(rng);
        CHECK(norm_shell_count(c, 14) == oracles::ball_shell_count(c, 14));
        CHECK(norm_shell_count(c, 7) == oracles::ball_shell_count(c, 7));
    }
}

TEST_CASE("lattice report of the extended QR code") {
    LinearCode qr = extend_qr20();
    CodeAnalysis an = analyze_code20(qr);
    CHECK(an.min_weight == 9);
    CHECK(an.report.min_norm == 2);
    CHECK(an.report.kissing == 760);
    CHECK(an.report.is_d20_plus);
    CHECK(an.wide_minimal == 0);  // the one-large-coordinate property
    CHECK(std::equal(an.we.coeff.begin(), an.we.coeff.end(), kPaleyClassWeights.begin()));

    LatticeReport r = kissing_number(qr);
    CHECK(r == an.report);
}

TEST_CASE("lattice report of the second skew-Hadamard class") {
    // Its code has minimum weight 8, yet the lattice is still D20+: kissing
    // 760 at minimum norm 2 (cross-checked by the naive lift oracle).
    SignMatrix s2 = load_sign_matrix("data/s2.mat");
    REQUIRE(is_skew_hadamard(s2));
    LinearCode c = code_from_matrix(hadamard_code_matrix(s2));
    CodeAnalysis an = analyze_code20(c);
    CHECK(an.min_weight == 8);
    CHECK(std::equal(an.we.coeff.begin(), an.we.coeff.end(), kSecondClassWeights.begin()));
    CHECK(an.report.kissing == 760);
    CHECK(an.report.is_d20_plus);

    // the wide-minimal tally matches a direct count over materialized vectors
    auto mv = minimal_vectors(c);
    uint64_t wide = 0;
    for (const auto& v : mv) {
        int big = 0;
        for (int i = 0; i < 20; ++i) big += std::abs(int(v.x[size_t(i)])) >= 2;
        wide += big >= 2;
    }
    CHECK(mv.size() == an.report.kissing);
    CHECK(an.wide_minimal == wide);
}

TEST_CASE("lattice report preconditions") {
    LinearCode not_sd = code_from_matrix(FpMat::identity(7, 20));
    CHECK_THROWS_AS(kissing_number(not_sd), std::invalid_argument);

    LinearCode small = code_from_matrix(FpMat::from_rows(7, {{1, 0, 2, 3}, {0, 1, 4, 2}}));
    CHECK_THROWS_AS(kissing_number(small), std::invalid_argument);  // wrong length

    // self-dual [20,10] with a weight-3 codeword: rejected by the d >= 8 gate
    LinearCode qr = extend_qr20();
    std::vector<uint8_t> x(20, 0);
    x[0] = 1;
    x[1] = 3;
    x[2] = 2;  // 1 + 9 + 4 = 14 = 0 mod 7
    LinearCode nb = neighbor(qr, x);
    CHECK_THROWS_AS(kissing_number(nb), std::invalid_argument);
}

TEST_CASE("minimal vectors of the extended QR code") {
    LinearCode qr = extend_qr20();
    auto mv = minimal_vectors(qr);
    LatticeReport r = kissing_number(qr);
    CHECK(mv.size() == r.kissing);

    std::set<std::array<int8_t, 20>> seen;
    for (const auto& v : mv) {
        int sum = 0;
        std::vector<uint8_t> mod(20);
        for (int i = 0; i < 20; ++i) {
            sum += int(v.x[size_t(i)]) * v.x[size_t(i)];
            mod[size_t(i)] = uint8_t(((int(v.x[size_t(i)]) % 7) + 7) % 7);
        }
        CHECK(sum == 14);
        CHECK(code_contains(qr, mod));
        seen.insert(v.x);
    }
    CHECK(seen.size() == mv.size());  // distinct and sorted
    CHECK(std::is_sorted(mv.begin(), mv.end()));

    // closed under negation
    for (const auto& v : mv) {
        std::array<int8_t, 20> neg;
        for (int i = 0; i < 20; ++i) neg[size_t(i)] = int8_t(-v.x[size_t(i)]);
        CHECK(seen.count(neg) == 1);
    }
}

TEST_CASE("lattice determinant is p^(n/2) for self-dual codes") {
    LinearCode c = code_from_matrix(FpMat::from_rows(7, {{1, 0, 2, 3}, {0, 1, 4, 2}}));
    CHECK(lattice_basis_determinant(c) == 49);

    LinearCode qr = extend_qr20();
    CHECK(lattice_basis_determinant(qr) == 282475249);  // 7^10

    Rng rng(909);
    for (int i = 0; i < 5; ++i)
        CHECK(lattice_basis_determinant(oracles::random_self_dual_4_2(rng)) == 49);

    CHECK_THROWS_AS(lattice_basis_determinant(code_from_matrix(FpMat::identity(7, 4))),
                    std::invalid_argument);
}

TEST_CASE("norm_shell_count rejects non-GF(7) inputs") {
    LinearCode c = code_from_matrix(FpMat::from_rows(5, {{1, 0}, {0, 1}}));
    CHECK_THROWS_AS(norm_shell_count(c, 14), std::invalid_argument);
}
