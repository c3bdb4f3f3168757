#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "oracles.hpp"
#include "sdlat/hadamard.hpp"
#include "sdlat/known_data.hpp"
#include "sdlat/rng.hpp"

using namespace sdlat;

namespace {

SignMatrix from_rows(std::vector<std::vector<int>> rows) {
    SignMatrix h(int(rows.size()));
    for (int i = 0; i < h.n; ++i)
        for (int j = 0; j < h.n; ++j) h.at(i, j) = int8_t(rows[size_t(i)][size_t(j)]);
    return h;
}

// conjugation by a random signed permutation: h' = P h P^T
SignMatrix signed_conjugate(const SignMatrix& h, Rng& rng) {
    std::vector<int> perm(size_t(h.n));
    std::vector<int8_t> sign(size_t(h.n));
    for (int i = 0; i < h.n; ++i) perm[size_t(i)] = i;
    for (size_t i = perm.size(); i > 1; --i) std::swap(perm[i - 1], perm[rng.below(i)]);
    for (auto& s : sign) s = rng.coin() ? 1 : -1;
    SignMatrix out(h.n);
    for (int i = 0; i < h.n; ++i)
        for (int j = 0; j < h.n; ++j)
            out.at(i, j) = int8_t(sign[size_t(i)] * sign[size_t(j)] * h.at(perm[size_t(i)], perm[size_t(j)]));
    return out;
}

}  // namespace

TEST_CASE("hadamard predicates on order 2") {
    CHECK(is_hadamard(from_rows({{1, 1}, {-1, 1}})));
    CHECK(is_skew_hadamard(from_rows({{1, 1}, {-1, 1}})));
    CHECK_FALSE(is_hadamard(from_rows({{1, 1}, {1, 1}})));
    CHECK(is_hadamard(from_rows({{1, 1}, {1, -1}})));
    CHECK_FALSE(is_skew_hadamard(from_rows({{1, 1}, {1, -1}})));  // symmetric
}

TEST_CASE("Paley construction") {
    SignMatrix h4 = paley_skew_hadamard(3);
    CHECK(h4.n == 4);
    CHECK(is_skew_hadamard(h4));

    SignMatrix s1 = paley_skew_hadamard(19);
    CHECK(s1.n == 20);
    CHECK(is_hadamard(s1));
    CHECK(is_skew_hadamard(s1));

    // character values: 1 is a square mod 19, 2 is not
    CHECK(s1.at(1, 2) == 1);
    CHECK(s1.at(1, 3) == -1);

    CHECK_THROWS_AS(paley_skew_hadamard(5), std::invalid_argument);   // 5 = 1 (mod 4)
    CHECK_THROWS_AS(paley_skew_hadamard(9), std::invalid_argument);   // not prime
    CHECK_THROWS_AS(paley_skew_hadamard(-3), std::invalid_argument);
}

TEST_CASE("(H+2I)(H+2I)^T = 28I for the order-20 Paley matrix") {
    SignMatrix h = paley_skew_hadamard(19);
    for (int i = 0; i < 20; ++i)
        for (int j = 0; j < 20; ++j) {
            int64_t dot = 0;
            for (int t = 0; t < 20; ++t) {
                int64_t hi = h.at(i, t) + (i == t ? 2 : 0);
                int64_t hj = h.at(j, t) + (j == t ? 2 : 0);
                dot += hi * hj;
            }
            CHECK(dot == (i == j ? 28 : 0));
        }
}

TEST_CASE("derived code of a skew-Hadamard matrix is self-dual") {
    SignMatrix s1 = paley_skew_hadamard(19);
    LinearCode c = code_from_matrix(hadamard_code_matrix(s1));
    CHECK(c.n == 20);
    CHECK(c.k == 10);
    CHECK(is_self_dual(c));

    Rng rng(8);
    for (int i = 0; i < 20; ++i) {
        SignMatrix conj = signed_conjugate(s1, rng);
        CHECK(is_skew_hadamard(conj));
        CHECK(is_self_dual(code_from_matrix(hadamard_code_matrix(conj))));
    }
}

TEST_CASE("signed-permutation conjugation preserves the derived weight enumerator") {
    SignMatrix s1 = paley_skew_hadamard(19);
    WeightEnumerator base = weight_enumerator(code_from_matrix(hadamard_code_matrix(s1)));
    CHECK(std::equal(base.coeff.begin(), base.coeff.end(), kPaleyClassWeights.begin()));
    Rng rng(4242);
    SignMatrix conj = signed_conjugate(s1, rng);
    CHECK(weight_enumerator(code_from_matrix(hadamard_code_matrix(conj))) == base);
}

TEST_CASE("tournament correspondence") {
    SignMatrix h4 = paley_skew_hadamard(3);
    Tournament t3 = tournament_from_skew(h4);
    CHECK(t3.n == 3);
    CHECK(is_doubly_regular(t3));
    for (int u = 0; u < 3; ++u) {
        int deg = 0;
        for (int v = 0; v < 3; ++v) deg += t3.at(u, v);
        CHECK(deg == 1);  // 3-cycle
    }

    SignMatrix s1 = paley_skew_hadamard(19);
    Tournament t19 = tournament_from_skew(s1);
    CHECK(t19.n == 19);
    CHECK(is_doubly_regular(t19));

    SignMatrix back = skew_from_tournament(t19);
    CHECK(back.n == 20);
    CHECK(is_skew_hadamard(back));
    CHECK(tournament_from_skew(back).adj == t19.adj);

    CHECK_THROWS_AS(tournament_from_skew(from_rows({{1, 1}, {1, -1}})), std::invalid_argument);
}

TEST_CASE("doubly regular predicate") {
    Tournament cycle(3);
    cycle.at(0, 1) = cycle.at(1, 2) = cycle.at(2, 0) = 1;
    CHECK(is_doubly_regular(cycle));

    Tournament transitive(3);
    transitive.at(0, 1) = transitive.at(0, 2) = transitive.at(1, 2) = 1;
    CHECK_FALSE(is_doubly_regular(transitive));
    CHECK_THROWS_AS(skew_from_tournament(transitive), std::invalid_argument);

    // invariance under relabeling
    Rng rng(2);
    SignMatrix s1 = paley_skew_hadamard(19);
    Tournament t = tournament_from_skew(s1);
    std::vector<int> perm(19);
    for (int i = 0; i < 19; ++i) perm[size_t(i)] = i;
    for (size_t i = perm.size(); i > 1; --i) std::swap(perm[i - 1], perm[rng.below(i)]);
    Tournament relabeled(19);
    for (int u = 0; u < 19; ++u)
        for (int v = 0; v < 19; ++v) relabeled.at(u, v) = t.at(perm[size_t(u)], perm[size_t(v)]);
    CHECK(is_doubly_regular(relabeled));
}

TEST_CASE("the residue tournament on 19 vertices gives the Paley class") {
    // u -> v iff v - u is a nonzero square mod 19
    bool residue[19] = {};
    for (int t = 1; t < 19; ++t) residue[(t * t) % 19] = true;
    Tournament qt(19);
    for (int u = 0; u < 19; ++u)
        for (int v = 0; v < 19; ++v)
            if (u != v && residue[((v - u) % 19 + 19) % 19]) qt.at(u, v) = 1;
    REQUIRE(is_doubly_regular(qt));
    SignMatrix h = skew_from_tournament(qt);
    CHECK(is_skew_hadamard(h));
    WeightEnumerator we = weight_enumerator(code_from_matrix(hadamard_code_matrix(h)));
    CHECK(std::equal(we.coeff.begin(), we.coeff.end(), kPaleyClassWeights.begin()));
}

TEST_CASE("tournament search") {
    Tournament t3 = search_drt(3, 7);
    CHECK(t3.n == 3);
    CHECK(is_doubly_regular(t3));

    Tournament t19 = search_drt(19, 5);
    CHECK(is_doubly_regular(t19));

    // deterministic for a fixed seed, regardless of thread count
    Tournament again = search_drt(19, 5, 20000, 1);
    CHECK(again.adj == t19.adj);

    CHECK_THROWS_AS(search_drt(4, 1), std::invalid_argument);
    CHECK_THROWS_AS(search_drt(19, 1, 0), std::runtime_error);  // no restarts allowed
}

TEST_CASE("sign matrix file round trip") {
    SignMatrix s1 = paley_skew_hadamard(19);
    std::string text = sign_matrix_to_text(s1);
    CHECK(sign_matrix_from_text(text) == s1);

    CHECK_THROWS(sign_matrix_from_text("2\n1 1\n1 2\n"));
    CHECK_THROWS(sign_matrix_from_text("0\n"));
}
