#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include "apcomplex.hpp"

using namespace capfam;

static const double kPhi = 1.61803398874989484820458683437;

TEST_CASE("boundary matrices compose to zero") {
    auto d1 = expand(boundary1(), vertex_quotients(), edge_quotients());
    auto d2 = expand(boundary2(), edge_quotients(), face_quotients());
    REQUIRE(d1.size() == 10);
    REQUIRE(d1[0].size() == 27);
    REQUIRE(d2.size() == 27);
    REQUIRE(d2[0].size() == 24);
    auto z = zmul(d1, d2);
    for (auto& row : z)
        for (auto& v : row) CHECK(v == 0);
    CHECK(zrank(d2) == 14);
    CHECK(zrank(d1) == 9);
}

TEST_CASE("substitution is a chain map") {
    // d1 * s1 == s0 * d1 and d2 * s2 == s1 * d2, expanded over the quotients.
    auto vq = vertex_quotients(), eq = edge_quotients(), fq = face_quotients();
    auto d1 = expand(boundary1(), vq, eq);
    auto d2 = expand(boundary2(), eq, fq);
    auto s0 = expand(sigma0(), vq, vq);
    auto s1 = expand(sigma1(), eq, eq);
    auto s2 = expand(sigma2(), fq, fq);
    CHECK(zmul(d1, s1) == zmul(s0, d1));
    CHECK(zmul(d2, s2) == zmul(s1, d2));
}

TEST_CASE("integer cohomology") {
    auto h = integer_cohomology();
    CHECK(h[0].free_rank == 1);
    CHECK(h[0].torsion.empty());
    CHECK(h[1].free_rank == 4);
    CHECK(h[1].torsion.empty());
    CHECK(h[2].free_rank == 10);
    CHECK(h[2].torsion.empty());
}

TEST_CASE("representation columns") {
    struct Row { int k, faces, edges, vertices, r2, r1, h0, h1, h2; };
    const Row want[] = {
        {0, 4, 4, 3, 2, 2, 1, 0, 2},
        {1, 4, 5, 1, 2, 1, 0, 2, 2},
        {2, 4, 4, 1, 3, 1, 0, 0, 1},
        {3, 4, 5, 3, 2, 3, 0, 0, 2},
        {4, 4, 4, 1, 3, 1, 0, 0, 1},
        {5, 4, 5, 1, 2, 1, 0, 2, 2},
    };
    int total_h2 = 0;
    for (const auto& w : want) {
        auto c = rep_cohomology(w.k);
        CAPTURE(w.k);
        CHECK(c.faces == w.faces);
        CHECK(c.edges == w.edges);
        CHECK(c.vertices == w.vertices);
        CHECK(c.rank_d2 == w.r2);
        CHECK(c.rank_d1 == w.r1);
        CHECK(c.h0 == w.h0);
        CHECK(c.h1 == w.h1);
        CHECK(c.h2 == w.h2);
        total_h2 += c.h2;
    }
    CHECK(total_h2 == 10);
}

TEST_CASE("induced action on H2") {
    auto act = h2_action();
    REQUIRE(act.action.size() == 10);
    CHECK((act.det == 1 || act.det == -1));
    // eigenvalue moduli by representation
    const std::vector<std::vector<double>> want_mod = {
        {1.0 / (kPhi * kPhi * kPhi * kPhi), kPhi * kPhi * kPhi * kPhi},
        {1.0 / (kPhi * kPhi), kPhi * kPhi},
        {1.0},
        {1.0 / (kPhi * kPhi), kPhi * kPhi},
        {1.0},
        {1.0 / (kPhi * kPhi), kPhi * kPhi},
    };
    for (int k = 0; k < 6; k++) {
        CAPTURE(k);
        std::vector<double> mods;
        for (auto& ev : act.eigen_by_rep[k]) mods.push_back(std::abs(ev));
        std::sort(mods.begin(), mods.end());
        REQUIRE(mods.size() == want_mod[k].size());
        for (size_t i = 0; i < mods.size(); i++)
            CHECK(mods[i] == doctest::Approx(want_mod[k][i]).epsilon(1e-7));
    }
    // the dominant eigenvalue sits in the trivial representation: phi^4
    double top = 0;
    for (auto& ev : act.eigen_by_rep[0]) top = std::max(top, std::abs(ev));
    CHECK(top == doctest::Approx(kPhi * kPhi * kPhi * kPhi).epsilon(1e-9));
}
