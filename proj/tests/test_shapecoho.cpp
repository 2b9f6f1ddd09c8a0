#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <random>

#include "shapecoho.hpp"

using namespace capfam;
using cplx = std::complex<double>;

static const double kPhi = 1.61803398874989484820458683437;

static RingElement normalizer_of(const RingElement& lambda) {
    return (RingElement(3) - RingElement(2) * re_xi(1)) * lambda +
           (RingElement(3) * re_xi(1) - RingElement(2));
}

TEST_CASE("shape classes of the named shapes") {
    // Reduced (mu1, mu2) coefficients.
    auto red = [](ShapeName n) {
        auto r = shape_class(named_shape(n)).reduced_exact();
        REQUIRE(r.has_value());
        return *r;
    };
    auto chev = red(ShapeName::Chevron);
    CHECK(chev[0] == re_one());
    CHECK(chev[1] == re_one());
    auto hat = red(ShapeName::Hat);
    CHECK(hat[0] == RingElement(Rat(3, 2)));
    CHECK(hat[1] == re_one());
    auto turtle = red(ShapeName::Turtle);
    CHECK(turtle[0] == RingElement(Rat(1, 2)) * (RingElement(3) + re_xi(5)));
    CHECK(turtle[1] == re_one());
    auto cap = red(ShapeName::CAP);
    CHECK(cap[0] == re_phi() + re_one());
    CHECK(cap[1] == re_phi() + re_xi(1));
    // Comet comes out as (1+xi, xi); the quoted frame is rotated by xi^-1.
    auto comet = red(ShapeName::Comet);
    CHECK(comet[0] == re_one() + re_xi(1));
    CHECK(comet[1] == re_xi(1));
    CHECK(re_xi(5) * comet[0] == re_one() + re_xi(5));
    CHECK(re_xi(5) * comet[1] == re_one());
    // The Key has the same reduced class as the CAP.
    auto key = red(ShapeName::Key);
    CHECK(key[0] == cap[0]);
    CHECK(key[1] == cap[1]);
}

TEST_CASE("eigen table closed forms") {
    auto table = eigen_table();
    REQUIRE(table.size() == 5);
    const RingElement phi = re_phi(), xi = re_xi(1), xi5 = re_xi(5);
    const RingElement lp(1, 1), lm(2, -1);  // phi^2, phi^-2
    const RingElement s5 = re_sqrt5();
    const RingElement pmx = phi - xi, pmx5 = phi - xi5;
    const RingElement half(Rat(1, 2));

    CHECK(table[0].name == "Chevron");
    CHECK(table[0].inner[0] == lp);
    CHECK(table[0].inner[1] == lm);

    CHECK(table[1].name == "Hat");
    CHECK(table[1].inner[0] ==
          RingElement(Rat(-1, 2)) * xi * lp * pmx5 * pmx5 * pmx5);
    CHECK(table[1].inner[1] == half * xi * lm * pmx * pmx * pmx);

    CHECK(table[2].name == "Turtle");
    CHECK(table[2].inner[0] == half * s5 * xi5 * lp * pmx5);
    CHECK(table[2].inner[1] == half * s5 * xi5 * lm * pmx);

    CHECK(table[3].name == "Comet");
    CHECK(table[3].inner[0] == lp * pmx);
    CHECK(table[3].inner[1] == RingElement(-1) * lm * pmx5);

    CHECK(table[4].name == "CAP");
    CHECK(table[4].inner[0] == s5 * lp);
    CHECK(table[4].inner[1].is_zero());
}

TEST_CASE("eigen reconstruction on random classes") {
    std::mt19937 rng(20240817);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    for (int it = 0; it < 1000; it++) {
        CochainClass c;
        for (int i = 0; i < 3; i++) c.mu[i] = {u(rng), u(rng)};
        auto red = c.reduced();
        auto coef = eigen_decompose(c);
        auto lp = ell(0), lm = ell(1);
        for (int i = 0; i < 2; i++) {
            cplx recon = coef[0] * lp[i] + coef[1] * lm[i];
            CHECK(std::abs(recon - red[i]) < 1e-12);
        }
    }
}

TEST_CASE("normalizer identity l_lambda . r_lambda") {
    for (const RingElement& lam : {RingElement(1, 1), RingElement(2, -1)}) {
        // l = (lambda - xi, 2), r = (lambda - xi; xi).
        RingElement lhs =
            (lam - re_xi(1)) * (lam - re_xi(1)) + RingElement(2) * re_xi(1);
        CHECK(lhs == normalizer_of(lam));
    }
}

TEST_CASE("sigma tilde eigen structure") {
    // Right eigen-rows of the action matrix: inner products scale by lambda.
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    const double lp = kPhi * kPhi, lm = 1.0 / (kPhi * kPhi);
    for (int it = 0; it < 50; it++) {
        std::array<cplx, 2> r = {cplx(u(rng), u(rng)), cplx(u(rng), u(rng))};
        auto s = sigma_tilde_action(r);
        const cplx xi = re_xi(1).direct();
        auto inner = [&xi](const std::array<cplx, 2>& v, double lam) {
            return v[0] * (lam - xi) + v[1] * xi;
        };
        CHECK(std::abs(inner(s, lp) - lp * inner(r, lp)) < 1e-12);
        CHECK(std::abs(inner(s, lm) - lm * inner(r, lm)) < 1e-12);
    }
    // Exact version agrees on the CAP class.
    auto cap = *shape_class(named_shape(ShapeName::CAP)).reduced_exact();
    auto img = sigma_tilde_action_exact(cap);
    auto i0 = eigen_inner_exact(cap);
    auto i1 = eigen_inner_exact(img);
    CHECK(i1[0] == RingElement(1, 1) * i0[0]);
    CHECK(i1[1] == RingElement(2, -1) * i0[1]);
}

TEST_CASE("conjugacy factors align classes with the CAP") {
    // z_shape * (S.r_{phi^2})_shape must equal (S.r_{phi^2})_CAP up to a
    // sixth root of unity.
    auto table = eigen_table();
    RingElement cap_inner = table[4].inner[0];
    std::array<ShapeName, 4> names = {ShapeName::Chevron, ShapeName::Hat,
                                      ShapeName::Turtle, ShapeName::Comet};
    for (int i = 0; i < 4; i++) {
        RingElement scaled = conjugacy_factor(names[i]) * table[i].inner[0];
        bool match = false;
        for (int k = 0; k < 6; k++)
            if (re_xi(k) * scaled == cap_inner) match = true;
        CHECK(match);
    }
    CHECK(conjugacy_factor(ShapeName::CAP) == re_one());
    // |z|^2 consistency under the star map: z z~ real in Q(phi).
    for (int i = 0; i < 4; i++) {
        RingElement z = conjugacy_factor(names[i]);
        CHECK(std::abs(z.direct()) > 0);
    }
}

TEST_CASE("return modules: rank 2 lattices and the CAP rank 4 module") {
    for (ShapeName n : {ShapeName::Chevron, ShapeName::Hat, ShapeName::Turtle,
                        ShapeName::Comet}) {
        auto d = return_module(named_shape(n));
        CHECK(d.rank == 2);
        CHECK(d.lattice_rank2);
    }
    auto cap = return_module(named_shape(ShapeName::CAP));
    CHECK(cap.rank == 4);
    CHECK(cap.cap_module);
    REQUIRE(cap.generators.size() == 4);
    for (const auto& g : cap.generators)
        CHECK(divide_exact(g, re_t0()).has_value());
}

TEST_CASE("dual module identities are exact") {
    auto ids = dual_module_identities();
    REQUIRE(ids.size() == 4);
    for (const auto& id : ids) CHECK(id.exact);
    CHECK(ids[0].name == "Chevron");
    CHECK(ids[0].multiplier == re_phi() - re_xi(5));
    CHECK(ids[1].multiplier == (re_phi() - re_xi(1)) * (re_phi() - re_xi(1)));
    CHECK(ids[2].multiplier == re_sqrt5());
    CHECK(ids[3].multiplier == (re_phi() - re_xi(5)) * (re_phi() - re_xi(5)));
    // The core identities behind them.
    CHECK((re_phi() - re_xi(1)) * (re_phi() - re_xi(5)) == RingElement(2));
    CHECK(re_sqrt5() == RingElement(2) * re_phi() - re_one());
}

TEST_CASE("spectrum rotation angle") {
    // beta = sqrt3 alpha: angle 0.
    CHECK(std::abs(spectrum_rotation(1.0, std::sqrt(3.0))) < 1e-12);
    // beta = (sqrt5 - 2) alpha / sqrt3: angle -pi/6.
    double b = (std::sqrt(5.0) - 2.0) / std::sqrt(3.0);
    CHECK(spectrum_rotation(1.0, b) ==
          doctest::Approx(-M_PI / 6).epsilon(1e-12));
    CHECK_THROWS(spectrum_rotation(0.0, 0.0));
    // Angle range sweeps between the two reflection-symmetric values.
    CHECK(!reflection_distinguishable(1.0, std::sqrt(3.0)));
    CHECK(!reflection_distinguishable(1.0, b));
    CHECK(reflection_distinguishable(1.0, 0.0));
    CHECK(reflection_distinguishable(0.0, 1.0));
    // For alpha, beta >= 0, tan of the angle stays within
    // [-sqrt(3/5), 1/sqrt(15)], the endpoints taken at beta = 0 and alpha = 0.
    for (int i = 0; i <= 100; i++) {
        double th = 0.5 * M_PI * i / 100.0;
        double a = std::cos(th), bb = std::sin(th);
        if (std::abs(a) < 1e-9 && std::abs(bb) < 1e-9) continue;
        double ang = spectrum_rotation(a, bb);
        double t = std::tan(ang);
        CHECK(t > -std::sqrt(3.0 / 5.0) - 1e-9);
        CHECK(t < 1.0 / std::sqrt(15.0) + 1e-9);
    }
}

TEST_CASE("shape_class rejects non-closed vectors") {
    ShapeVector s = named_shape(ShapeName::CAP);
    s.disp[0] += 0.5;
    CHECK_THROWS(shape_class(s));
}
