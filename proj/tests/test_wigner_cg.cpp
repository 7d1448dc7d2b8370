#include <doctest.h>

#include <cmath>

#include "cqed/models.hpp"
#include "cqed/wigner.hpp"

using cqed::wigner::clebsch_gordan;
using cqed::wigner::six_j;
using cqed::wigner::three_j;

TEST_CASE("3-j symbols against table values") {
    CHECK(three_j(2, 2, 2, 2, -2, 0) == doctest::Approx(1.0 / std::sqrt(6.0)).epsilon(1e-12));
    CHECK(three_j(2, 2, 0, 0, 0, 0) == doctest::Approx(-1.0 / std::sqrt(3.0)).epsilon(1e-12));
    CHECK(three_j(1, 1, 2, 1, 1, -2) == doctest::Approx(-1.0 / std::sqrt(3.0)).epsilon(1e-12));
    // (j j 0; m -m 0) = (-1)^(j-m)/sqrt(2j+1)
    CHECK(three_j(6, 6, 0, 4, -4, 0) == doctest::Approx(-1.0 / std::sqrt(7.0)).epsilon(1e-12));

    // selection rules
    CHECK(three_j(2, 2, 2, 2, 2, 0) == 0.0);        // m sum nonzero
    CHECK(three_j(2, 2, 8, 0, 0, 0) == 0.0);        // triangle violated
    CHECK_THROWS_AS(three_j(2, 2, 2, 1, -1, 0), std::invalid_argument);   // parity mismatch
    CHECK_THROWS_AS(three_j(2, 2, 2, 4, -4, 0), std::invalid_argument);   // |m| > j
}

TEST_CASE("3-j orthogonality sum") {
    // sum over J, M of (2J+1) 3j(j1 j2 J; m1 m2 -M)^2 = 1
    const int two_j1 = 3, two_j2 = 4;   // j1 = 3/2, j2 = 2
    for (int two_m1 = -two_j1; two_m1 <= two_j1; two_m1 += 2) {
        for (int two_m2 = -two_j2; two_m2 <= two_j2; two_m2 += 2) {
            double acc = 0.0;
            const int two_m = two_m1 + two_m2;
            for (int two_J = std::abs(two_j1 - two_j2); two_J <= two_j1 + two_j2; two_J += 2) {
                if (std::abs(two_m) > two_J) continue;
                const double w = three_j(two_j1, two_j2, two_J, two_m1, two_m2, -two_m);
                acc += (two_J + 1) * w * w;
            }
            CHECK(acc == doctest::Approx(1.0).epsilon(1e-12));
        }
    }
}

TEST_CASE("6-j symbols against table values and orthogonality") {
    CHECK(six_j(2, 2, 2, 2, 2, 2) == doctest::Approx(1.0 / 6.0).epsilon(1e-12));
    CHECK(six_j(4, 4, 4, 4, 4, 4) == doctest::Approx(-3.0 / 70.0).epsilon(1e-12));
    CHECK(six_j(2, 2, 0, 2, 2, 8) == 0.0);   // triangle violated

    // column permutation symmetry
    CHECK(six_j(1, 3, 2, 7, 8, 7) == doctest::Approx(six_j(3, 1, 2, 8, 7, 7)).epsilon(1e-12));

    // orthogonality: sum_x (2x+1) {a b x; c d p} {a b x; c d q} = delta_pq / (2p+1)
    const int a = 3, b = 5, cc = 5, d = 3;   // doubled
    for (int p : {2, 4}) {
        for (int q : {2, 4}) {
            double acc = 0.0;
            for (int x = std::abs(a - b); x <= a + b; x += 2)
                acc += (x + 1) * six_j(a, b, x, cc, d, p) * six_j(a, b, x, cc, d, q);
            const double expect = (p == q) ? 1.0 / (p + 1) : 0.0;
            CHECK(acc == doctest::Approx(expect).epsilon(1e-11));
        }
    }
}

TEST_CASE("Clebsch-Gordan coupling against known values") {
    // <1/2 1/2, 1/2 -1/2 | 0 0> = 1/sqrt(2), <1/2 1/2, 1/2 -1/2 | 1 0> = 1/sqrt(2)
    CHECK(clebsch_gordan(1, 1, 1, -1, 0, 0) == doctest::Approx(1.0 / std::sqrt(2.0)));
    CHECK(clebsch_gordan(1, 1, 1, -1, 2, 0) == doctest::Approx(1.0 / std::sqrt(2.0)));
    CHECK(clebsch_gordan(1, 1, 1, 1, 2, 2) == doctest::Approx(1.0));
}

TEST_CASE("hyperfine dipole coefficients: cycling normalization and quoted ratios") {
    namespace m = cqed::models;
    CHECK(m::clebsch_gordan(4, 5, -4, -1) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(m::clebsch_gordan(4, 5, 4, 1) == doctest::Approx(1.0).epsilon(1e-12));

    CHECK(std::abs(std::abs(m::clebsch_gordan(4, 5, -4, 1)) - 0.15) < 0.005);
    CHECK(std::abs(std::abs(m::clebsch_gordan(4, 4, -4, 1)) - 0.34) < 0.005);
    CHECK(std::abs(std::abs(m::clebsch_gordan(4, 3, -4, 1)) - 0.44) < 0.005);

    // forbidden F = 4 <-> F' = 2 (Delta F = 2) comes out structurally zero
    CHECK(m::clebsch_gordan(4, 2, -2, 0) == 0.0);

    CHECK_THROWS_AS(m::clebsch_gordan(5, 5, 0, 0), std::invalid_argument);
    CHECK_THROWS_AS(m::clebsch_gordan(4, 6, 0, 0), std::invalid_argument);
    CHECK_THROWS_AS(m::clebsch_gordan(4, 5, 5, 0), std::invalid_argument);
    CHECK_THROWS_AS(m::clebsch_gordan(4, 5, 0, 2), std::invalid_argument);
    CHECK_THROWS_AS(m::clebsch_gordan(3, 2, 2, 1), std::invalid_argument);   // |m+q| > F'
}

TEST_CASE("decay weight out of every excited sublevel is uniform") {
    namespace m = cqed::models;
    for (int fp = 2; fp <= 5; ++fp) {
        for (int mp = -fp; mp <= fp; ++mp) {
            double total = 0.0;
            for (int f : {3, 4})
                for (int q : {-1, 0, 1}) {
                    const int mf = mp - q;
                    if (std::abs(mf) > f) continue;
                    const double c = m::clebsch_gordan(f, fp, mf, q);
                    total += c * c;
                }
            // cycling normalization makes the uniform total exactly 1
            CHECK(std::abs(total - 1.0) < 1e-10);
        }
    }
}
