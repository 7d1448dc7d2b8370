#include "cqed/wigner.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace cqed::wigner {

namespace {

// Factorials in extended precision; arguments stay below 40 for the angular
// momenta handled here (D2-line hyperfine structure).
constexpr int kMaxFact = 40;

long double factorial(int n) {
    static const auto table = [] {
        std::array<long double, kMaxFact + 1> t{};
        t[0] = 1.0L;
        for (int i = 1; i <= kMaxFact; ++i) t[i] = t[i - 1] * static_cast<long double>(i);
        return t;
    }();
    if (n < 0 || n > kMaxFact) throw std::invalid_argument("wigner: factorial argument out of range");
    return table[static_cast<std::size_t>(n)];
}

int parity_sign(int k) { return (k % 2 == 0) ? 1 : -1; }

bool triangle_ok(int two_a, int two_b, int two_c) {
    if ((two_a + two_b + two_c) % 2 != 0) return false;
    return two_c >= std::abs(two_a - two_b) && two_c <= two_a + two_b;
}

// sqrt of the triangle coefficient Delta(abc).
long double sqrt_triangle(int two_a, int two_b, int two_c) {
    const int x1 = (two_a + two_b - two_c) / 2;
    const int x2 = (two_a - two_b + two_c) / 2;
    const int x3 = (-two_a + two_b + two_c) / 2;
    const int x4 = (two_a + two_b + two_c) / 2 + 1;
    return std::sqrt(factorial(x1) * factorial(x2) * factorial(x3) / factorial(x4));
}

}  // namespace

double three_j(int two_j1, int two_j2, int two_j3, int two_m1, int two_m2, int two_m3) {
    if (two_j1 < 0 || two_j2 < 0 || two_j3 < 0)
        throw std::invalid_argument("three_j: negative angular momentum");
    if ((two_j1 + two_m1) % 2 != 0 || (two_j2 + two_m2) % 2 != 0 || (two_j3 + two_m3) % 2 != 0)
        throw std::invalid_argument("three_j: j and m must differ by an integer");
    if (std::abs(two_m1) > two_j1 || std::abs(two_m2) > two_j2 || std::abs(two_m3) > two_j3)
        throw std::invalid_argument("three_j: |m| exceeds j");

    if (two_m1 + two_m2 + two_m3 != 0) return 0.0;
    if (!triangle_ok(two_j1, two_j2, two_j3)) return 0.0;

    // Racah's single-sum formula.
    const int a1 = (two_j1 + two_j2 - two_j3) / 2;   // j1+j2-j3
    const int a2 = (two_j1 - two_m1) / 2;            // j1-m1
    const int a3 = (two_j2 + two_m2) / 2;            // j2+m2
    const int b1 = (two_j3 - two_j2 + two_m1) / 2;   // j3-j2+m1
    const int b2 = (two_j3 - two_j1 - two_m2) / 2;   // j3-j1-m2

    const int k_min = std::max({0, -b1, -b2});
    const int k_max = std::min({a1, a2, a3});
    if (k_min > k_max) return 0.0;

    long double sum = 0.0L;
    for (int k = k_min; k <= k_max; ++k) {
        const long double denom = factorial(k) * factorial(a1 - k) * factorial(a2 - k) *
                                  factorial(a3 - k) * factorial(b1 + k) * factorial(b2 + k);
        sum += static_cast<long double>(parity_sign(k)) / denom;
    }

    const long double pref =
        sqrt_triangle(two_j1, two_j2, two_j3) *
        std::sqrt(factorial((two_j1 + two_m1) / 2) * factorial((two_j1 - two_m1) / 2) *
                  factorial((two_j2 + two_m2) / 2) * factorial((two_j2 - two_m2) / 2) *
                  factorial((two_j3 + two_m3) / 2) * factorial((two_j3 - two_m3) / 2));
    const int phase = parity_sign((two_j1 - two_j2 - two_m3) / 2);
    return static_cast<double>(phase * pref * sum);
}

double six_j(int two_j1, int two_j2, int two_j3, int two_j4, int two_j5, int two_j6) {
    for (int t : {two_j1, two_j2, two_j3, two_j4, two_j5, two_j6})
        if (t < 0) throw std::invalid_argument("six_j: negative angular momentum");

    if (!triangle_ok(two_j1, two_j2, two_j3) || !triangle_ok(two_j1, two_j5, two_j6) ||
        !triangle_ok(two_j4, two_j2, two_j6) || !triangle_ok(two_j4, two_j5, two_j3))
        return 0.0;

    const int s1 = (two_j1 + two_j2 + two_j3) / 2;
    const int s2 = (two_j1 + two_j5 + two_j6) / 2;
    const int s3 = (two_j4 + two_j2 + two_j6) / 2;
    const int s4 = (two_j4 + two_j5 + two_j3) / 2;
    const int p1 = (two_j1 + two_j2 + two_j4 + two_j5) / 2;
    const int p2 = (two_j2 + two_j3 + two_j5 + two_j6) / 2;
    const int p3 = (two_j3 + two_j1 + two_j6 + two_j4) / 2;

    const int k_min = std::max({s1, s2, s3, s4});
    const int k_max = std::min({p1, p2, p3});
    if (k_min > k_max) return 0.0;

    long double sum = 0.0L;
    for (int k = k_min; k <= k_max; ++k) {
        const long double num = static_cast<long double>(parity_sign(k)) * factorial(k + 1);
        const long double denom = factorial(k - s1) * factorial(k - s2) * factorial(k - s3) *
                                  factorial(k - s4) * factorial(p1 - k) * factorial(p2 - k) *
                                  factorial(p3 - k);
        sum += num / denom;
    }

    const long double pref = sqrt_triangle(two_j1, two_j2, two_j3) *
                             sqrt_triangle(two_j1, two_j5, two_j6) *
                             sqrt_triangle(two_j4, two_j2, two_j6) *
                             sqrt_triangle(two_j4, two_j5, two_j3);
    return static_cast<double>(pref * sum);
}

double clebsch_gordan(int two_j1, int two_m1, int two_j2, int two_m2, int two_J, int two_M) {
    if (two_m1 + two_m2 != two_M) return 0.0;
    const double tj = three_j(two_j1, two_j2, two_J, two_m1, two_m2, -two_M);
    const int phase = parity_sign((-two_j1 + two_j2 - two_M) / 2);
    return phase * std::sqrt(static_cast<double>(two_J + 1)) * tj;
}

}  // namespace cqed::wigner
