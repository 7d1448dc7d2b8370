// wigner.hpp — Wigner 3-j and 6-j symbols for integer and half-integer angular
// momenta. All arguments are passed as twice their value (two_j = 2j), so
// j = 7/2 enters as two_j = 7.

#pragma once

namespace cqed::wigner {

// (j1 j2 j3; m1 m2 m3). Returns 0 for violated selection rules; throws on
// malformed quantum numbers (negative j, |m| > j, parity mismatch).
double three_j(int two_j1, int two_j2, int two_j3, int two_m1, int two_m2, int two_m3);

// {j1 j2 j3; j4 j5 j6}. Returns 0 when any triad violates the triangle rule.
double six_j(int two_j1, int two_j2, int two_j3, int two_j4, int two_j5, int two_j6);

// <j1 m1, j2 m2 | J M>
double clebsch_gordan(int two_j1, int two_m1, int two_j2, int two_m2, int two_J, int two_M);

}  // namespace cqed::wigner
