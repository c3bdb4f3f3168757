#pragma once

#include <array>
#include <cstdint>

namespace sdlat {

// Classification reference data for length 20 over GF(7).
//
// The two skew-Hadamard equivalence classes of order 20 yield codes with
// these weight enumerators; the Paley class gives a [20,10,9] code equal (up
// to equivalence) to the extended quadratic residue code, the second class a
// [20,10,8] code. D20+ is the unique 20-dimensional unimodular lattice with
// minimum norm 2 and kissing number 760.

inline constexpr std::array<uint64_t, 21> kPaleyClassWeights = {
    1,        0,        0,        0,        0,        0,        0,
    0,        0,        6840,     47880,    200640,   957600,   3625200,
    10766160, 25701984, 48495600, 68276880, 68299680, 43155840, 12940944};

inline constexpr std::array<uint64_t, 21> kSecondClassWeights = {
    1,        0,        0,        0,        0,        0,        0,
    0,        1080,     5040,     40320,    215760,   977040,   3571200,
    10751040, 25814304, 48431880, 68208840, 68403000, 43106160, 12949584};

inline constexpr uint64_t kD20PlusKissing = 760;
inline constexpr int kD20PlusMinNorm = 2;
inline constexpr int kQr20MinWeight = 9;

}  // namespace sdlat
