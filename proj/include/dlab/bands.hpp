#pragma once

#include <cstdint>

// Pass/fail bands for the asymptotic checks. Every limit here converges at
// O(1 / log N), so these are engineering tolerances at desk-scale N, not
// properties of the limits themselves. The exact identities have no band.
namespace dlab::bands {

/// Classical Mertens ratio, relative to e^gamma.
inline constexpr double kClassicMertensRel = 0.05;
/// Generalized Mertens ratio on a proper subset (theta < 1), relative.
inline constexpr double kSubsetMertensRel = 0.15;
/// prod_{p <= N} (1 - 1/p)^{-1} / log N against e^gamma, relative.
inline constexpr double kFixedNRel = 0.05;
/// Totient-weighted harmonic sums against their log N asymptotics, relative.
inline constexpr double kTotientRel = 0.10;
/// Williams exponent, absolute slope error.
inline constexpr double kWilliamsAbs = 0.1;
/// KS distance of normalized log I against (1/theta) D_theta.
inline constexpr double kKsModel1 = 0.05;
inline constexpr double kKsModel2 = 0.07;
inline constexpr double kKsModel3 = 0.07;

/// Below this N the asymptotic legs are reported without a verdict.
inline constexpr std::uint64_t kAsymptoticMinN = 1000;

/// Largest k^N the exact identity enumeration will attempt.
inline constexpr std::uint64_t kIdentityEnumerationLimit = 10'000'000;

}  // namespace dlab::bands
