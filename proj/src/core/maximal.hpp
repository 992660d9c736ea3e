#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "grid.hpp"

namespace vex {

inline constexpr std::uint64_t kDefaultSeed = 0x5EED;

/// Grids with at most this many nodes on every axis get the exhaustive cube
/// family (every side, every translation).
inline constexpr std::size_t kExhaustiveCubeLimit = 64;

/// Hardy-Littlewood maximal function over node-aligned cubes: at each node,
/// the largest average of |f| over cubes of s^n nodes containing it.
///
/// Exhaustive regime: every s from 1 to the smallest axis length, every
/// translation. Otherwise the cubes span 2^k cells (s = 2^k + 1 nodes) with
/// corners at multiples of 2^(k-1), plus the corner flush with the far
/// boundary.
SampledField maximalFunction(const SampledField& f);

struct ProbeRow {
    std::string fieldId;
    double normF = 0.0;
    double normMf = 0.0;
    double ratio = 0.0;
};

struct ProbeResult {
    std::vector<ProbeRow> rows;
    double supRatio = 0.0;
};

struct NamedField {
    std::string id;
    SampledField field;
};

/// sup over the corpus of ||Mf||_p / ||f||_p. Fields with zero norm are
/// skipped. An empirical lower bound on the operator norm, not a verdict.
ProbeResult localBoundednessProbe(const ExponentField& p, const std::vector<NamedField>& corpus);

/// Smooth bumps and box indicators of several sizes, all supported away
/// from the zero margin. Deterministic in `seed`.
std::vector<NamedField> standardCorpus(const Grid& grid, std::uint64_t seed = kDefaultSeed);

/// Indicators of [jump - w, jump) along axis 0 (full slab in the other axes
/// restricted to the central half), for w = h, 2h, 4h, ... up to maxWidth.
std::vector<NamedField> shrinkingIndicators(const Grid& grid, double jump, double maxWidth);

struct LogHolderEstimate {
    double c0Hat = 0.0;
    std::size_t pairCount = 0;
    std::pair<std::size_t, std::size_t> worstPair{0, 0};
    bool exhaustive = true;
};

/// Pair sets up to this size (4^6) are scanned exhaustively.
inline constexpr std::size_t kExhaustivePairLimit = 4096;
/// Above that, at most this many offset strata are visited...
inline constexpr std::size_t kMaxStrata = 512;
/// ...and at most this many base nodes per stratum.
inline constexpr std::size_t kStratumSampleLimit = 16384;

/// max over node pairs with 0 < |x - y| < 1/2 of |p(x) - p(y)| * (-log|x - y|).
/// Larger pair sets are stratified by offset vector. Offsets with every
/// component in [-2, 2] are always kept; the rest are thinned to one random
/// offset per distance bin. Strata with too many base nodes are subsampled.
/// All randomness derives from `seed`.
LogHolderEstimate logHolderEstimate(const ExponentField& p, std::uint64_t seed = kDefaultSeed);

}  // namespace vex
