#pragma once

#include <span>
#include <vector>

#include "toad/types.hpp"

namespace toad {

struct ConfusionCounts {
    std::size_t tp = 0;
    std::size_t tn = 0;
    std::size_t fp = 0;
    std::size_t fn = 0;
};

/**
 * Scores predicted anomaly indices against ground truth over a series of
 * length n. A prediction within +-tolerance of a still-unmatched truth index
 * is a true positive (greedy nearest matching, each truth index used once);
 * leftover predictions are false positives, leftover truths false negatives,
 * everything else true negative. Counts always sum to n. Tolerance 0 is
 * plain set arithmetic.
 */
ConfusionCounts confusion(std::span<const std::size_t> predicted,
                          std::span<const std::size_t> truth, std::size_t n,
                          std::size_t tolerance = 0);

/// 2PR/(P+R); 0 whenever a denominator vanishes.
double f1(const ConfusionCounts& counts);

} // namespace toad
