#include "toad/metrics.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>

namespace toad {

ConfusionCounts confusion(std::span<const std::size_t> predicted,
                          std::span<const std::size_t> truth, std::size_t n,
                          std::size_t tolerance) {
    std::vector<std::size_t> preds(predicted.begin(), predicted.end());
    std::vector<std::size_t> truths(truth.begin(), truth.end());
    std::sort(preds.begin(), preds.end());
    preds.erase(std::unique(preds.begin(), preds.end()), preds.end());
    std::sort(truths.begin(), truths.end());
    truths.erase(std::unique(truths.begin(), truths.end()), truths.end());

    for (std::size_t p : preds)
        if (p >= n) throw std::invalid_argument("predicted index outside [0, n)");
    for (std::size_t t : truths)
        if (t >= n) throw std::invalid_argument("truth index outside [0, n)");

    std::vector<bool> matched(truths.size(), false);
    ConfusionCounts counts;
    for (std::size_t p : preds) {
        std::size_t best = truths.size();
        std::size_t best_dist = tolerance + 1;
        for (std::size_t j = 0; j < truths.size(); ++j) {
            if (matched[j]) continue;
            const std::size_t dist = p > truths[j] ? p - truths[j] : truths[j] - p;
            if (dist <= tolerance && dist < best_dist) {
                best = j;
                best_dist = dist;
            }
        }
        if (best < truths.size()) {
            matched[best] = true;
            ++counts.tp;
        } else {
            ++counts.fp;
        }
    }
    for (bool m : matched)
        if (!m) ++counts.fn;
    counts.tn = n - counts.tp - counts.fp - counts.fn;
    return counts;
}

double f1(const ConfusionCounts& counts) {
    if (counts.tp + counts.fp == 0 || counts.tp + counts.fn == 0) return 0.0;
    const double precision =
        static_cast<double>(counts.tp) / static_cast<double>(counts.tp + counts.fp);
    const double recall =
        static_cast<double>(counts.tp) / static_cast<double>(counts.tp + counts.fn);
    if (precision + recall == 0.0) return 0.0;
    return 2.0 * precision * recall / (precision + recall);
}

} // namespace toad
