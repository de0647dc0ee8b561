#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

namespace phkm {

/// Adjusted Rand index between two labelings of the same items, computed by
/// exact pair counting on the contingency table.  Labels are arbitrary
/// integers; only the induced partitions matter.  When the expected and
/// maximum indices coincide (e.g. both partitions trivial) the value is 1 for
/// identical partitions and 0 otherwise.
inline double adjusted_rand_index(const std::vector<int>& a, const std::vector<int>& b) {
    if (a.size() != b.size())
        throw std::invalid_argument("adjusted_rand_index: label vectors differ in length");
    if (a.empty()) throw std::invalid_argument("adjusted_rand_index: empty labelings");

    const std::size_t n = a.size();
    std::map<int, std::int64_t> row_sizes, col_sizes;
    std::map<std::pair<int, int>, std::int64_t> cells;
    for (std::size_t t = 0; t < n; ++t) {
        ++row_sizes[a[t]];
        ++col_sizes[b[t]];
        ++cells[{a[t], b[t]}];
    }

    auto choose2 = [](std::int64_t m) { return 0.5 * static_cast<double>(m) * static_cast<double>(m - 1); };

    double index = 0.0;
    for (const auto& [key, count] : cells) index += choose2(count);
    double sum_rows = 0.0, sum_cols = 0.0;
    for (const auto& [label, count] : row_sizes) sum_rows += choose2(count);
    for (const auto& [label, count] : col_sizes) sum_cols += choose2(count);

    const double pairs = choose2(static_cast<std::int64_t>(n));
    const double expected = pairs > 0.0 ? sum_rows * sum_cols / pairs : 0.0;
    const double max_index = 0.5 * (sum_rows + sum_cols);

    if (max_index == expected) {
        // Degenerate: both partitions trivial in the same way, or n == 1.
        std::map<int, int> relabel;
        for (std::size_t t = 0; t < n; ++t) {
            auto [it, inserted] = relabel.try_emplace(a[t], b[t]);
            if (it->second != b[t]) return 0.0;
        }
        std::map<int, int> reverse;
        for (const auto& [x, y] : relabel) {
            auto [it, inserted] = reverse.try_emplace(y, x);
            if (it->second != x) return 0.0;
        }
        return 1.0;
    }
    return (index - expected) / (max_index - expected);
}

struct SummaryStats {
    double mean = 0.0;
    double stddev = 0.0;  ///< sample standard deviation (n-1), 0 for n < 2
    double min = 0.0;
    double max = 0.0;
    std::size_t count = 0;
};

inline SummaryStats summarize(const std::vector<double>& values) {
    if (values.empty()) throw std::invalid_argument("summarize: no values");
    SummaryStats s;
    s.count = values.size();
    s.min = *std::min_element(values.begin(), values.end());
    s.max = *std::max_element(values.begin(), values.end());
    double total = 0.0;
    for (double v : values) total += v;
    s.mean = total / static_cast<double>(values.size());
    if (values.size() > 1) {
        double ss = 0.0;
        for (double v : values) ss += (v - s.mean) * (v - s.mean);
        s.stddev = std::sqrt(ss / static_cast<double>(values.size() - 1));
    }
    return s;
}

}  // namespace phkm
