#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace ras
{
    struct ThresholdRow
    {
        std::string family;            // ks-uniform, ks-geometric, ks-any-k, le-uniform, le-geometric
        std::optional<std::uint64_t> k; // KS rows with a fixed k
        std::int64_t alpha = 0;
        std::string parity = "all";    // all | even | odd (uniform KS, k > 2)
        // Largest beta with an Equilibrium verdict; empty when every swept
        // beta is an Equilibrium ("inf").
        std::optional<std::int64_t> max_beta;
        std::optional<std::int64_t> closed_form; // same quantity from the closed-form threshold
        bool match = false;
    };

    struct ThresholdRanges
    {
        std::int64_t alpha_min = 2;
        std::int64_t alpha_max = 16;
        std::uint64_t k_min = 2;
        std::uint64_t k_max = 8;
    };

    std::vector<ThresholdRow> thresholds_report(const ThresholdRanges& r);

    // "inf" for an empty bound.
    std::string format_bound(const std::optional<std::int64_t>& b);
}
