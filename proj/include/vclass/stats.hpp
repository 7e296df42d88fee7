#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

namespace vclass {

enum class StatMethod { WilcoxonExact, WilcoxonNormal, KruskalWallis };

struct StatResult {
    double statistic = 0.0;
    double p_value = 1.0;
    StatMethod method = StatMethod::WilcoxonExact;
    bool corrected = false;
};

enum class WilcoxonMode { Exact, NormalApprox, Auto };

/// Two-sided Wilcoxon rank-sum test. The statistic is the rank sum W of
/// sample a with mid-ranks for ties. Exact mode counts all C(m+n, m)
/// label assignments via a subset-sum recurrence over doubled ranks and
/// doubles the smaller tail (capped at 1). Normal mode uses the
/// tie-corrected variance with a 0.5 continuity correction. Auto picks
/// exact when m + n <= 16.
StatResult wilcoxon_rank_sum(std::span<const double> a, std::span<const double> b,
                             WilcoxonMode mode = WilcoxonMode::Auto);

struct KruskalWallisResult {
    StatResult omnibus;
    std::vector<std::pair<int, int>> pairs; // group index pairs, i < j
    std::vector<StatResult> pairwise;       // aligned with pairs; empty unless requested
};

/// Kruskal-Wallis H with tie correction, p from the chi-square upper tail
/// with k-1 degrees of freedom. With bonferroni set, adds pairwise
/// rank-sum tests with p multiplied by k(k-1)/2 and capped at 1.
KruskalWallisResult kruskal_wallis(const std::vector<std::vector<double>>& groups,
                                   bool bonferroni);

/// Mid-ranks of a pooled sample (ties share the average rank).
std::vector<double> midranks(std::span<const double> pooled);

/// Upper tail of the chi-square distribution.
double chi_squared_sf(double x, double df);

/// Upper tail of the standard normal distribution.
double normal_sf(double z);

std::string_view stat_method_name(StatMethod m);

namespace reference {
/// Brute-force enumeration of every size-m subset of the pooled ranks,
/// independent of the recurrence used by wilcoxon_rank_sum. The parallel
/// variant chunks the combination sequence by unranking.
double wilcoxon_exact_p(std::span<const double> a, std::span<const double> b);
double wilcoxon_exact_p_serial(std::span<const double> a, std::span<const double> b);
} // namespace reference

} // namespace vclass
