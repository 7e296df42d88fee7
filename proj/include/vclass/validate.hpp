#pragma once

#include <optional>
#include <string>
#include <vector>

#include "vclass/params.hpp"
#include "vclass/schedule.hpp"

namespace vclass {

enum class Severity { Error, Warning };

struct Finding {
    std::string rule;
    Severity severity = Severity::Error;
    std::optional<int> character_id;
    std::optional<double> time;
    std::string message;
};

struct ValidationReport {
    std::vector<Finding> findings;

    bool empty() const { return findings.empty(); }
    int error_count() const;
    int warning_count() const;
    /// True when the schedule passed every error-severity rule.
    bool ok() const { return error_count() == 0; }
};

/// Naturalness and consistency rules:
///   event-order       [error]   per-character starts strictly increasing,
///                               one event at t = 0, events inside the timeline,
///                               variations within range
///   transition-range  [error]   blends in [transition_min, transition_max]
///                               (opening events excepted)
///   toggle-interval   [error]   Stable: gaps between toggle batches in the
///                               configured window, video segments exempt
///   segment-coverage  [error]   Dynamic: everyone positive on
///                               [start + transition_max - lead_in, end] of
///                               every key segment
///   front-row-opening [warning] a front-row character opens with a negative
///                               action
///   synchronized-batch[warning] a multi-character batch with zero jitter
///                               spread (opening excepted)
ValidationReport validate(const Schedule& schedule, const ModeParams& params);

std::string format_report(const ValidationReport& report);

} // namespace vclass
