#pragma once

#include <cstdint>
#include <string>

#include "vclass/params.hpp"
#include "vclass/schedule.hpp"

namespace vclass {

/// One JSON file drives a generation run so experiments stay reproducible.
/// Seeds are mandatory; there is no wall-clock fallback.
struct ProjectConfig {
    ScheduleMode mode = ScheduleMode::Stable;
    std::uint64_t seed = 0;
    LectureTimeline timeline;
    SeatingChart chart = SeatingChart::default_chart();
    ModeParams params;
};

/// Parses and re-validates every timeline/params invariant. Throws
/// std::runtime_error with a descriptive message on any violation.
ProjectConfig load_config(const std::string& path);
ProjectConfig parse_config(const std::string& json_text);

/// Dispatches to the mode generator.
Schedule generate(const ProjectConfig& config);

} // namespace vclass
