#pragma once

#include <cstdint>
#include <vector>

#include "vclass/actions.hpp"
#include "vclass/seating.hpp"
#include "vclass/timeline.hpp"

namespace vclass {

/// All generated times carry millisecond resolution so the CSV round-trip
/// is exact.
inline double round_ms(double seconds) {
    double r = static_cast<double>(static_cast<long long>(seconds * 1000.0 + (seconds >= 0 ? 0.5 : -0.5)));
    return r / 1000.0;
}

/// One action change of one character. During [start, start + transition)
/// the character blends from its previous action into this one.
struct ActionEvent {
    int character_id = 0;
    ActionKind action = ActionKind::SittingUpright;
    int variation = 1;
    double start = 0.0;      // seconds
    double transition = 0.0; // seconds, 0 only for the opening events

    bool operator==(const ActionEvent&) const = default;
};

enum class ScheduleMode { Stable, Dynamic };

/// Per-character, time-ordered action timelines. Invariants (checked by
/// the validator, kept by the generators):
///  - events[c] is strictly increasing in start,
///  - every character has exactly one event at start 0,
///  - start + transition <= timeline.duration for every event.
struct Schedule {
    ScheduleMode mode = ScheduleMode::Stable;
    std::uint64_t seed = 0;
    SeatingChart chart = SeatingChart::default_chart();
    LectureTimeline timeline;
    VariationTable variations;
    std::vector<std::vector<ActionEvent>> events; // indexed by character id

    std::size_t event_count() const;
    bool operator==(const Schedule&) const = default;
};

struct ActionState {
    ActionKind action = ActionKind::SittingUpright;
    int variation = 1;
    bool in_transition = false;

    bool operator==(const ActionState&) const = default;
};

/// Action of the last event with start <= t; in_transition while t is
/// still inside that event's blend window. Throws std::out_of_range for
/// unknown characters or t outside [0, duration].
ActionState action_at(const Schedule& schedule, int character_id, double t);

/// Notetaking gaze micro-cycle: alternating looks at the slides
/// (0.5-1.0 s) and the notebook (3.0-4.0 s), starting with the slides.
struct GazePhase {
    enum class Target { Slides, Notebook };
    Target target = Target::Slides;
    double duration = 0.0;

    bool operator==(const GazePhase&) const = default;
};

using GazeCycle = std::vector<GazePhase>;

std::string_view mode_name(ScheduleMode m);

} // namespace vclass
