#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "vclass/params.hpp"
#include "vclass/rng.hpp"
#include "vclass/schedule.hpp"

namespace vclass {

/// Opening assignment at t = 0: front rows draw a neutral action
/// (leaning forward / sitting upright), back rows a negative one
/// (sleeping / looking away / elbow leaning), uniformly per character.
/// All events have start = 0, transition = 0.
std::vector<ActionEvent> generate_opening(const SeatingChart& chart, Rng& rng,
                                          const VariationTable& variations = {});

/// Per-character start offsets and blend durations for one multi-character
/// transition batch. The batch spread T is drawn uniform from the jitter
/// window, offsets uniform in [0, T] with the earliest re-normalized to 0
/// so the anchor time is exact; blends are uniform in
/// [transition_min, transition_max] and never end later than
/// T + transition_max after the anchor.
struct JitterAssignment {
    std::vector<double> offsets;     // aligned with the batch, ms-rounded
    std::vector<double> transitions; // ditto
    double spread = 0.0;             // the drawn batch window T
};

JitterAssignment apply_jitter(std::span<const int> batch, const ModeParams& params, Rng& rng);

/// Stable Mode: everyone settles into notetaking/nodding, then every
/// 18-30 s half of one row (front and back alternating, left and right
/// halves alternating per row) flips between the two positive actions.
/// Video segments push the whole class into the neutral pair with
/// re-draws at equally spaced interior points.
Schedule generate_stable(const LectureTimeline& timeline, const SeatingChart& chart,
                         const ModeParams& params, std::uint64_t seed);

/// Dynamic Mode: negative baseline, transition to positive starting
/// lead_in seconds before each key segment, lean forward at segment end,
/// then revert to negatives in a spatial wave from the back-row edges to
/// the front-row center.
Schedule generate_dynamic(const LectureTimeline& timeline, const SeatingChart& chart,
                          const ModeParams& params, std::uint64_t seed);

/// Alternating slides/notebook gaze phases covering exactly `total`
/// seconds; the final phase is truncated.
GazeCycle generate_gaze_cycle(double total, RngStream& stream);

/// Gaze cycles for every notetaking span of one character, derived
/// deterministically from the schedule seed. Returns (span start, cycle)
/// pairs in time order.
std::vector<std::pair<double, GazeCycle>> notetaking_gaze_cycles(const Schedule& schedule,
                                                                 int character_id);

/// Key segments whose gaps are too small to fit the reversion lead-in are
/// folded into single episodes. Exposed for tests and the validator.
std::vector<Segment> merge_key_segments(const std::vector<Segment>& segments,
                                        const ModeParams& params);

} // namespace vclass
