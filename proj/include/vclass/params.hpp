#pragma once

#include "vclass/actions.hpp"

namespace vclass {

struct StableParams {
    double toggle_interval_min = 18.0; // seconds between toggle batches
    double toggle_interval_max = 30.0;
    int video_subintervals = 5; // neutral re-draw points inside a video segment

    bool operator==(const StableParams&) const = default;
};

struct DynamicParams {
    double lead_in = 2.0;              // transition start before a key segment
    double post_lean_forward = 4.0;    // lean-forward hold after a segment ends
    double revert_wave_duration = 60.0;
    // Dwell policy: after settling into a negative action a character holds
    // it for uniform [min, max] seconds, then re-draws another negative
    // action. Calibration knob for the lecture time profile.
    double negative_dwell_min = 12.0;
    double negative_dwell_max = 20.0;

    bool operator==(const DynamicParams&) const = default;
};

struct ModeParams {
    double transition_min = 2.0; // blend duration bounds, also the jitter window
    double transition_max = 4.0;
    StableParams stable;
    DynamicParams dynamic;
    VariationTable variations;

    /// Throws std::invalid_argument on out-of-range parameters.
    void validate() const;

    bool operator==(const ModeParams&) const = default;
};

} // namespace vclass
