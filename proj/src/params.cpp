#include "vclass/params.hpp"

#include <stdexcept>

namespace vclass {

void ModeParams::validate() const {
    if (!(transition_min > 0.0) || transition_min > transition_max)
        throw std::invalid_argument("require 0 < transition_min <= transition_max");
    if (stable.toggle_interval_min > stable.toggle_interval_max ||
        stable.toggle_interval_min <= 0.0)
        throw std::invalid_argument("require 0 < toggle_interval_min <= toggle_interval_max");
    if (stable.video_subintervals < 0)
        throw std::invalid_argument("video_subintervals must be non-negative");
    if (dynamic.lead_in < 0.0) throw std::invalid_argument("lead_in must be non-negative");
    if (dynamic.post_lean_forward < 0.0)
        throw std::invalid_argument("post_lean_forward must be non-negative");
    if (dynamic.revert_wave_duration < 0.0)
        throw std::invalid_argument("revert_wave_duration must be non-negative");
    if (!(dynamic.negative_dwell_min > 0.0) ||
        dynamic.negative_dwell_min > dynamic.negative_dwell_max)
        throw std::invalid_argument("require 0 < negative_dwell_min <= negative_dwell_max");
    if (!variations.valid())
        throw std::invalid_argument("variation counts must lie in [1, 3]");
}

} // namespace vclass
