#pragma once

#include <vector>

#include "vclass/schedule.hpp"

namespace vclass {

/// Signed sum of action valences over all characters at time t, in
/// [-N, +N]. A character mid-transition contributes the valence of the
/// incoming action. Throws std::out_of_range for t outside [0, duration].
int positivity(const Schedule& schedule, double t);

/// Group positivity sampled at k * sample_interval.
struct PositivitySeries {
    double sample_interval = 0.1;
    std::vector<int> values;

    double time_of(std::size_t k) const { return static_cast<double>(k) * sample_interval; }
};

/// OpenMP-parallel sampling kernel (one sample per loop iteration).
PositivitySeries positivity_series(const Schedule& schedule, double sample_interval = 0.1);

/// Occupancy fractions of the lecture, per character-second. Blend
/// windows count as transition. A neutral hold in a Dynamic schedule is
/// part of the revert/approach choreography and also counts as
/// transition; Stable neutral holds (video segments) stay neutral.
struct TimeProfile {
    double positive_fraction = 0.0;
    double transition_fraction = 0.0;
    double negative_fraction = 0.0;
    double neutral_fraction = 0.0;
};

/// Exact piecewise integration over event boundaries, no sampling.
TimeProfile proportions(const Schedule& schedule);

namespace serial {
/// Reference implementation of the sampling kernel, kept serial for
/// differential tests and the benchmark.
PositivitySeries positivity_series(const Schedule& schedule, double sample_interval = 0.1);
} // namespace serial

} // namespace vclass
