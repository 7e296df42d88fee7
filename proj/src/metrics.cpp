#include "vclass/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace vclass {

namespace {

// action_at without the per-call range checks, for the sampling kernels.
inline int valence_at(const std::vector<ActionEvent>& events, double t) {
    auto it = std::upper_bound(events.begin(), events.end(), t,
                               [](double value, const ActionEvent& e) { return value < e.start; });
    if (it == events.begin()) return 0; // before the first event: counts neutral
    return valence((it - 1)->action);
}

inline std::size_t sample_count(double duration, double interval) {
    return static_cast<std::size_t>(std::floor(duration / interval + 1e-9)) + 1;
}

} // namespace

int positivity(const Schedule& schedule, double t) {
    if (t < 0.0 || t > schedule.timeline.duration)
        throw std::out_of_range("time outside [0, duration]");
    int sum = 0;
    for (const auto& events : schedule.events) sum += valence_at(events, t);
    return sum;
}

PositivitySeries positivity_series(const Schedule& schedule, double sample_interval) {
    if (!(sample_interval > 0.0))
        throw std::invalid_argument("sample interval must be positive");
    const double duration = schedule.timeline.duration;
    const std::size_t n = sample_count(duration, sample_interval);

    PositivitySeries series;
    series.sample_interval = sample_interval;
    series.values.assign(n, 0);

    const auto& events = schedule.events;
    const long long count = static_cast<long long>(n);
#pragma omp parallel for schedule(static)
    for (long long k = 0; k < count; ++k) {
        const double t = std::min(static_cast<double>(k) * sample_interval, duration);
        int sum = 0;
        for (const auto& ev : events) sum += valence_at(ev, t);
        series.values[static_cast<std::size_t>(k)] = sum;
    }
    return series;
}

namespace serial {

PositivitySeries positivity_series(const Schedule& schedule, double sample_interval) {
    if (!(sample_interval > 0.0))
        throw std::invalid_argument("sample interval must be positive");
    const double duration = schedule.timeline.duration;
    const std::size_t n = sample_count(duration, sample_interval);

    PositivitySeries series;
    series.sample_interval = sample_interval;
    series.values.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double t = std::min(static_cast<double>(k) * sample_interval, duration);
        series.values.push_back(positivity(schedule, t));
    }
    return series;
}

} // namespace serial

TimeProfile proportions(const Schedule& schedule) {
    const double duration = schedule.timeline.duration;
    if (!(duration > 0.0)) throw std::invalid_argument("schedule has no duration");
    const std::size_t n_chars = schedule.events.size();
    if (n_chars == 0) throw std::invalid_argument("schedule has no characters");

    double positive = 0.0, transition = 0.0, negative = 0.0, neutral = 0.0;
    for (const auto& events : schedule.events) {
        if (events.empty()) {
            neutral += duration;
            continue;
        }
        if (events.front().start > 0.0) neutral += events.front().start;
        for (std::size_t i = 0; i < events.size(); ++i) {
            const ActionEvent& e = events[i];
            const double t_end = i + 1 < events.size() ? events[i + 1].start : duration;
            if (t_end <= e.start) continue;
            const double blend_end = std::min(e.start + e.transition, t_end);
            transition += blend_end - e.start;
            const double hold = t_end - blend_end;
            if (hold <= 0.0) continue;
            switch (valence(e.action)) {
            case +1: positive += hold; break;
            case -1: negative += hold; break;
            default:
                // A neutral hold in Dynamic Mode is the lean-forward /
                // opening choreography between regimes: transition time.
                if (schedule.mode == ScheduleMode::Dynamic)
                    transition += hold;
                else
                    neutral += hold;
                break;
            }
        }
    }

    const double total = static_cast<double>(n_chars) * duration;
    return TimeProfile{positive / total, transition / total, negative / total, neutral / total};
}

} // namespace vclass
