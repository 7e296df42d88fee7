#include "vclass/schedule.hpp"

#include <algorithm>
#include <stdexcept>

namespace vclass {

std::size_t Schedule::event_count() const {
    std::size_t n = 0;
    for (const auto& ev : events) n += ev.size();
    return n;
}

ActionState action_at(const Schedule& schedule, int character_id, double t) {
    if (character_id < 0 || character_id >= static_cast<int>(schedule.events.size()))
        throw std::out_of_range("unknown character id");
    if (t < 0.0 || t > schedule.timeline.duration)
        throw std::out_of_range("time outside [0, duration]");

    const auto& events = schedule.events[static_cast<std::size_t>(character_id)];
    if (events.empty() || events.front().start > t)
        throw std::out_of_range("no event at or before the queried time");

    // Last event with start <= t.
    auto it = std::upper_bound(events.begin(), events.end(), t,
                               [](double value, const ActionEvent& e) { return value < e.start; });
    const ActionEvent& e = *(it - 1);
    return ActionState{e.action, e.variation, t < e.start + e.transition};
}

std::string_view mode_name(ScheduleMode m) {
    return m == ScheduleMode::Stable ? "stable" : "dynamic";
}

} // namespace vclass
