#include "vclass/validate.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace vclass {

namespace {

constexpr double kTimeTol = 0.002; // ms rounding slack on rule thresholds

void add(ValidationReport& r, std::string rule, Severity sev, std::optional<int> character,
         std::optional<double> time, std::string message) {
    r.findings.push_back(
        Finding{std::move(rule), sev, character, time, std::move(message)});
}

std::string fmt_time(double t) {
    std::ostringstream os;
    os.precision(3);
    os << std::fixed << t;
    return os.str();
}

void check_event_order(const Schedule& s, ValidationReport& r) {
    const int n = s.chart.character_count();
    if (static_cast<int>(s.events.size()) != n) {
        add(r, "event-order", Severity::Error, std::nullopt, std::nullopt,
            "event lists do not match the seating chart character count");
        return;
    }
    for (int c = 0; c < n; ++c) {
        const auto& ev = s.events[static_cast<std::size_t>(c)];
        int at_zero = 0;
        double prev = -1.0;
        for (const ActionEvent& e : ev) {
            if (e.character_id != c)
                add(r, "event-order", Severity::Error, c, e.start,
                    "event carries a foreign character id");
            if (e.start == 0.0) ++at_zero;
            if (e.start <= prev)
                add(r, "event-order", Severity::Error, c, e.start,
                    "event starts must be strictly increasing");
            prev = e.start;
            if (e.start < 0.0 || e.start + e.transition > s.timeline.duration + kTimeTol)
                add(r, "event-order", Severity::Error, c, e.start,
                    "event extends outside the timeline");
            const int max_var = s.variations.count(e.action);
            if (e.variation < 1 || e.variation > max_var)
                add(r, "event-order", Severity::Error, c, e.start,
                    "variation " + std::to_string(e.variation) + " out of range for " +
                        std::string(action_name(e.action)));
        }
        if (at_zero != 1)
            add(r, "event-order", Severity::Error, c, 0.0,
                "character must have exactly one event at t=0");
    }
}

void check_transition_range(const Schedule& s, const ModeParams& p, ValidationReport& r) {
    for (const auto& ev : s.events)
        for (const ActionEvent& e : ev) {
            if (e.start == 0.0 && e.transition == 0.0) continue; // opening
            if (e.transition < p.transition_min - kTimeTol ||
                e.transition > p.transition_max + kTimeTol)
                add(r, "transition-range", Severity::Error, e.character_id, e.start,
                    "transition " + fmt_time(e.transition) + "s outside [" +
                        fmt_time(p.transition_min) + ", " + fmt_time(p.transition_max) + "]");
        }
}

// Toggle batches are clusters of positive->positive switches; their anchor
// gaps must stay inside the configured interval window unless a video
// segment sits between them.
void check_toggle_intervals(const Schedule& s, const ModeParams& p, ValidationReport& r) {
    if (s.mode != ScheduleMode::Stable) return;

    std::vector<double> toggle_times;
    for (const auto& ev : s.events)
        for (std::size_t i = 1; i < ev.size(); ++i)
            if (is_positive(ev[i - 1].action) && is_positive(ev[i].action))
                toggle_times.push_back(ev[i].start);
    if (toggle_times.empty()) return;
    std::sort(toggle_times.begin(), toggle_times.end());

    const double cluster_gap = 2.0 * p.transition_max;
    std::vector<double> anchors;
    anchors.push_back(toggle_times.front());
    double last = toggle_times.front();
    for (double t : toggle_times) {
        if (t - last > cluster_gap) anchors.push_back(t);
        last = t;
    }

    for (std::size_t i = 1; i < anchors.size(); ++i) {
        const double a = anchors[i - 1], b = anchors[i];
        bool video_between = false;
        for (const Segment& v : s.timeline.video_segments)
            if (v.start < b && v.end > a) {
                video_between = true;
                break;
            }
        if (video_between) continue;
        const double gap = b - a;
        if (gap < p.stable.toggle_interval_min - kTimeTol ||
            gap > p.stable.toggle_interval_max + kTimeTol)
            add(r, "toggle-interval", Severity::Error, std::nullopt, b,
                "toggle batch gap " + fmt_time(gap) + "s outside [" +
                    fmt_time(p.stable.toggle_interval_min) + ", " +
                    fmt_time(p.stable.toggle_interval_max) + "]");
    }
}

void check_segment_coverage(const Schedule& s, const ModeParams& p, ValidationReport& r) {
    if (s.mode != ScheduleMode::Dynamic) return;
    const int n = s.chart.character_count();
    for (const Segment& seg : s.timeline.key_segments) {
        const double from = seg.start + p.transition_max - p.dynamic.lead_in;
        const double to = seg.end;
        if (from > to) continue;
        for (int c = 0; c < n && c < static_cast<int>(s.events.size()); ++c) {
            const auto& ev = s.events[static_cast<std::size_t>(c)];
            bool covered = true;
            // action at `from`
            auto it = std::upper_bound(
                ev.begin(), ev.end(), from,
                [](double v, const ActionEvent& e) { return v < e.start; });
            if (it == ev.begin() || !is_positive((it - 1)->action)) covered = false;
            // no non-positive event inside (from, to]
            for (; covered && it != ev.end() && it->start <= to; ++it)
                if (!is_positive(it->action)) covered = false;
            if (!covered)
                add(r, "segment-coverage", Severity::Error, c, from,
                    "character not positive throughout [" + fmt_time(from) + ", " +
                        fmt_time(to) + "]");
        }
    }
}

void check_front_row_opening(const Schedule& s, ValidationReport& r) {
    for (int c = 0; c < s.chart.character_count() && c < static_cast<int>(s.events.size());
         ++c) {
        if (s.chart.seat_of(c).kind != RowKind::Front) continue;
        const auto& ev = s.events[static_cast<std::size_t>(c)];
        if (!ev.empty() && ev.front().start == 0.0 && is_negative(ev.front().action))
            add(r, "front-row-opening", Severity::Warning, c, 0.0,
                "front-row character opens with a negative action; negative openers read "
                "more natural in the rear rows");
    }
}

// Offset jitter is the naturalness mechanism: a multi-character batch whose
// members all start at the same instant reads as lockstep.
void check_synchronized_batches(const Schedule& s, const ModeParams& p, ValidationReport& r) {
    std::vector<double> starts;
    for (const auto& ev : s.events)
        for (const ActionEvent& e : ev)
            if (e.start > 0.0) starts.push_back(e.start);
    if (starts.size() < 2) return;
    std::sort(starts.begin(), starts.end());

    const double cluster_gap = 2.0 * p.transition_max;
    std::size_t begin = 0;
    for (std::size_t i = 1; i <= starts.size(); ++i) {
        if (i == starts.size() || starts[i] - starts[i - 1] > cluster_gap) {
            const std::size_t size = i - begin;
            if (size > 1 && starts[i - 1] - starts[begin] == 0.0)
                add(r, "synchronized-batch", Severity::Warning, std::nullopt, starts[begin],
                    "batch of " + std::to_string(size) +
                        " transitions with zero jitter spread");
            begin = i;
        }
    }
}

} // namespace

int ValidationReport::error_count() const {
    int n = 0;
    for (const Finding& f : findings) n += f.severity == Severity::Error ? 1 : 0;
    return n;
}

int ValidationReport::warning_count() const {
    return static_cast<int>(findings.size()) - error_count();
}

ValidationReport validate(const Schedule& schedule, const ModeParams& params) {
    ValidationReport report;
    check_event_order(schedule, report);
    check_transition_range(schedule, params, report);
    check_toggle_intervals(schedule, params, report);
    check_segment_coverage(schedule, params, report);
    check_front_row_opening(schedule, report);
    check_synchronized_batches(schedule, params, report);
    return report;
}

std::string format_report(const ValidationReport& report) {
    std::ostringstream os;
    for (const Finding& f : report.findings) {
        os << (f.severity == Severity::Error ? "error" : "warning") << " [" << f.rule << "]";
        if (f.character_id) os << " character=" << *f.character_id;
        if (f.time) os << " t=" << fmt_time(*f.time);
        os << ": " << f.message << "\n";
    }
    os << report.error_count() << " error(s), " << report.warning_count() << " warning(s)\n";
    return os.str();
}

} // namespace vclass
