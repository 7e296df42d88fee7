#include "vclass/scheduler.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace vclass {

namespace {

constexpr double kTick = 0.001; // time resolution

struct Combo {
    ActionKind action = ActionKind::SittingUpright;
    int variation = 1;

    bool operator==(const Combo&) const = default;
};

Combo draw_combo(RngStream& s, std::span<const ActionKind> pool, const VariationTable& vt) {
    ActionKind a = pool[s.uniform_index(static_cast<std::uint32_t>(pool.size()))];
    int v = 1 + static_cast<int>(s.uniform_index(static_cast<std::uint32_t>(vt.count(a))));
    return {a, v};
}

// Uniform over the pool's (action, variation) combos minus the current
// one, so a re-draw always changes something visible.
Combo draw_combo_excluding(RngStream& s, std::span<const ActionKind> pool,
                           const VariationTable& vt, Combo current) {
    int total = 0;
    bool excluded = false;
    for (ActionKind a : pool) {
        total += vt.count(a);
        if (a == current.action) excluded = true;
    }
    const int choices = total - (excluded ? 1 : 0);
    if (choices <= 0) return current;
    int k = static_cast<int>(s.uniform_index(static_cast<std::uint32_t>(choices)));
    for (ActionKind a : pool) {
        for (int v = 1; v <= vt.count(a); ++v) {
            if (excluded && a == current.action && v == current.variation) continue;
            if (k == 0) return {a, v};
            --k;
        }
    }
    return current; // unreachable
}

class ScheduleBuilder {
  public:
    ScheduleBuilder(int character_count, double duration, double transition_min)
        : events_(static_cast<std::size_t>(character_count)),
          current_(static_cast<std::size_t>(character_count)),
          duration_(duration),
          transition_min_(transition_min) {}

    // Rounds times to ms, keeps per-character starts strictly increasing
    // and clamps the blend at the timeline end. Returns false when the
    // event cannot fit.
    bool push(int c, Combo combo, double start, double transition) {
        start = round_ms(start);
        transition = round_ms(transition);
        auto& ev = events_[static_cast<std::size_t>(c)];
        if (!ev.empty() && start <= ev.back().start + 1e-9) return false;
        if (start < 0.0 || start > duration_ + 1e-9) return false;
        if (start + transition > duration_) {
            const double room = duration_ - start;
            if (transition > 0.0 && room + 1e-9 < transition_min_) return false;
            transition = std::floor(room * 1000.0) / 1000.0;
        }
        ev.push_back(ActionEvent{c, combo.action, combo.variation, start, transition});
        current_[static_cast<std::size_t>(c)] = combo;
        return true;
    }

    Combo current(int c) const { return current_[static_cast<std::size_t>(c)]; }

    double last_start(int c) const {
        const auto& ev = events_[static_cast<std::size_t>(c)];
        return ev.empty() ? -1.0 : ev.back().start;
    }

    std::vector<std::vector<ActionEvent>> take() { return std::move(events_); }

  private:
    std::vector<std::vector<ActionEvent>> events_;
    std::vector<Combo> current_;
    double duration_;
    double transition_min_;
};

struct BatchOptions {
    // All blends complete within this window after the anchor; <= 0 uses
    // the default spread + transition_max envelope.
    double completion_window = -1.0;
    // Earliest offset pulled back to 0 so the anchor time is exact.
    bool renormalize = true;
    // Added to every offset after renormalization; keeps reversion events
    // strictly after the segment end.
    double offset_shift = 0.0;
    // Hard cap on offsets (reversion must start before the revert wave).
    double max_offset = -1.0;
};

struct BatchDraws {
    std::vector<double> offsets;
    std::vector<double> transitions;
    double spread = 0.0;
};

BatchDraws draw_batch(std::span<const int> batch, const ModeParams& p, RngStream& master,
                      std::vector<RngStream>& streams, const BatchOptions& opt = {}) {
    BatchDraws out;
    double spread = master.uniform(p.transition_min, p.transition_max);
    if (opt.completion_window > 0.0)
        spread = std::min(spread, opt.completion_window - p.transition_min);
    if (opt.max_offset >= 0.0) spread = std::min(spread, opt.max_offset);
    spread = std::max(spread, 0.0);
    out.spread = spread;

    out.offsets.reserve(batch.size());
    out.transitions.reserve(batch.size());
    for (int c : batch) {
        RngStream& s = streams[static_cast<std::size_t>(c)];
        const double off = s.uniform(0.0, spread);
        const double window =
            opt.completion_window > 0.0 ? opt.completion_window : spread + p.transition_max;
        double tr = s.uniform(p.transition_min, p.transition_max);
        tr = std::min(tr, window - off);
        out.offsets.push_back(off);
        out.transitions.push_back(tr);
    }
    if (opt.renormalize && !out.offsets.empty()) {
        const double lo = *std::min_element(out.offsets.begin(), out.offsets.end());
        for (double& o : out.offsets) o -= lo;
    }
    for (double& o : out.offsets) o = round_ms(o + opt.offset_shift);
    for (double& t : out.transitions) t = round_ms(t);
    return out;
}

std::vector<int> all_characters(const SeatingChart& chart) {
    std::vector<int> ids(static_cast<std::size_t>(chart.character_count()));
    for (int i = 0; i < chart.character_count(); ++i) ids[static_cast<std::size_t>(i)] = i;
    return ids;
}

void apply_opening(ScheduleBuilder& builder, const SeatingChart& chart, Rng& rng,
                   const VariationTable& vt) {
    for (const ActionEvent& e : generate_opening(chart, rng, vt))
        builder.push(e.character_id, {e.action, e.variation}, e.start, e.transition);
}

} // namespace

std::vector<ActionEvent> generate_opening(const SeatingChart& chart, Rng& rng,
                                          const VariationTable& variations) {
    std::vector<ActionEvent> out;
    out.reserve(static_cast<std::size_t>(chart.character_count()));
    for (int c = 0; c < chart.character_count(); ++c) {
        RngStream s = rng.stream(0x4F50454Eull /* opening draws */ ^
                                 (static_cast<std::uint64_t>(c) << 8));
        const bool front = chart.seat_of(c).kind == RowKind::Front;
        Combo combo = front ? draw_combo(s, kNeutralActions, variations)
                            : draw_combo(s, kNegativeActions, variations);
        out.push_back(ActionEvent{c, combo.action, combo.variation, 0.0, 0.0});
    }
    return out;
}

JitterAssignment apply_jitter(std::span<const int> batch, const ModeParams& params, Rng& rng) {
    if (batch.empty()) throw std::invalid_argument("jitter batch must not be empty");
    RngStream master = rng.master();
    std::vector<RngStream> streams;
    int max_id = *std::max_element(batch.begin(), batch.end());
    streams.reserve(static_cast<std::size_t>(max_id) + 1);
    for (int c = 0; c <= max_id; ++c) streams.push_back(rng.character_stream(c));
    BatchDraws d = draw_batch(batch, params, master, streams);
    return JitterAssignment{std::move(d.offsets), std::move(d.transitions), d.spread};
}

std::vector<Segment> merge_key_segments(const std::vector<Segment>& segments,
                                        const ModeParams& params) {
    const double min_gap = params.dynamic.lead_in + params.transition_max;
    std::vector<Segment> merged;
    for (const Segment& s : segments) {
        if (!merged.empty() && s.start - merged.back().end < min_gap)
            merged.back().end = s.end;
        else
            merged.push_back(s);
    }
    return merged;
}

// ---------------------------------------------------------------------------
// Stable Mode

Schedule generate_stable(const LectureTimeline& timeline, const SeatingChart& chart,
                         const ModeParams& params, std::uint64_t seed) {
    timeline.validate();
    params.validate();
    const double batch_envelope = 2.0 * params.transition_max; // spread + blend
    if (timeline.duration < params.transition_min + batch_envelope)
        throw std::invalid_argument("timeline shorter than one transition batch");

    Rng rng(seed);
    RngStream master = rng.master();
    std::vector<RngStream> streams;
    streams.reserve(static_cast<std::size_t>(chart.character_count()));
    for (int c = 0; c < chart.character_count(); ++c)
        streams.push_back(rng.character_stream(c));

    ScheduleBuilder builder(chart.character_count(), timeline.duration, params.transition_min);
    apply_opening(builder, chart, rng, params.variations);

    // Toggle anchors: cumulative 18-30 s draws from t = 0. Anchors whose
    // batch would touch a video segment (or the timeline end) are dropped;
    // the clock keeps running.
    std::vector<double> toggle_anchors;
    for (double t = master.uniform(params.stable.toggle_interval_min,
                                   params.stable.toggle_interval_max);
         t <= timeline.duration - batch_envelope;
         t += master.uniform(params.stable.toggle_interval_min,
                             params.stable.toggle_interval_max)) {
        bool blocked = false;
        for (const Segment& v : timeline.video_segments)
            if (t > v.start - batch_envelope && t < v.end + batch_envelope) {
                blocked = true;
                break;
            }
        if (!blocked) toggle_anchors.push_back(t);
    }

    struct Batch {
        double anchor;
        enum class Kind { Settle, Toggle, VideoEnter, VideoRedraw, VideoReturn } kind;
        int row = -1;
        bool left_half = false;
        double spacing = 0.0; // redraw point spacing, caps the spread
    };
    using BatchKind = Batch::Kind;

    std::vector<Batch> batches;
    batches.push_back({params.transition_min, BatchKind::Settle, -1, false, 0.0});

    const int row_count = static_cast<int>(chart.rows().size());
    std::vector<bool> next_left(static_cast<std::size_t>(row_count), true);
    int row_cursor = 0;
    for (double t : toggle_anchors) {
        const int row = row_cursor % row_count;
        batches.push_back({t, BatchKind::Toggle, row, next_left[static_cast<std::size_t>(row)],
                           0.0});
        next_left[static_cast<std::size_t>(row)] = !next_left[static_cast<std::size_t>(row)];
        ++row_cursor;
    }

    for (const Segment& v : timeline.video_segments) {
        const int sub = params.stable.video_subintervals;
        const double spacing = v.length() / static_cast<double>(sub + 1);
        batches.push_back({v.start, BatchKind::VideoEnter, -1, false, spacing});
        for (int k = 1; k <= sub; ++k)
            batches.push_back(
                {v.start + spacing * static_cast<double>(k), BatchKind::VideoRedraw, -1, false,
                 spacing});
        batches.push_back({v.end, BatchKind::VideoReturn, -1, false, 0.0});
    }

    std::stable_sort(batches.begin(), batches.end(),
                     [](const Batch& a, const Batch& b) { return a.anchor < b.anchor; });

    const std::vector<int> everyone = all_characters(chart);
    for (const Batch& batch : batches) {
        std::vector<int> ids;
        BatchOptions opt;
        switch (batch.kind) {
        case BatchKind::Settle:
        case BatchKind::VideoEnter:
        case BatchKind::VideoReturn:
            ids = everyone;
            break;
        case BatchKind::Toggle:
            ids = chart.row_half(batch.row, batch.left_half);
            break;
        case BatchKind::VideoRedraw:
            ids = everyone;
            // Keep consecutive re-draw batches disjoint per character.
            opt.max_offset = std::max(0.0, batch.spacing * 0.45);
            break;
        }
        if (batch.kind == BatchKind::VideoEnter)
            opt.max_offset = std::max(0.0, batch.spacing * 0.45);

        BatchDraws draws = draw_batch(ids, params, master, streams, opt);
        for (std::size_t i = 0; i < ids.size(); ++i) {
            const int c = ids[i];
            RngStream& s = streams[static_cast<std::size_t>(c)];
            Combo cur = builder.current(c);
            Combo next;
            switch (batch.kind) {
            case BatchKind::Settle:
            case BatchKind::VideoReturn:
                next = draw_combo(s, kPositiveActions, params.variations);
                break;
            case BatchKind::Toggle:
                if (is_positive(cur.action)) {
                    next.action = cur.action == ActionKind::Notetaking ? ActionKind::Nodding
                                                                       : ActionKind::Notetaking;
                    next.variation = 1 + static_cast<int>(s.uniform_index(
                                             static_cast<std::uint32_t>(
                                                 params.variations.count(next.action))));
                } else {
                    next = draw_combo(s, kPositiveActions, params.variations);
                }
                break;
            case BatchKind::VideoEnter:
                next = draw_combo(s, kNeutralActions, params.variations);
                break;
            case BatchKind::VideoRedraw:
                next = draw_combo_excluding(s, kNeutralActions, params.variations, cur);
                break;
            }
            builder.push(c, next, batch.anchor + draws.offsets[i], draws.transitions[i]);
        }
    }

    Schedule schedule;
    schedule.mode = ScheduleMode::Stable;
    schedule.seed = seed;
    schedule.chart = chart;
    schedule.timeline = timeline;
    schedule.variations = params.variations;
    schedule.events = builder.take();
    return schedule;
}

// ---------------------------------------------------------------------------
// Dynamic Mode

namespace {

// Holds per-character dwell state while walking the episode sequence.
struct DynamicWalk {
    ScheduleBuilder& builder;
    const SeatingChart& chart;
    const ModeParams& params;
    std::vector<RngStream>& streams;
    double duration;

    // Re-draw a fresh negative action every dwell interval, never crossing
    // `until` (the next lead-in anchor) nor the timeline end.
    void dwell(int c, double settled_start, double settled_transition, double until) {
        RngStream& s = streams[static_cast<std::size_t>(c)];
        double t = settled_start + settled_transition;
        for (;;) {
            t += s.uniform(params.dynamic.negative_dwell_min, params.dynamic.negative_dwell_max);
            if (t >= until - kTick || t > duration - params.transition_min) return;
            const double tr = s.uniform(params.transition_min, params.transition_max);
            Combo next = draw_combo_excluding(s, kNegativeActions, params.variations,
                                              builder.current(c));
            if (!builder.push(c, next, t, tr)) return;
            t = builder.last_start(c) + tr;
        }
    }

    // Revert wave after an episode ending at `episode_end`; front-row center
    // reverts last. `until` is the next lead-in anchor.
    void revert_wave(std::span<const int> ids, double episode_end, double until) {
        for (int c : ids) {
            RngStream& s = streams[static_cast<std::size_t>(c)];
            const double d = chart.normalized_center_distance(c);
            const double start = episode_end + params.dynamic.post_lean_forward +
                                 params.dynamic.revert_wave_duration * (1.0 - d);
            if (start >= until - kTick || start > duration - params.transition_min) continue;
            const double tr = s.uniform(params.transition_min, params.transition_max);
            Combo next =
                draw_combo(s, kNegativeActions, params.variations);
            if (builder.push(c, next, start, tr))
                dwell(c, start, tr, until);
        }
    }
};

} // namespace

Schedule generate_dynamic(const LectureTimeline& timeline, const SeatingChart& chart,
                          const ModeParams& params, std::uint64_t seed) {
    timeline.validate();
    params.validate();
    if (timeline.key_segments.empty())
        throw std::invalid_argument("dynamic mode needs at least one key segment");

    const std::vector<Segment> episodes = merge_key_segments(timeline.key_segments, params);
    if (episodes.front().start < params.dynamic.lead_in)
        throw std::invalid_argument("first key segment starts before the lead-in window");
    for (std::size_t i = 1; i < episodes.size(); ++i)
        if (episodes[i].start - episodes[i - 1].end < params.dynamic.lead_in + params.transition_max)
            throw std::invalid_argument("key-segment episodes overlap after merging");

    Rng rng(seed);
    RngStream master = rng.master();
    std::vector<RngStream> streams;
    streams.reserve(static_cast<std::size_t>(chart.character_count()));
    for (int c = 0; c < chart.character_count(); ++c)
        streams.push_back(rng.character_stream(c));

    ScheduleBuilder builder(chart.character_count(), timeline.duration, params.transition_min);
    apply_opening(builder, chart, rng, params.variations);

    DynamicWalk walk{builder, chart, params, streams, timeline.duration};
    const std::vector<int> everyone = all_characters(chart);

    // Head: the opening already leaves the back rows negative; the front
    // rows drift from their neutral opening pose into the negative
    // baseline along the same wave ordering, anchored at t = 0.
    {
        const double first_lead = episodes.front().start - params.dynamic.lead_in;
        for (int c : everyone) {
            const bool front = chart.seat_of(c).kind == RowKind::Front;
            if (front) {
                RngStream& s = streams[static_cast<std::size_t>(c)];
                const double d = chart.normalized_center_distance(c);
                const double start = params.dynamic.post_lean_forward +
                                     params.dynamic.revert_wave_duration * (1.0 - d);
                if (start >= first_lead - kTick ||
                    start > timeline.duration - params.transition_min)
                    continue;
                const double tr = s.uniform(params.transition_min, params.transition_max);
                Combo next = draw_combo(s, kNegativeActions, params.variations);
                if (builder.push(c, next, start, tr)) walk.dwell(c, start, tr, first_lead);
            } else {
                walk.dwell(c, 0.0, 0.0, first_lead);
            }
        }
    }

    for (std::size_t k = 0; k < episodes.size(); ++k) {
        const Segment& ep = episodes[k];
        const double lead_anchor = ep.start - params.dynamic.lead_in;
        const double next_lead = k + 1 < episodes.size()
                                     ? episodes[k + 1].start - params.dynamic.lead_in
                                     : timeline.duration + 1.0;

        // Lead-in: everyone is fully positive within transition_max of the
        // anchor, i.e. by segment start + (transition_max - lead_in).
        {
            BatchOptions opt;
            opt.completion_window = params.transition_max;
            if (lead_anchor < kTick) opt.offset_shift = kTick;
            BatchDraws draws = draw_batch(everyone, params, master, streams, opt);
            for (std::size_t i = 0; i < everyone.size(); ++i) {
                const int c = everyone[i];
                RngStream& s = streams[static_cast<std::size_t>(c)];
                Combo next = draw_combo(s, kPositiveActions, params.variations);
                builder.push(c, next, lead_anchor + draws.offsets[i], draws.transitions[i]);
            }
        }

        // Reversion: lean forward right after the segment end, hold, then
        // the revert wave. The 1 ms shift keeps every character positive
        // through the closed segment end.
        {
            BatchOptions opt;
            opt.offset_shift = kTick;
            opt.renormalize = true;
            opt.max_offset = std::max(0.0, params.dynamic.post_lean_forward - 0.5);
            BatchDraws draws = draw_batch(everyone, params, master, streams, opt);
            for (std::size_t i = 0; i < everyone.size(); ++i) {
                const int c = everyone[i];
                RngStream& s = streams[static_cast<std::size_t>(c)];
                Combo next = draw_combo(s, kNeutralActions, params.variations);
                next.action = ActionKind::LeaningForward;
                next.variation = 1 + static_cast<int>(s.uniform_index(static_cast<std::uint32_t>(
                                         params.variations.count(ActionKind::LeaningForward))));
                builder.push(c, next, ep.end + draws.offsets[i], draws.transitions[i]);
            }
        }

        walk.revert_wave(everyone, ep.end, next_lead);
    }

    Schedule schedule;
    schedule.mode = ScheduleMode::Dynamic;
    schedule.seed = seed;
    schedule.chart = chart;
    schedule.timeline = timeline;
    schedule.variations = params.variations;
    schedule.events = builder.take();
    return schedule;
}

// ---------------------------------------------------------------------------
// Gaze micro-cycles

GazeCycle generate_gaze_cycle(double total, RngStream& stream) {
    if (!(total > 0.0)) throw std::invalid_argument("gaze cycle length must be positive");
    GazeCycle cycle;
    double t = 0.0;
    GazePhase::Target target = GazePhase::Target::Slides;
    while (t < total - 1e-12) {
        double duration = target == GazePhase::Target::Slides ? stream.uniform(0.5, 1.0)
                                                              : stream.uniform(3.0, 4.0);
        if (t + duration > total) duration = total - t; // truncate the final phase
        cycle.push_back(GazePhase{target, duration});
        t += duration;
        target = target == GazePhase::Target::Slides ? GazePhase::Target::Notebook
                                                     : GazePhase::Target::Slides;
    }
    return cycle;
}

std::vector<std::pair<double, GazeCycle>> notetaking_gaze_cycles(const Schedule& schedule,
                                                                 int character_id) {
    if (character_id < 0 || character_id >= static_cast<int>(schedule.events.size()))
        throw std::out_of_range("unknown character id");
    Rng rng(schedule.seed);
    RngStream stream = rng.gaze_stream(character_id);
    const auto& events = schedule.events[static_cast<std::size_t>(character_id)];

    std::vector<std::pair<double, GazeCycle>> out;
    for (std::size_t i = 0; i < events.size(); ++i) {
        if (events[i].action != ActionKind::Notetaking) continue;
        const double end =
            i + 1 < events.size() ? events[i + 1].start : schedule.timeline.duration;
        const double span = end - events[i].start;
        if (span <= 0.0) continue;
        out.emplace_back(events[i].start, generate_gaze_cycle(span, stream));
    }
    return out;
}

} // namespace vclass
