#include <doctest.h>

#include <stdexcept>

#include <algorithm>
#include <cmath>
#include <set>

#include "vclass/metrics.hpp"
#include "vclass/scheduler.hpp"
#include "vclass/validate.hpp"

using namespace vclass;

namespace {

const double kSettleEnd = 10.0; // settle anchor + spread + blend with defaults

// Anchors of positive->positive toggle batches, clustered the same way the
// validator does.
std::vector<double> toggle_anchors(const Schedule& s) {
    std::vector<double> times;
    for (const auto& ev : s.events)
        for (std::size_t i = 1; i < ev.size(); ++i)
            if (is_positive(ev[i - 1].action) && is_positive(ev[i].action))
                times.push_back(ev[i].start);
    std::sort(times.begin(), times.end());
    std::vector<double> anchors;
    double last = -1e9;
    for (double t : times) {
        if (t - last > 8.0) anchors.push_back(t);
        last = t;
    }
    return anchors;
}

LectureTimeline plain_timeline(double duration) { return LectureTimeline{duration, {}, {}}; }

} // namespace

TEST_CASE("opening splits neutral front rows from negative back rows") {
    const SeatingChart chart = SeatingChart::default_chart();
    Rng rng(42);
    const std::vector<ActionEvent> events = generate_opening(chart, rng);
    REQUIRE(events.size() == 22);
    int neutral = 0, negative = 0;
    for (const ActionEvent& e : events) {
        CHECK(e.start == 0.0);
        CHECK(e.transition == 0.0);
        const bool front = chart.seat_of(e.character_id).kind == RowKind::Front;
        if (front) {
            CHECK(is_neutral(e.action));
            ++neutral;
        } else {
            CHECK(is_negative(e.action));
            ++negative;
        }
        const VariationTable vt;
        CHECK(e.variation >= 1);
        CHECK(e.variation <= vt.count(e.action));
    }
    CHECK(neutral == 11);
    CHECK(negative == 11);
}

TEST_CASE("opening of a minimal 1+1 chart") {
    const SeatingChart chart =
        SeatingChart::from_row_sizes({{RowKind::Front, 1}, {RowKind::Back, 1}});
    Rng rng(1);
    const auto events = generate_opening(chart, rng);
    REQUIRE(events.size() == 2);
    CHECK(is_neutral(events[0].action));
    CHECK(is_negative(events[1].action));
}

TEST_CASE("opening is deterministic for a fixed seed") {
    const SeatingChart chart = SeatingChart::default_chart();
    Rng a(42), b(42);
    CHECK(generate_opening(chart, a) == generate_opening(chart, b));
}

TEST_CASE("jitter: single character batch sits exactly on the anchor") {
    const std::vector<int> batch{0};
    Rng rng(9);
    const JitterAssignment j = apply_jitter(batch, ModeParams{}, rng);
    REQUIRE(j.offsets.size() == 1);
    CHECK(j.offsets[0] == 0.0);
    CHECK(j.transitions[0] >= 2.0);
    CHECK(j.transitions[0] <= 4.0);
}

TEST_CASE("jitter: batch of 22 spreads at most the window width") {
    std::vector<int> batch(22);
    for (int i = 0; i < 22; ++i) batch[static_cast<std::size_t>(i)] = i;
    Rng rng(123);
    const JitterAssignment j = apply_jitter(batch, ModeParams{}, rng);
    const auto [lo, hi] = std::minmax_element(j.offsets.begin(), j.offsets.end());
    CHECK(*lo == 0.0); // re-normalized anchor
    CHECK(*hi - *lo <= 4.0);
    for (std::size_t i = 0; i < 22; ++i) {
        CHECK(j.transitions[i] >= 2.0);
        CHECK(j.transitions[i] <= 4.0);
        CHECK(j.offsets[i] + j.transitions[i] <= j.spread + 4.0 + 1e-9);
    }

    Rng rng2(123);
    const JitterAssignment k = apply_jitter(batch, ModeParams{}, rng2);
    CHECK(j.offsets == k.offsets);
    CHECK(j.transitions == k.transitions);
}

TEST_CASE("gaze cycle alternates and truncates to the requested total") {
    Rng rng(5);
    RngStream stream = rng.gaze_stream(0);

    SUBCASE("total = 4.0") {
        const GazeCycle cycle = generate_gaze_cycle(4.0, stream);
        REQUIRE(!cycle.empty());
        CHECK(cycle[0].target == GazePhase::Target::Slides);
        CHECK(cycle[0].duration >= 0.5);
        CHECK(cycle[0].duration <= 1.0);
        double sum = 0.0;
        for (const GazePhase& p : cycle) sum += p.duration;
        CHECK(sum == doctest::Approx(4.0).epsilon(1e-12));
        if (cycle.size() == 2)
            CHECK(cycle[1].duration == doctest::Approx(4.0 - cycle[0].duration));
    }

    SUBCASE("total = 0.3 truncates the first phase") {
        const GazeCycle cycle = generate_gaze_cycle(0.3, stream);
        REQUIRE(cycle.size() == 1);
        CHECK(cycle[0].target == GazePhase::Target::Slides);
        CHECK(cycle[0].duration == doctest::Approx(0.3));
    }

    SUBCASE("total = 100 gives 20..29 slide glances for any seed") {
        for (int seed = 0; seed < 20; ++seed) {
            RngStream s(static_cast<std::uint64_t>(seed));
            const GazeCycle cycle = generate_gaze_cycle(100.0, s);
            int slides = 0;
            double sum = 0.0;
            GazePhase::Target expect = GazePhase::Target::Slides;
            for (const GazePhase& p : cycle) {
                CHECK(p.target == expect);
                expect = expect == GazePhase::Target::Slides ? GazePhase::Target::Notebook
                                                             : GazePhase::Target::Slides;
                slides += p.target == GazePhase::Target::Slides;
                sum += p.duration;
            }
            CHECK(sum == doctest::Approx(100.0).epsilon(1e-9));
            CHECK(slides >= 20);
            CHECK(slides <= 29);
        }
    }
}

TEST_CASE("stable mode toggle count is bounded by the interval window") {
    const SeatingChart chart = SeatingChart::default_chart();
    for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
        const Schedule s = generate_stable(plain_timeline(1980.0), chart, ModeParams{}, seed);
        const std::vector<double> anchors = toggle_anchors(s);
        const auto batches = static_cast<double>(anchors.size());
        CHECK(batches >= std::floor(1980.0 / 30.0));
        CHECK(batches <= std::floor(1980.0 / 18.0));
        for (std::size_t i = 1; i < anchors.size(); ++i) {
            CHECK(anchors[i] - anchors[i - 1] >= 18.0 - 0.002);
            CHECK(anchors[i] - anchors[i - 1] <= 30.0 + 0.002);
        }
    }
}

TEST_CASE("stable mode video segment: neutral entry plus five re-draws") {
    const SeatingChart chart = SeatingChart::default_chart();
    LectureTimeline tl{120.0, {}, {{30.0, 90.0}}};
    const Schedule s = generate_stable(tl, chart, ModeParams{}, 77);

    for (int c = 0; c < chart.character_count(); ++c) {
        const auto& ev = s.events[static_cast<std::size_t>(c)];
        std::vector<double> neutral_starts;
        for (const ActionEvent& e : ev)
            if (e.start > 0.0 && is_neutral(e.action)) neutral_starts.push_back(e.start);
        REQUIRE(neutral_starts.size() == 6); // entry + 5 re-draws
        CHECK(neutral_starts[0] >= 30.0);
        CHECK(neutral_starts[0] <= 30.0 + 4.5);
        for (int k = 1; k <= 5; ++k) {
            CHECK(neutral_starts[static_cast<std::size_t>(k)] >= 30.0 + 10.0 * k);
            CHECK(neutral_starts[static_cast<std::size_t>(k)] <= 30.0 + 10.0 * k + 4.5);
        }
        // back to positive after the segment
        bool positive_return = false;
        for (const ActionEvent& e : ev)
            if (e.start >= 90.0 && is_positive(e.action)) positive_return = true;
        CHECK(positive_return);
    }
}

TEST_CASE("stable mode without video segments never goes neutral after settling") {
    const Schedule s = generate_stable(plain_timeline(600.0), SeatingChart::default_chart(),
                                       ModeParams{}, 5);
    for (const auto& ev : s.events)
        for (const ActionEvent& e : ev)
            if (e.start > 0.0) CHECK(is_positive(e.action));
}

TEST_CASE("stable mode is deterministic and self-consistent") {
    const SeatingChart chart = SeatingChart::default_chart();
    LectureTimeline tl{900.0, {}, {{300.0, 360.0}}};
    const Schedule a = generate_stable(tl, chart, ModeParams{}, 42);
    const Schedule b = generate_stable(tl, chart, ModeParams{}, 42);
    CHECK(a == b);
    const Schedule c = generate_stable(tl, chart, ModeParams{}, 43);
    CHECK(!(a == c));

    const ValidationReport report = validate(a, ModeParams{});
    CHECK(report.findings.empty());
}

TEST_CASE("stable mode structural invariants hold across seeds") {
    const SeatingChart chart = SeatingChart::default_chart();
    LectureTimeline tl{700.0, {}, {{200.0, 260.0}}};
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const Schedule s = generate_stable(tl, chart, ModeParams{}, seed);
        for (const auto& ev : s.events) {
            REQUIRE(!ev.empty());
            CHECK(ev.front().start == 0.0);
            CHECK(ev.front().transition == 0.0);
            for (std::size_t i = 0; i < ev.size(); ++i) {
                if (i > 0) {
                    CHECK(ev[i].start > ev[i - 1].start);
                    CHECK(ev[i].transition >= 2.0);
                    CHECK(ev[i].transition <= 4.0);
                    // every event changes the visible (action, variation)
                    const bool changed = ev[i].action != ev[i - 1].action ||
                                         ev[i].variation != ev[i - 1].variation;
                    CHECK(changed);
                }
                CHECK(ev[i].start + ev[i].transition <= tl.duration + 1e-9);
            }
        }
        // positive everywhere outside the settle and the video envelope
        for (double t = 0.0; t <= tl.duration; t += 3.7) {
            if (t <= kSettleEnd) continue;
            if (t > 200.0 - 0.001 && t < 260.0 + 8.0) continue;
            for (int c = 0; c < chart.character_count(); ++c)
                CHECK(is_positive(action_at(s, c, t).action));
        }
    }
}

TEST_CASE("stable mode rejects a timeline shorter than one batch") {
    CHECK_THROWS_AS(generate_stable(plain_timeline(8.0), SeatingChart::default_chart(),
                                    ModeParams{}, 1),
                    std::invalid_argument);
}

TEST_CASE("merge_key_segments folds close episodes") {
    const ModeParams p;
    const std::vector<Segment> merged =
        merge_key_segments({{10, 20}, {24, 30}, {50, 60}}, p);
    REQUIRE(merged.size() == 2);
    CHECK(merged[0].start == 10.0);
    CHECK(merged[0].end == 30.0);
    CHECK(merged[1].start == 50.0);

    const std::vector<Segment> apart = merge_key_segments({{10, 20}, {27, 30}}, p);
    CHECK(apart.size() == 2);
}

TEST_CASE("dynamic mode covers a key segment and reverts in a wave") {
    const SeatingChart chart = SeatingChart::default_chart();
    LectureTimeline tl{300.0, {{100.0, 130.0}}, {}};
    const Schedule s = generate_dynamic(tl, chart, ModeParams{}, 11);

    // everyone positive on [s+2, e]
    for (double t : {102.0, 110.0, 125.0, 130.0})
        for (int c = 0; c < 22; ++c) CHECK(is_positive(action_at(s, c, t).action));

    // lean forward right after the segment, revert spanning [134, 194]
    for (int c = 0; c < 22; ++c) {
        const auto& ev = s.events[static_cast<std::size_t>(c)];
        auto lean = std::find_if(ev.begin(), ev.end(), [](const ActionEvent& e) {
            return e.start > 130.0 && e.action == ActionKind::LeaningForward;
        });
        REQUIRE(lean != ev.end());
        CHECK(lean->start > 130.0);
        CHECK(lean->start <= 134.0);

        auto revert = std::find_if(lean, ev.end(), [](const ActionEvent& e) {
            return is_negative(e.action);
        });
        REQUIRE(revert != ev.end());
        const double d = chart.normalized_center_distance(c);
        // exact wave formula up to ms rounding
        CHECK(std::fabs(revert->start - (130.0 + 4.0 + 60.0 * (1.0 - d))) <= 0.0006);
        CHECK(revert->start >= 134.0);
        CHECK(revert->start <= 194.0);
    }

    // wave ordering: revert start monotone non-increasing in distance
    std::vector<std::pair<double, double>> dist_and_start;
    for (int c = 0; c < 22; ++c) {
        const auto& ev = s.events[static_cast<std::size_t>(c)];
        auto revert = std::find_if(ev.begin(), ev.end(), [](const ActionEvent& e) {
            return e.start > 130.0 && is_negative(e.action);
        });
        REQUIRE(revert != ev.end());
        dist_and_start.emplace_back(chart.normalized_center_distance(c), revert->start);
    }
    std::sort(dist_and_start.begin(), dist_and_start.end());
    for (std::size_t i = 1; i < dist_and_start.size(); ++i)
        CHECK(dist_and_start[i].second <= dist_and_start[i - 1].second + 1e-9);
}

TEST_CASE("dynamic mode merges episodes closer than the lead-in window") {
    const SeatingChart chart = SeatingChart::default_chart();
    LectureTimeline tl{400.0, {{50.0, 60.0}, {62.0, 70.0}}, {}};
    const Schedule s = generate_dynamic(tl, chart, ModeParams{}, 3);
    // single episode: still positive in the gap between the two segments
    for (int c = 0; c < 22; ++c) CHECK(is_positive(action_at(s, c, 61.0).action));
    // no lean-forward events inside the merged episode
    for (const auto& ev : s.events)
        for (const ActionEvent& e : ev)
            if (e.action == ActionKind::LeaningForward && e.start > 0.0)
                CHECK(e.start > 70.0);
}

TEST_CASE("dynamic mode rejects an episode starting inside the lead-in") {
    LectureTimeline tl{100.0, {{1.0, 10.0}}, {}};
    CHECK_THROWS_AS(generate_dynamic(tl, SeatingChart::default_chart(), ModeParams{}, 1),
                    std::invalid_argument);
    LectureTimeline empty{100.0, {}, {}};
    CHECK_THROWS_AS(generate_dynamic(empty, SeatingChart::default_chart(), ModeParams{}, 1),
                    std::invalid_argument);
}

TEST_CASE("dynamic mode is deterministic and keeps event invariants") {
    const SeatingChart chart = SeatingChart::default_chart();
    LectureTimeline tl{500.0, {{60.0, 85.0}, {200.0, 225.0}, {380.0, 405.0}}, {}};
    const Schedule a = generate_dynamic(tl, chart, ModeParams{}, 42);
    const Schedule b = generate_dynamic(tl, chart, ModeParams{}, 42);
    CHECK(a == b);

    for (const auto& ev : a.events) {
        REQUIRE(!ev.empty());
        CHECK(ev.front().start == 0.0);
        for (std::size_t i = 1; i < ev.size(); ++i) {
            CHECK(ev[i].start > ev[i - 1].start);
            CHECK(ev[i].transition >= 2.0);
            CHECK(ev[i].transition <= 4.0);
            CHECK(ev[i].start + ev[i].transition <= tl.duration + 1e-9);
            const bool changed = ev[i].action != ev[i - 1].action ||
                                 ev[i].variation != ev[i - 1].variation;
            CHECK(changed);
        }
    }

    const ValidationReport report = validate(a, ModeParams{});
    CHECK(report.error_count() == 0);
}

TEST_CASE("dynamic dwell policy re-draws negative actions between episodes") {
    const SeatingChart chart = SeatingChart::default_chart();
    LectureTimeline tl{400.0, {{60.0, 85.0}, {300.0, 325.0}}, {}};
    const Schedule s = generate_dynamic(tl, chart, ModeParams{}, 8);
    int redraws = 0;
    for (const auto& ev : s.events)
        for (std::size_t i = 1; i < ev.size(); ++i)
            if (is_negative(ev[i].action) && is_negative(ev[i - 1].action)) ++redraws;
    CHECK(redraws > 22); // long gap: everyone re-draws at least once on average
}

TEST_CASE("notetaking gaze cycles cover each notetaking span") {
    const Schedule s = generate_stable(plain_timeline(300.0), SeatingChart::default_chart(),
                                       ModeParams{}, 21);
    bool found_any = false;
    for (int c = 0; c < 22; ++c) {
        const auto cycles = notetaking_gaze_cycles(s, c);
        const auto& ev = s.events[static_cast<std::size_t>(c)];
        std::size_t expected = 0;
        for (std::size_t i = 0; i < ev.size(); ++i)
            if (ev[i].action == ActionKind::Notetaking) ++expected;
        CHECK(cycles.size() == expected);
        for (const auto& [start, cycle] : cycles) {
            found_any = true;
            REQUIRE(!cycle.empty());
            CHECK(cycle.front().target == GazePhase::Target::Slides);
            double sum = 0.0;
            for (const GazePhase& p : cycle) sum += p.duration;
            // the span runs to the next event (or the lecture end)
            const auto it = std::find_if(ev.begin(), ev.end(), [&](const ActionEvent& e) {
                return e.start == start;
            });
            REQUIRE(it != ev.end());
            const double end = it + 1 != ev.end() ? (it + 1)->start : s.timeline.duration;
            CHECK(sum == doctest::Approx(end - start).epsilon(1e-9));
        }
    }
    CHECK(found_any);

    // deterministic
    const auto c0a = notetaking_gaze_cycles(s, 0);
    const auto c0b = notetaking_gaze_cycles(s, 0);
    CHECK(c0a == c0b);
}
