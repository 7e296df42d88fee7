#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <vector>

#include "vclass/notes.hpp"
#include "vclass/posture.hpp"
#include "vclass/rng.hpp"

using namespace vclass;

namespace {

KeypointFrame frame(double t, double nx, double ny, double hx, double hy, double conf = 1.0) {
    return KeypointFrame{t, nx, ny, hx, hy, conf, conf};
}

// neck placed by rotating an upright torso about the hip; positive angles
// rotate the neck toward +x in image coordinates (the leaning-back side
// when facing image-left).
KeypointFrame rotated_frame(double degrees, double hip_x = 100.0, double hip_y = 200.0,
                            double length = 100.0) {
    const double rad = degrees * std::numbers::pi / 180.0;
    const double nx = hip_x + length * std::sin(rad);
    const double ny = hip_y - length * std::cos(rad);
    return frame(0.0, nx, ny, hip_x, hip_y);
}

} // namespace

TEST_CASE("torso angle: upright 90, leaning back 120, leaning forward 60") {
    CHECK(*torso_angle(frame(0, 100, 100, 100, 200), Facing::ImageLeft) ==
          doctest::Approx(90.0).epsilon(1e-9));
    CHECK(*torso_angle(rotated_frame(+30.0), Facing::ImageLeft) ==
          doctest::Approx(120.0).epsilon(1e-9));
    CHECK(*torso_angle(rotated_frame(-30.0), Facing::ImageLeft) ==
          doctest::Approx(60.0).epsilon(1e-9));
}

TEST_CASE("torso angle is invariant under translation and positive scaling") {
    RngStream r(31);
    for (int rep = 0; rep < 200; ++rep) {
        const double deg = r.uniform(-80.0, 80.0);
        const KeypointFrame base = rotated_frame(deg);
        const double a0 = *torso_angle(base, Facing::ImageLeft);

        KeypointFrame moved = base;
        const double dx = r.uniform(-500.0, 500.0), dy = r.uniform(-500.0, 500.0);
        const double scale = r.uniform(0.1, 8.0);
        moved.neck_x = (moved.neck_x + dx) * scale;
        moved.neck_y = (moved.neck_y + dy) * scale;
        moved.hip_x = (moved.hip_x + dx) * scale;
        moved.hip_y = (moved.hip_y + dy) * scale;
        CHECK(*torso_angle(moved, Facing::ImageLeft) == doctest::Approx(a0).epsilon(1e-9));

        // mirroring the image while flipping the facing flag preserves it
        KeypointFrame mirrored = base;
        mirrored.neck_x = -mirrored.neck_x;
        mirrored.hip_x = -mirrored.hip_x;
        CHECK(*torso_angle(mirrored, Facing::ImageRight) ==
              doctest::Approx(a0).epsilon(1e-9));
    }
}

TEST_CASE("low-confidence frames are excluded, coincident keypoints throw") {
    KeypointFrame low = frame(0, 100, 100, 100, 200, 0.2);
    CHECK(!torso_angle(low, Facing::ImageLeft));
    low.neck_conf = 0.9;
    low.hip_conf = 0.1;
    CHECK(!torso_angle(low, Facing::ImageLeft));

    const KeypointFrame coincident = frame(0, 100, 200, 100, 200);
    CHECK_THROWS_AS(torso_angle(coincident, Facing::ImageLeft), std::domain_error);
}

TEST_CASE("batch torso angles match the serial reference and skip bad frames") {
    std::vector<KeypointFrame> frames;
    RngStream r(8);
    for (int i = 0; i < 500; ++i) {
        KeypointFrame f = rotated_frame(r.uniform(-60.0, 60.0));
        f.timestamp = i * 0.5;
        if (i % 7 == 0) f.neck_conf = 0.1; // dropped
        frames.push_back(f);
    }
    const auto parallel = torso_angles(frames, Facing::ImageLeft);
    const auto reference = serial::torso_angles(frames, Facing::ImageLeft);
    REQUIRE(parallel.size() == reference.size());
    for (std::size_t i = 0; i < parallel.size(); ++i) {
        CHECK(parallel[i].timestamp == reference[i].timestamp);
        CHECK(parallel[i].angle == reference[i].angle);
    }
    CHECK(parallel.size() == 500 - 72); // ceil(500/7) low-confidence frames dropped

    frames[3].neck_x = frames[3].hip_x;
    frames[3].neck_y = frames[3].hip_y;
    CHECK_THROWS_AS(torso_angles(frames, Facing::ImageLeft), std::domain_error);
}

TEST_CASE("minute averages bin by [60k, 60k+60) and skip empty bins") {
    PostureSeries series;
    series.participant = "p1";

    SUBCASE("constant series over three minutes") {
        for (double t = 0.0; t < 180.0; t += 1.0)
            series.samples.push_back(PostureSample{t, 95.0});
        const auto bins = minute_averages(series);
        REQUIRE(bins.size() == 3);
        for (int k = 0; k < 3; ++k) {
            CHECK(bins[static_cast<std::size_t>(k)].first == k);
            CHECK(bins[static_cast<std::size_t>(k)].second == doctest::Approx(95.0));
        }
    }

    SUBCASE("samples confined to minute zero") {
        series.samples = {{1.0, 90.0}, {30.0, 100.0}};
        const auto bins = minute_averages(series);
        REQUIRE(bins.size() == 1);
        CHECK(bins[0].first == 0);
        CHECK(bins[0].second == doctest::Approx(95.0));
    }

    SUBCASE("ramp from 90 to 120 averages near 105") {
        for (int i = 0; i < 60; ++i)
            series.samples.push_back(
                PostureSample{static_cast<double>(i), 90.0 + 0.5 * static_cast<double>(i)});
        const auto bins = minute_averages(series);
        REQUIRE(bins.size() == 1);
        CHECK(std::fabs(bins[0].second - 105.0) <= 0.5);
    }

    SUBCASE("boundary sample lands in the next bin") {
        series.samples = {{59.999, 90.0}, {60.0, 120.0}};
        const auto bins = minute_averages(series);
        REQUIRE(bins.size() == 2);
        CHECK(bins[0].second == doctest::Approx(90.0));
        CHECK(bins[1].second == doctest::Approx(120.0));
    }
}

TEST_CASE("note counting follows the at-least-one-note-per-slide rule") {
    std::vector<NoteRecord> records{
        {"p1", 3, SegmentClass::Key, 4},    // many notes, one slide: counts once
        {"p1", 5, SegmentClass::Key, 1},    // second key slide
        {"p1", 5, SegmentClass::NonKey, 2}, // same slide contributes to both classes
        {"p1", 7, SegmentClass::NonKey, 0}, // zero notes: no contribution
        {"p2", 3, SegmentClass::Key, 1},
    };
    CHECK(count_notes(records, "p1") == NoteCounts{2, 1});
    CHECK(count_notes(records, "p2") == NoteCounts{1, 0});
    CHECK(count_notes(records, "p3") == NoteCounts{0, 0});
    CHECK(count_notes({}, "p1") == NoteCounts{0, 0});
}

TEST_CASE("mini-test scoring counts matches and rejects length mismatch") {
    std::vector<int> key(19, 2);
    TestResponse all_right{"p1", std::vector<int>(19, 2)};
    TestResponse all_wrong{"p2", std::vector<int>(19, 3)};
    CHECK(score_test(all_right, key) == 19);
    CHECK(score_test(all_wrong, key) == 0);

    TestResponse bad{"p3", std::vector<int>(10, 2)};
    CHECK_THROWS_AS(score_test(bad, key), std::invalid_argument);
}

TEST_CASE("scoring is equivariant under question permutations") {
    std::vector<int> key{1, 2, 3, 4, 1, 2, 3};
    TestResponse resp{"p", {1, 3, 3, 2, 1, 4, 3}};
    const int base = score_test(resp, key);
    // rotate both by the same shift
    for (std::size_t shift = 1; shift < key.size(); ++shift) {
        std::vector<int> k2(key.size()), a2(key.size());
        for (std::size_t i = 0; i < key.size(); ++i) {
            k2[(i + shift) % key.size()] = key[i];
            a2[(i + shift) % key.size()] = resp.answers[i];
        }
        CHECK(score_test(TestResponse{"p", a2}, k2) == base);
    }
}

TEST_CASE("per-question crosstab computes accuracy and notetaker fractions") {
    const std::vector<int> key{1, 2};
    std::vector<TestResponse> responses{
        {"p1", {1, 2}}, {"p2", {1, 3}}, {"p3", {1, 2}}, {"p4", {1, 3}}};

    SUBCASE("everyone correct, nobody noted") {
        const std::vector<std::vector<bool>> flags(4, std::vector<bool>(2, false));
        const auto stats = per_question_crosstab(responses, key, flags);
        REQUIRE(stats.size() == 2);
        CHECK(stats[0].accuracy == doctest::Approx(1.0));
        CHECK(stats[0].notetaker_fraction == doctest::Approx(0.0));
        CHECK(stats[1].accuracy == doctest::Approx(0.5)); // half got question 2
    }

    SUBCASE("hand-computed fixture") {
        std::vector<std::vector<bool>> flags{
            {true, false}, {true, true}, {false, false}, {false, true}};
        const auto stats = per_question_crosstab(responses, key, flags);
        CHECK(stats[0].notetaker_fraction == doctest::Approx(0.5));
        CHECK(stats[1].notetaker_fraction == doctest::Approx(0.5));
        CHECK(stats[0].question == 1);
        CHECK(stats[1].question == 2);
    }

    SUBCASE("misaligned flags are rejected") {
        const std::vector<std::vector<bool>> flags(3, std::vector<bool>(2, false));
        CHECK_THROWS_AS(per_question_crosstab(responses, key, flags), std::invalid_argument);
    }
}
