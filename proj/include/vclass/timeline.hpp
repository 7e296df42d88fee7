#pragma once

#include <vector>

namespace vclass {

/// Half-open is not used here: segments are closed [start, end] intervals
/// in lecture seconds.
struct Segment {
    double start = 0.0;
    double end = 0.0;

    double length() const { return end - start; }
    bool contains(double t) const { return t >= start && t <= end; }
    bool operator==(const Segment&) const = default;
};

/// Lecture duration plus the key segments (drive Dynamic Mode) and the
/// embedded-video segments (drive Stable Mode's neutral phase).
struct LectureTimeline {
    double duration = 0.0;
    std::vector<Segment> key_segments;
    std::vector<Segment> video_segments;

    /// Throws std::invalid_argument when any invariant is broken:
    /// 0 <= start < end <= duration, each list sorted and pairwise
    /// disjoint, and key/video segments not overlapping each other.
    void validate() const;

    bool operator==(const LectureTimeline&) const = default;
};

} // namespace vclass
