#include "vclass/posture.hpp"

#include <atomic>
#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>

namespace vclass {

namespace {

double angle_degrees(const KeypointFrame& f, Facing facing) {
    // Convert to y-up, then measure the angle between the horizontal
    // facing direction and the hip->neck vector.
    const double vx = f.neck_x - f.hip_x;
    const double vy = -(f.neck_y - f.hip_y);
    const double norm = std::hypot(vx, vy);
    if (norm == 0.0) throw std::domain_error("coincident neck and hip keypoints");
    const double fx = facing == Facing::ImageLeft ? -1.0 : 1.0;
    const double c = std::clamp(fx * vx / norm, -1.0, 1.0);
    return std::acos(c) * 180.0 / std::numbers::pi;
}

bool confident(const KeypointFrame& f, double threshold) {
    return f.neck_conf >= threshold && f.hip_conf >= threshold;
}

} // namespace

std::optional<double> torso_angle(const KeypointFrame& frame, Facing facing,
                                  double confidence_threshold) {
    if (!confident(frame, confidence_threshold)) return std::nullopt;
    return angle_degrees(frame, facing);
}

std::vector<PostureSample> torso_angles(std::span<const KeypointFrame> frames, Facing facing,
                                        double confidence_threshold) {
    const long long n = static_cast<long long>(frames.size());
    std::vector<double> angles(frames.size(), 0.0);
    std::vector<char> keep(frames.size(), 0);
    std::atomic<bool> degenerate{false};

#pragma omp parallel for schedule(static)
    for (long long i = 0; i < n; ++i) {
        const KeypointFrame& f = frames[static_cast<std::size_t>(i)];
        if (!confident(f, confidence_threshold)) continue;
        if (f.neck_x == f.hip_x && f.neck_y == f.hip_y) {
            degenerate.store(true, std::memory_order_relaxed);
            continue;
        }
        angles[static_cast<std::size_t>(i)] = angle_degrees(f, facing);
        keep[static_cast<std::size_t>(i)] = 1;
    }
    if (degenerate.load()) throw std::domain_error("coincident neck and hip keypoints");

    std::vector<PostureSample> out;
    out.reserve(frames.size());
    for (std::size_t i = 0; i < frames.size(); ++i)
        if (keep[i]) out.push_back(PostureSample{frames[i].timestamp, angles[i]});
    return out;
}

namespace serial {

std::vector<PostureSample> torso_angles(std::span<const KeypointFrame> frames, Facing facing,
                                        double confidence_threshold) {
    std::vector<PostureSample> out;
    out.reserve(frames.size());
    for (const KeypointFrame& f : frames)
        if (auto angle = torso_angle(f, facing, confidence_threshold))
            out.push_back(PostureSample{f.timestamp, *angle});
    return out;
}

} // namespace serial

std::vector<std::pair<int, double>> minute_averages(const PostureSeries& series) {
    if (series.samples.empty())
        throw std::invalid_argument("minute_averages needs a non-empty series");
    std::map<int, std::pair<double, int>> bins; // minute -> (sum, count)
    for (const PostureSample& s : series.samples) {
        const int minute = static_cast<int>(std::floor(s.timestamp / 60.0));
        auto& [sum, count] = bins[minute];
        sum += s.angle;
        ++count;
    }
    std::vector<std::pair<int, double>> out;
    out.reserve(bins.size());
    for (const auto& [minute, acc] : bins)
        out.emplace_back(minute, acc.first / static_cast<double>(acc.second));
    return out;
}

std::string_view study_group_name(StudyGroup g) {
    switch (g) {
    case StudyGroup::StableNotes: return "stable_notes";
    case StudyGroup::StableNoNotes: return "stable_no_notes";
    case StudyGroup::DynamicNotes: return "dynamic_notes";
    case StudyGroup::DynamicNoNotes: return "dynamic_no_notes";
    }
    return "unknown";
}

std::optional<StudyGroup> study_group_from_name(std::string_view name) {
    for (StudyGroup g : {StudyGroup::StableNotes, StudyGroup::StableNoNotes,
                         StudyGroup::DynamicNotes, StudyGroup::DynamicNoNotes})
        if (study_group_name(g) == name) return g;
    return std::nullopt;
}

} // namespace vclass
