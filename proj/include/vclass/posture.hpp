#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace vclass {

/// One already-extracted pose frame: neck and mid-hip keypoints in image
/// pixels (y grows downward) with per-point confidences.
struct KeypointFrame {
    double timestamp = 0.0;
    double neck_x = 0.0, neck_y = 0.0;
    double hip_x = 0.0, hip_y = 0.0;
    double neck_conf = 1.0, hip_conf = 1.0;
};

/// Which image edge the subject faces in the recording.
enum class Facing { ImageLeft, ImageRight };

inline constexpr double kDefaultConfidenceThreshold = 0.3;

/// Angle at the hip between the horizontal facing direction and the
/// hip->neck vector, in degrees within [0, 180] after converting to y-up.
/// Upright torso reads 90; leaning back (away from the facing direction)
/// reads above 90. Returns nullopt when either keypoint confidence falls
/// below the threshold; throws std::domain_error on coincident keypoints.
std::optional<double> torso_angle(const KeypointFrame& frame, Facing facing,
                                  double confidence_threshold = kDefaultConfidenceThreshold);

struct PostureSample {
    double timestamp = 0.0;
    double angle = 0.0; // degrees
};

enum class StudyGroup { StableNotes, StableNoNotes, DynamicNotes, DynamicNoNotes };

struct PostureSeries {
    std::string participant;
    StudyGroup group = StudyGroup::StableNotes;
    std::vector<PostureSample> samples;
};

/// Batch kernel over a recording; low-confidence frames are dropped.
/// OpenMP-parallel over frames.
std::vector<PostureSample> torso_angles(std::span<const KeypointFrame> frames, Facing facing,
                                        double confidence_threshold = kDefaultConfidenceThreshold);

/// Mean angle per minute bin [60k, 60(k+1)); empty bins are omitted.
std::vector<std::pair<int, double>> minute_averages(const PostureSeries& series);

std::string_view study_group_name(StudyGroup g);
std::optional<StudyGroup> study_group_from_name(std::string_view name);

namespace serial {
std::vector<PostureSample> torso_angles(std::span<const KeypointFrame> frames, Facing facing,
                                        double confidence_threshold = kDefaultConfidenceThreshold);
} // namespace serial

} // namespace vclass
