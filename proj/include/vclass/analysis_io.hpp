#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "vclass/notes.hpp"
#include "vclass/posture.hpp"

namespace vclass {

/// Filesystem-level failure (missing file, unwritable path), as opposed
/// to malformed content.
class IoError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Keypoint CSV: timestamp_s,neck_x,neck_y,hip_x,hip_y,neck_conf,hip_conf
/// NaN fields and negative timestamps are rejected.
std::vector<KeypointFrame> parse_keypoints(std::string_view text);

/// Notes CSV: participant_id,slide,segment_class,count
/// segment_class is `key` or `non_key`.
std::vector<NoteRecord> parse_notes(std::string_view text);

/// Responses CSV (long form): participant_id,question,choice
/// Questions are 1-based and must cover 1..Q for each participant.
std::vector<TestResponse> parse_responses(std::string_view text);

/// Answer key CSV: question,correct_choice
std::vector<int> parse_answer_key(std::string_view text);

/// Group mapping CSV: participant_id,group
/// group is one of stable_notes, stable_no_notes, dynamic_notes,
/// dynamic_no_notes.
std::map<std::string, StudyGroup> parse_groups(std::string_view text);

/// Question->slide mapping CSV: question,slide (a question may map to
/// several slides).
std::map<int, std::vector<int>> parse_question_slides(std::string_view text);

std::string read_file(const std::string& path);

/// write-temp-then-rename so partially written outputs never appear.
void write_file_atomic(const std::string& path, std::string_view content);

} // namespace vclass
