#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace vclass {

enum class SegmentClass { Key, NonKey };

/// Notes of one class written on one slide by one participant.
struct NoteRecord {
    std::string participant;
    int slide = 1; // 1-based slide index
    SegmentClass seg_class = SegmentClass::Key;
    int count = 0;
};

struct NoteCounts {
    int key_slides = 0;
    int nonkey_slides = 0;

    bool operator==(const NoteCounts&) const = default;
};

/// Number of distinct slides where the participant wrote at least one
/// note of each class; a slide with both classes counts once per class.
NoteCounts count_notes(std::span<const NoteRecord> records, std::string_view participant);

/// Mini-test answers of one participant; choice indices are 1-based.
struct TestResponse {
    std::string participant;
    std::vector<int> answers;
};

/// Number of answers matching the key. Throws std::invalid_argument on a
/// length mismatch.
int score_test(const TestResponse& response, std::span<const int> answer_key);

struct QuestionStat {
    int question = 1; // 1-based
    double accuracy = 0.0;
    double notetaker_fraction = 0.0;
};

/// Per-question fraction of correct answers and fraction of participants
/// who took a key-segment note on a slide feeding that question.
/// note_flags is aligned with responses: note_flags[i][q] says whether
/// responses[i]'s participant noted question q's slides.
std::vector<QuestionStat> per_question_crosstab(std::span<const TestResponse> responses,
                                                std::span<const int> answer_key,
                                                const std::vector<std::vector<bool>>& note_flags);

std::string_view segment_class_name(SegmentClass c);

} // namespace vclass
