#include "vclass/notes.hpp"

#include <set>
#include <stdexcept>

namespace vclass {

NoteCounts count_notes(std::span<const NoteRecord> records, std::string_view participant) {
    std::set<int> key_slides, nonkey_slides;
    for (const NoteRecord& r : records) {
        if (r.participant != participant || r.count < 1) continue;
        (r.seg_class == SegmentClass::Key ? key_slides : nonkey_slides).insert(r.slide);
    }
    return NoteCounts{static_cast<int>(key_slides.size()),
                      static_cast<int>(nonkey_slides.size())};
}

int score_test(const TestResponse& response, std::span<const int> answer_key) {
    if (response.answers.size() != answer_key.size())
        throw std::invalid_argument("answer count does not match the key length");
    int score = 0;
    for (std::size_t i = 0; i < answer_key.size(); ++i)
        score += response.answers[i] == answer_key[i] ? 1 : 0;
    return score;
}

std::vector<QuestionStat> per_question_crosstab(std::span<const TestResponse> responses,
                                                std::span<const int> answer_key,
                                                const std::vector<std::vector<bool>>& note_flags) {
    if (note_flags.size() != responses.size())
        throw std::invalid_argument("note flags must align with the responses");
    const std::size_t q_count = answer_key.size();
    for (std::size_t i = 0; i < responses.size(); ++i) {
        if (responses[i].answers.size() != q_count)
            throw std::invalid_argument("answer count does not match the key length");
        if (note_flags[i].size() != q_count)
            throw std::invalid_argument("note flag count does not match the key length");
    }

    std::vector<QuestionStat> out;
    out.reserve(q_count);
    const double n = static_cast<double>(responses.size());
    for (std::size_t q = 0; q < q_count; ++q) {
        int correct = 0, noted = 0;
        for (std::size_t i = 0; i < responses.size(); ++i) {
            correct += responses[i].answers[q] == answer_key[q] ? 1 : 0;
            noted += note_flags[i][q] ? 1 : 0;
        }
        out.push_back(QuestionStat{static_cast<int>(q) + 1,
                                   n > 0 ? static_cast<double>(correct) / n : 0.0,
                                   n > 0 ? static_cast<double>(noted) / n : 0.0});
    }
    return out;
}

std::string_view segment_class_name(SegmentClass c) {
    return c == SegmentClass::Key ? "key" : "non_key";
}

} // namespace vclass
