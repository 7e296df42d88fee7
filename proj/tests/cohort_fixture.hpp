#pragma once

// Synthetic 50-participant cohort shared by the CLI tests and the
// acceptance suite: 19 four-choice questions, scores arranged to average
// exactly 15.7, four mode-by-notes groups, and matching notes files.

#include <cstdio>
#include <string>

namespace vclass::testutil {

inline std::string participant_name(int i) { // 1-based
    char buf[8];
    std::snprintf(buf, sizeof buf, "p%02d", i);
    return buf;
}

inline int correct_choice(int question) { return (question - 1) % 4 + 1; }

inline int target_score(int participant) {
    // 35 participants at 16 plus 15 at 15: mean 785/50 = 15.7 of 19
    return participant <= 35 ? 16 : 15;
}

inline bool in_stable_mode(int participant) { return participant <= 25; }

inline bool takes_notes(int participant) {
    // 13 notetakers in stable, 12 in dynamic
    return participant <= 13 || (participant >= 26 && participant <= 37);
}

inline std::string cohort_answer_key() {
    std::string out = "question,correct_choice\n";
    for (int q = 1; q <= 19; ++q)
        out += std::to_string(q) + "," + std::to_string(correct_choice(q)) + "\n";
    return out;
}

inline std::string cohort_responses() {
    std::string out = "participant_id,question,choice\n";
    for (int i = 1; i <= 50; ++i) {
        const int score = target_score(i);
        for (int q = 1; q <= 19; ++q) {
            const int correct = correct_choice(q);
            const int wrong = correct % 4 + 1;
            out += participant_name(i) + "," + std::to_string(q) + "," +
                   std::to_string(q <= score ? correct : wrong) + "\n";
        }
    }
    return out;
}

inline std::string cohort_groups() {
    std::string out = "participant_id,group\n";
    for (int i = 1; i <= 50; ++i) {
        const char* group = in_stable_mode(i)
                                ? (takes_notes(i) ? "stable_notes" : "stable_no_notes")
                                : (takes_notes(i) ? "dynamic_notes" : "dynamic_no_notes");
        out += participant_name(i) + "," + group + "\n";
    }
    return out;
}

inline std::string cohort_notes() {
    // Notetakers mark a participant-dependent set of slides; stable-mode
    // notetakers cover more key slides. Everyone else contributes nothing.
    std::string out = "participant_id,slide,segment_class,count\n";
    for (int i = 1; i <= 50; ++i) {
        if (!takes_notes(i)) continue;
        const int key_slides = in_stable_mode(i) ? 6 + i % 3 : 3 + i % 3;
        for (int s = 0; s < key_slides; ++s)
            out += participant_name(i) + "," + std::to_string(1 + (s * 2 + i) % 19) +
                   ",key," + std::to_string(1 + (i + s) % 3) + "\n";
        const int nonkey_slides = 2 + i % 2;
        for (int s = 0; s < nonkey_slides; ++s)
            out += participant_name(i) + "," + std::to_string(20 + (s + i) % 9) +
                   ",non_key,1\n";
    }
    return out;
}

inline std::string cohort_question_slides() {
    std::string out = "question,slide\n";
    for (int q = 1; q <= 19; ++q) out += std::to_string(q) + "," + std::to_string(q) + "\n";
    return out;
}

} // namespace vclass::testutil
