#include "vclass/analysis_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "vclass/csv_error.hpp"

namespace vclass {

namespace {

std::vector<std::string_view> split(std::string_view text, char sep) {
    std::vector<std::string_view> out;
    std::size_t pos = 0;
    while (true) {
        const std::size_t next = text.find(sep, pos);
        if (next == std::string_view::npos) {
            out.push_back(text.substr(pos));
            return out;
        }
        out.push_back(text.substr(pos, next - pos));
        pos = next + 1;
    }
}

double parse_double(std::string_view field, int line, const char* what) {
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc{} || ptr != field.data() + field.size())
        throw CsvParseError(line, std::string("malformed ") + what + " '" +
                                      std::string(field) + "'");
    return value;
}

long long parse_int(std::string_view field, int line, const char* what) {
    long long value = 0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc{} || ptr != field.data() + field.size())
        throw CsvParseError(line, std::string("malformed ") + what + " '" +
                                      std::string(field) + "'");
    return value;
}

// Visits non-empty data lines after checking the exact header.
template <typename Fn>
void for_each_row(std::string_view text, std::string_view header, int fields, Fn&& fn) {
    int line_no = 0;
    bool header_seen = false;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t eol = text.find('\n', pos);
        std::string_view line = text.substr(
            pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (line.empty() || line.front() == '#') continue;
        if (!header_seen) {
            if (line != header)
                throw CsvParseError(line_no,
                                    "bad header, expected '" + std::string(header) + "'");
            header_seen = true;
            continue;
        }
        const auto cols = split(line, ',');
        if (static_cast<int>(cols.size()) != fields)
            throw CsvParseError(line_no, "expected " + std::to_string(fields) +
                                             " fields, got " + std::to_string(cols.size()));
        fn(line_no, cols);
    }
    if (!header_seen) throw CsvParseError(0, "missing header line");
}

} // namespace

std::vector<KeypointFrame> parse_keypoints(std::string_view text) {
    std::vector<KeypointFrame> out;
    for_each_row(
        text, "timestamp_s,neck_x,neck_y,hip_x,hip_y,neck_conf,hip_conf", 7,
        [&](int line, const std::vector<std::string_view>& cols) {
            KeypointFrame f;
            f.timestamp = parse_double(cols[0], line, "timestamp");
            f.neck_x = parse_double(cols[1], line, "neck_x");
            f.neck_y = parse_double(cols[2], line, "neck_y");
            f.hip_x = parse_double(cols[3], line, "hip_x");
            f.hip_y = parse_double(cols[4], line, "hip_y");
            f.neck_conf = parse_double(cols[5], line, "neck_conf");
            f.hip_conf = parse_double(cols[6], line, "hip_conf");
            if (std::isnan(f.timestamp) || std::isnan(f.neck_x) || std::isnan(f.neck_y) ||
                std::isnan(f.hip_x) || std::isnan(f.hip_y) || std::isnan(f.neck_conf) ||
                std::isnan(f.hip_conf))
                throw CsvParseError(line, "NaN fields are rejected");
            if (f.timestamp < 0.0)
                throw CsvParseError(line, "timestamps must be non-negative");
            if (f.neck_conf < 0.0 || f.neck_conf > 1.0 || f.hip_conf < 0.0 || f.hip_conf > 1.0)
                throw CsvParseError(line, "confidences must lie in [0, 1]");
            out.push_back(f);
        });
    return out;
}

std::vector<NoteRecord> parse_notes(std::string_view text) {
    std::vector<NoteRecord> out;
    for_each_row(text, "participant_id,slide,segment_class,count", 4,
                 [&](int line, const std::vector<std::string_view>& cols) {
                     NoteRecord r;
                     r.participant = std::string(cols[0]);
                     r.slide = static_cast<int>(parse_int(cols[1], line, "slide"));
                     if (r.slide < 1) throw CsvParseError(line, "slide indices are 1-based");
                     if (cols[2] == "key")
                         r.seg_class = SegmentClass::Key;
                     else if (cols[2] == "non_key")
                         r.seg_class = SegmentClass::NonKey;
                     else
                         throw CsvParseError(line, "segment_class must be key or non_key");
                     r.count = static_cast<int>(parse_int(cols[3], line, "count"));
                     if (r.count < 0) throw CsvParseError(line, "count must be non-negative");
                     out.push_back(std::move(r));
                 });
    return out;
}

std::vector<TestResponse> parse_responses(std::string_view text) {
    struct Entry {
        int question;
        int choice;
        int line;
    };
    std::vector<std::string> order;
    std::map<std::string, std::vector<Entry>> by_participant;
    int max_question = 0;

    for_each_row(text, "participant_id,question,choice", 3,
                 [&](int line, const std::vector<std::string_view>& cols) {
                     std::string who(cols[0]);
                     const int q = static_cast<int>(parse_int(cols[1], line, "question"));
                     const int choice = static_cast<int>(parse_int(cols[2], line, "choice"));
                     if (q < 1) throw CsvParseError(line, "questions are 1-based");
                     if (choice < 1 || choice > 4)
                         throw CsvParseError(line, "choice must lie in 1..4");
                     if (!by_participant.count(who)) order.push_back(who);
                     by_participant[who].push_back(Entry{q, choice, line});
                     max_question = std::max(max_question, q);
                 });

    std::vector<TestResponse> out;
    for (const std::string& who : order) {
        TestResponse r;
        r.participant = who;
        r.answers.assign(static_cast<std::size_t>(max_question), 0);
        for (const Entry& e : by_participant[who]) {
            auto& slot = r.answers[static_cast<std::size_t>(e.question - 1)];
            if (slot != 0)
                throw CsvParseError(e.line, who + " answers question " +
                                                std::to_string(e.question) + " twice");
            slot = e.choice;
        }
        for (int q = 0; q < max_question; ++q)
            if (r.answers[static_cast<std::size_t>(q)] == 0)
                throw CsvParseError(0, who + " is missing question " + std::to_string(q + 1));
        out.push_back(std::move(r));
    }
    return out;
}

std::vector<int> parse_answer_key(std::string_view text) {
    std::map<int, int> key;
    for_each_row(text, "question,correct_choice", 2,
                 [&](int line, const std::vector<std::string_view>& cols) {
                     const int q = static_cast<int>(parse_int(cols[0], line, "question"));
                     const int choice =
                         static_cast<int>(parse_int(cols[1], line, "correct_choice"));
                     if (q < 1) throw CsvParseError(line, "questions are 1-based");
                     if (choice < 1 || choice > 4)
                         throw CsvParseError(line, "correct_choice must lie in 1..4");
                     if (!key.emplace(q, choice).second)
                         throw CsvParseError(line, "question " + std::to_string(q) +
                                                       " listed twice");
                 });
    std::vector<int> out;
    int expect = 1;
    for (const auto& [q, choice] : key) {
        if (q != expect++)
            throw CsvParseError(0, "answer key must cover questions 1..Q without gaps");
        out.push_back(choice);
    }
    return out;
}

std::map<std::string, StudyGroup> parse_groups(std::string_view text) {
    std::map<std::string, StudyGroup> out;
    for_each_row(text, "participant_id,group", 2,
                 [&](int line, const std::vector<std::string_view>& cols) {
                     const auto group = study_group_from_name(cols[1]);
                     if (!group)
                         throw CsvParseError(line, "unknown group '" + std::string(cols[1]) +
                                                       "'");
                     if (!out.emplace(std::string(cols[0]), *group).second)
                         throw CsvParseError(line, "participant '" + std::string(cols[0]) +
                                                       "' listed twice");
                 });
    return out;
}

std::map<int, std::vector<int>> parse_question_slides(std::string_view text) {
    std::map<int, std::vector<int>> out;
    for_each_row(text, "question,slide", 2,
                 [&](int line, const std::vector<std::string_view>& cols) {
                     const int q = static_cast<int>(parse_int(cols[0], line, "question"));
                     const int slide = static_cast<int>(parse_int(cols[1], line, "slide"));
                     if (q < 1 || slide < 1)
                         throw CsvParseError(line, "questions and slides are 1-based");
                     out[q].push_back(slide);
                 });
    return out;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_file_atomic(const std::string& path, std::string_view content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    if (target.has_parent_path()) fs::create_directories(target.parent_path());
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot write '" + tmp.string() + "'");
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) throw IoError("short write to '" + tmp.string() + "'");
    }
    fs::rename(tmp, target);
}

} // namespace vclass
