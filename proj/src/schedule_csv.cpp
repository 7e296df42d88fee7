#include "vclass/schedule_csv.hpp"

#include <algorithm>
#include <charconv>
#include <cinttypes>
#include <cstdio>
#include <map>
#include <optional>
#include <sstream>
#include <vector>

namespace vclass {

namespace {

constexpr std::string_view kMagic = "# vclass-schedule v1";
constexpr std::string_view kHeader =
    "character_id,row,seat,start_s,action,variation,transition_s";

std::string fmt3(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}

std::string fmt_segments(const std::vector<Segment>& segments) {
    std::string out;
    for (std::size_t i = 0; i < segments.size(); ++i) {
        if (i) out += ';';
        out += fmt3(segments[i].start);
        out += '-';
        out += fmt3(segments[i].end);
    }
    return out;
}

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
    if (!(value == value))
        throw CsvParseError(line, std::string(what) + " must not be NaN");
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

std::uint64_t parse_uint64(std::string_view field, int line, const char* what) {
    std::uint64_t value = 0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc{} || ptr != field.data() + field.size())
        throw CsvParseError(line, std::string("malformed ") + what + " '" +
                                      std::string(field) + "'");
    return value;
}

std::vector<Segment> parse_segments(std::string_view value, int line, const char* what) {
    std::vector<Segment> out;
    if (value.empty()) return out;
    for (std::string_view part : split(value, ';')) {
        const std::size_t dash = part.find('-');
        if (dash == std::string_view::npos)
            throw CsvParseError(line, std::string("malformed ") + what + " entry");
        out.push_back(Segment{parse_double(part.substr(0, dash), line, what),
                              parse_double(part.substr(dash + 1), line, what)});
    }
    return out;
}

} // namespace

std::string serialize_schedule(const Schedule& schedule) {
    int front_rows = 0, back_rows = 0;
    for (const SeatRow& row : schedule.chart.rows())
        (row.kind == RowKind::Front ? front_rows : back_rows) += 1;
    if (front_rows != 1 || back_rows != 1)
        throw std::invalid_argument(
            "schedule CSV encodes seats as (row kind, lateral index); the chart needs "
            "exactly one front and one back row");

    std::vector<const ActionEvent*> ordered;
    ordered.reserve(schedule.event_count());
    for (const auto& ev : schedule.events)
        for (const ActionEvent& e : ev) ordered.push_back(&e);
    std::sort(ordered.begin(), ordered.end(), [](const ActionEvent* a, const ActionEvent* b) {
        if (a->start != b->start) return a->start < b->start;
        return a->character_id < b->character_id;
    });

    std::ostringstream os;
    os << kMagic << '\n';
    os << "# mode=" << mode_name(schedule.mode) << '\n';
    os << "# seed=" << schedule.seed << '\n';
    os << "# duration_s=" << fmt3(schedule.timeline.duration) << '\n';
    os << "# key_segments=" << fmt_segments(schedule.timeline.key_segments) << '\n';
    os << "# video_segments=" << fmt_segments(schedule.timeline.video_segments) << '\n';
    os << "# variations=";
    for (int i = 0; i < kActionCount; ++i) os << (i ? "," : "") << schedule.variations.counts[i];
    os << '\n';
    os << kHeader << '\n';

    for (const ActionEvent* e : ordered) {
        const SeatRef& seat = schedule.chart.seat_of(e->character_id);
        os << e->character_id << ',' << row_kind_name(seat.kind) << ',' << seat.lateral << ','
           << fmt3(e->start) << ',' << action_name(e->action) << ',' << e->variation << ','
           << fmt3(e->transition) << '\n';
    }
    return os.str();
}

Schedule parse_schedule(std::string_view text) {
    struct Row {
        ActionEvent event;
        RowKind kind;
        int lateral;
        int line;
    };

    ScheduleMode mode = ScheduleMode::Stable;
    std::uint64_t seed = 0;
    std::optional<double> duration;
    std::vector<Segment> key_segments, video_segments;
    VariationTable variations;

    std::vector<Row> rows;
    bool header_seen = false;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t eol = text.find('\n', pos);
        std::string_view line = text.substr(
            pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (line.empty()) continue;

        if (line.front() == '#') {
            if (header_seen)
                throw CsvParseError(line_no, "metadata must precede the header");
            std::string_view body = line.substr(1);
            while (!body.empty() && body.front() == ' ') body.remove_prefix(1);
            const std::size_t eq = body.find('=');
            if (eq == std::string_view::npos) continue; // magic / free comment
            const std::string_view key = body.substr(0, eq);
            const std::string_view value = body.substr(eq + 1);
            if (key == "mode") {
                if (value == "stable")
                    mode = ScheduleMode::Stable;
                else if (value == "dynamic")
                    mode = ScheduleMode::Dynamic;
                else
                    throw CsvParseError(line_no, "unknown mode '" + std::string(value) + "'");
            } else if (key == "seed") {
                seed = parse_uint64(value, line_no, "seed");
            } else if (key == "duration_s") {
                duration = parse_double(value, line_no, "duration");
            } else if (key == "key_segments") {
                key_segments = parse_segments(value, line_no, "key segment");
            } else if (key == "video_segments") {
                video_segments = parse_segments(value, line_no, "video segment");
            } else if (key == "variations") {
                const auto parts = split(value, ',');
                if (parts.size() != kActionCount)
                    throw CsvParseError(line_no, "variations needs 7 counts");
                for (int i = 0; i < kActionCount; ++i)
                    variations.counts[static_cast<std::size_t>(i)] =
                        static_cast<int>(parse_int(parts[static_cast<std::size_t>(i)],
                                                   line_no, "variation count"));
                if (!variations.valid())
                    throw CsvParseError(line_no, "variation counts must lie in [1, 3]");
            }
            continue;
        }

        if (!header_seen) {
            if (line != kHeader)
                throw CsvParseError(line_no, "bad header, expected '" + std::string(kHeader) +
                                                 "'");
            header_seen = true;
            continue;
        }

        const auto fields = split(line, ',');
        if (fields.size() != 7)
            throw CsvParseError(line_no, "expected 7 fields, got " +
                                             std::to_string(fields.size()));

        Row row{};
        row.line = line_no;
        row.event.character_id =
            static_cast<int>(parse_int(fields[0], line_no, "character id"));
        if (row.event.character_id < 0)
            throw CsvParseError(line_no, "character id must be non-negative");

        if (fields[1] == "front")
            row.kind = RowKind::Front;
        else if (fields[1] == "back")
            row.kind = RowKind::Back;
        else
            throw CsvParseError(line_no, "unknown row '" + std::string(fields[1]) + "'");

        row.lateral = static_cast<int>(parse_int(fields[2], line_no, "seat"));
        if (row.lateral < 0) throw CsvParseError(line_no, "seat must be non-negative");

        row.event.start = parse_double(fields[3], line_no, "start_s");
        if (row.event.start < 0.0)
            throw CsvParseError(line_no, "start_s must be non-negative");

        const auto action = action_from_name(fields[4]);
        if (!action)
            throw CsvParseError(line_no, "unknown action '" + std::string(fields[4]) + "'");
        row.event.action = *action;

        row.event.variation = static_cast<int>(parse_int(fields[5], line_no, "variation"));

        row.event.transition = parse_double(fields[6], line_no, "transition_s");
        if (row.event.transition < 0.0)
            throw CsvParseError(line_no, "transition_s must be non-negative");

        rows.push_back(row);
    }

    if (!header_seen) throw CsvParseError(0, "missing header line");
    if (rows.empty()) throw CsvParseError(0, "schedule has no events");

    // Variation bounds need the (possibly metadata-supplied) table.
    for (const Row& r : rows) {
        const int max_var = variations.count(r.event.action);
        if (r.event.variation < 1 || r.event.variation > max_var)
            throw CsvParseError(r.line, "variation " + std::to_string(r.event.variation) +
                                            " out of range for " +
                                            std::string(action_name(r.event.action)) +
                                            " (max " + std::to_string(max_var) + ")");
    }

    // Seat assignment: each character must use one consistent (row, seat).
    int max_id = 0;
    for (const Row& r : rows) max_id = std::max(max_id, r.event.character_id);
    const int n = max_id + 1;

    std::vector<std::optional<std::pair<RowKind, int>>> seats(static_cast<std::size_t>(n));
    for (const Row& r : rows) {
        auto& slot = seats[static_cast<std::size_t>(r.event.character_id)];
        const std::pair<RowKind, int> seat{r.kind, r.lateral};
        if (!slot)
            slot = seat;
        else if (*slot != seat)
            throw CsvParseError(r.line, "character " + std::to_string(r.event.character_id) +
                                            " changes seat mid-file");
    }
    for (int c = 0; c < n; ++c)
        if (!seats[static_cast<std::size_t>(c)])
            throw CsvParseError(0, "character ids must cover 0..N-1; missing " +
                                       std::to_string(c));

    std::map<int, int> front, back; // lateral -> character
    for (int c = 0; c < n; ++c) {
        const auto& [kind, lateral] = *seats[static_cast<std::size_t>(c)];
        auto& side = kind == RowKind::Front ? front : back;
        if (!side.emplace(lateral, c).second)
            throw CsvParseError(0, "two characters share seat " + std::to_string(lateral) +
                                       " in the " +
                                       std::string(row_kind_name(kind)) + " row");
    }
    if (front.empty() || back.empty())
        throw CsvParseError(0, "chart needs at least one front and one back seat");
    auto build_row = [](const std::map<int, int>& side, RowKind kind) {
        SeatRow row{kind, {}};
        int expect = 0;
        for (const auto& [lateral, c] : side) {
            if (lateral != expect++)
                throw CsvParseError(0, "seat indices must cover 0..k-1 per row");
            row.characters.push_back(c);
        }
        return row;
    };

    Schedule schedule;
    schedule.mode = mode;
    schedule.seed = seed;
    schedule.variations = variations;
    schedule.chart = SeatingChart({build_row(front, RowKind::Front),
                                   build_row(back, RowKind::Back)});

    schedule.events.assign(static_cast<std::size_t>(n), {});
    std::vector<int> last_line(static_cast<std::size_t>(n), 0);
    for (const Row& r : rows) {
        auto& ev = schedule.events[static_cast<std::size_t>(r.event.character_id)];
        if (!ev.empty() && r.event.start <= ev.back().start)
            throw CsvParseError(r.line,
                                "character " + std::to_string(r.event.character_id) +
                                    " starts must be strictly increasing (previous row at "
                                    "line " +
                                    std::to_string(
                                        last_line[static_cast<std::size_t>(
                                            r.event.character_id)]) +
                                    ")");
        ev.push_back(r.event);
        last_line[static_cast<std::size_t>(r.event.character_id)] = r.line;
    }
    for (int c = 0; c < n; ++c) {
        const auto& ev = schedule.events[static_cast<std::size_t>(c)];
        if (ev.empty() || ev.front().start != 0.0)
            throw CsvParseError(0, "character " + std::to_string(c) +
                                       " is missing its opening event at t=0");
    }

    double max_end = 0.0;
    for (const auto& ev : schedule.events)
        for (const ActionEvent& e : ev) max_end = std::max(max_end, e.start + e.transition);
    schedule.timeline.duration = duration.value_or(max_end);
    schedule.timeline.key_segments = std::move(key_segments);
    schedule.timeline.video_segments = std::move(video_segments);
    try {
        schedule.timeline.validate();
    } catch (const std::exception& e) {
        throw CsvParseError(0, e.what());
    }
    if (max_end > schedule.timeline.duration + 1e-9)
        throw CsvParseError(0, "events extend beyond the declared duration");

    return schedule;
}

} // namespace vclass
