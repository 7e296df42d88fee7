#include "vclass/seating.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace vclass {

std::string_view row_kind_name(RowKind k) {
    return k == RowKind::Front ? "front" : "back";
}

SeatingChart::SeatingChart(std::vector<SeatRow> rows) : rows_(std::move(rows)) {
    if (rows_.empty()) throw std::invalid_argument("seating chart has no rows");

    bool has_front = false, has_back = false;
    std::size_t n = 0;
    for (const SeatRow& row : rows_) {
        if (row.characters.empty()) throw std::invalid_argument("seating chart has an empty row");
        (row.kind == RowKind::Front ? has_front : has_back) = true;
        n += row.characters.size();
    }
    if (!has_front || !has_back)
        throw std::invalid_argument("seating chart needs at least one front and one back row");

    seat_of_.assign(n, SeatRef{});
    std::vector<bool> seen(n, false);
    for (int r = 0; r < static_cast<int>(rows_.size()); ++r) {
        const SeatRow& row = rows_[r];
        for (int c = 0; c < static_cast<int>(row.characters.size()); ++c) {
            int id = row.characters[c];
            if (id < 0 || id >= static_cast<int>(n) || seen[id])
                throw std::invalid_argument(
                    "seating chart character ids must cover 0..N-1 exactly");
            seen[id] = true;
            seat_of_[id] = SeatRef{r, c, row.kind};
        }
    }

    // Grid distance from the frontmost row's center seat, for the revert wave.
    int front_row = 0;
    while (rows_[front_row].kind != RowKind::Front) ++front_row;
    const double center = (static_cast<double>(rows_[front_row].characters.size()) - 1.0) / 2.0;

    center_distance_.assign(n, 0.0);
    double max_d = 0.0;
    for (std::size_t id = 0; id < n; ++id) {
        const SeatRef& s = seat_of_[id];
        double d = std::hypot(static_cast<double>(s.row - front_row),
                              static_cast<double>(s.lateral) - center);
        center_distance_[id] = d;
        max_d = std::max(max_d, d);
    }
    if (max_d > 0.0)
        for (double& d : center_distance_) d /= max_d;
}

SeatingChart SeatingChart::default_chart() {
    return from_row_sizes({{RowKind::Front, 11}, {RowKind::Back, 11}});
}

SeatingChart SeatingChart::from_row_sizes(const std::vector<std::pair<RowKind, int>>& sizes) {
    std::vector<SeatRow> rows;
    int next_id = 0;
    for (const auto& [kind, count] : sizes) {
        if (count <= 0) throw std::invalid_argument("row seat count must be positive");
        SeatRow row{kind, {}};
        row.characters.reserve(static_cast<std::size_t>(count));
        for (int i = 0; i < count; ++i) row.characters.push_back(next_id++);
        rows.push_back(std::move(row));
    }
    return SeatingChart(std::move(rows));
}

const SeatRef& SeatingChart::seat_of(int character_id) const {
    if (character_id < 0 || character_id >= character_count())
        throw std::out_of_range("unknown character id");
    return seat_of_[static_cast<std::size_t>(character_id)];
}

std::vector<int> SeatingChart::characters_in(RowKind kind) const {
    std::vector<int> out;
    for (const SeatRow& row : rows_)
        if (row.kind == kind) out.insert(out.end(), row.characters.begin(), row.characters.end());
    return out;
}

std::vector<int> SeatingChart::row_half(int row_index, bool left) const {
    const SeatRow& row = rows_.at(static_cast<std::size_t>(row_index));
    const int n = static_cast<int>(row.characters.size());
    const int half = (n + 1) / 2;
    std::vector<int> out;
    if (left)
        out.assign(row.characters.begin(), row.characters.begin() + half);
    else
        out.assign(row.characters.end() - half, row.characters.end());
    return out;
}

double SeatingChart::normalized_center_distance(int character_id) const {
    if (character_id < 0 || character_id >= character_count())
        throw std::out_of_range("unknown character id");
    return center_distance_[static_cast<std::size_t>(character_id)];
}

bool SeatingChart::operator==(const SeatingChart& other) const {
    if (rows_.size() != other.rows_.size()) return false;
    for (std::size_t i = 0; i < rows_.size(); ++i)
        if (rows_[i].kind != other.rows_[i].kind ||
            rows_[i].characters != other.rows_[i].characters)
            return false;
    return true;
}

} // namespace vclass
