#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace vclass {

enum class RowKind { Front, Back };

/// One classroom row: character ids ordered by lateral seat index
/// (0 = leftmost seat).
struct SeatRow {
    RowKind kind{RowKind::Front};
    std::vector<int> characters;
};

/// Where a character sits.
struct SeatRef {
    int row = 0;     // row index, 0 = frontmost
    int lateral = 0; // seat index within the row, 0 = leftmost
    RowKind kind = RowKind::Front;
};

/// Immutable seat assignment. Character ids must cover 0..N-1 exactly and
/// the chart needs at least one front and one back row.
class SeatingChart {
  public:
    explicit SeatingChart(std::vector<SeatRow> rows);

    /// 2 rows x 11 seats: front row holds characters 0-10 left to right,
    /// back row 11-21.
    static SeatingChart default_chart();

    /// Builds a chart from (kind, seat count) pairs, assigning character
    /// ids sequentially row by row.
    static SeatingChart from_row_sizes(const std::vector<std::pair<RowKind, int>>& sizes);

    int character_count() const { return static_cast<int>(seat_of_.size()); }
    const std::vector<SeatRow>& rows() const { return rows_; }
    const SeatRef& seat_of(int character_id) const;

    std::vector<int> characters_in(RowKind kind) const;

    /// Characters of one row split into its left/right half. Each half has
    /// ceil(n/2) seats; for odd n the middle seat belongs to both.
    std::vector<int> row_half(int row_index, bool left) const;

    /// Euclidean distance in (row, lateral) grid coordinates from the
    /// center of the frontmost row, normalized to [0, 1] by the chart
    /// maximum. Drives the revert wave ordering.
    double normalized_center_distance(int character_id) const;

    bool operator==(const SeatingChart& other) const;

  private:
    std::vector<SeatRow> rows_;
    std::vector<SeatRef> seat_of_; // indexed by character id
    std::vector<double> center_distance_;
};

std::string_view row_kind_name(RowKind k);

} // namespace vclass
