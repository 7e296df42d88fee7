#pragma once

#include <string>
#include <string_view>

#include "vclass/csv_error.hpp"
#include "vclass/schedule.hpp"

namespace vclass {

/// Schedule CSV format.
///
/// A `# key=value` metadata preamble keeps the file self-contained
/// (mode, seed, timeline, variation counts), then the fixed header
///   character_id,row,seat,start_s,action,variation,transition_s
/// and one line per event, times with exactly 3 decimals, action names in
/// lowercase snake case, rows sorted by (start_s, character_id).
///
/// serialize(parse(text)) == text and parse(serialize(s)) == s. The
/// format encodes a seat as (row kind, lateral index), so it supports
/// charts with exactly one front and one back row.
std::string serialize_schedule(const Schedule& schedule);

/// Throws CsvParseError on malformed input: bad header, unknown action,
/// out-of-range variation, non-monotone per-character starts, missing
/// opening event, inconsistent seat columns.
Schedule parse_schedule(std::string_view text);

} // namespace vclass
