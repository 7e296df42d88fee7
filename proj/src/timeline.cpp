#include "vclass/timeline.hpp"

#include <stdexcept>
#include <string>

namespace vclass {

namespace {

void check_segment_list(const std::vector<Segment>& segments, double duration, const char* name) {
    for (std::size_t i = 0; i < segments.size(); ++i) {
        const Segment& s = segments[i];
        if (!(s.start >= 0.0 && s.start < s.end && s.end <= duration))
            throw std::invalid_argument(std::string(name) + " segment " + std::to_string(i) +
                                        " must satisfy 0 <= start < end <= duration");
        if (i > 0 && segments[i - 1].end > s.start)
            throw std::invalid_argument(std::string(name) +
                                        " segments must be sorted and non-overlapping");
    }
}

} // namespace

void LectureTimeline::validate() const {
    if (!(duration > 0.0)) throw std::invalid_argument("timeline duration must be positive");
    check_segment_list(key_segments, duration, "key");
    check_segment_list(video_segments, duration, "video");
    for (const Segment& k : key_segments)
        for (const Segment& v : video_segments)
            if (k.start < v.end && v.start < k.end)
                throw std::invalid_argument("key and video segments must not overlap");
}

} // namespace vclass
