#include "vclass/config.hpp"

#include <stdexcept>

#include <json.hpp>

#include "vclass/analysis_io.hpp"
#include "vclass/scheduler.hpp"

namespace vclass {

namespace {

using nlohmann::json;

double round_time(double v) { return round_ms(v); }

std::vector<Segment> read_segments(const json& j, const char* name) {
    std::vector<Segment> out;
    if (!j.contains(name)) return out;
    for (const json& pair : j.at(name)) {
        if (!pair.is_array() || pair.size() != 2)
            throw std::runtime_error(std::string(name) + " entries must be [start, end] pairs");
        out.push_back(Segment{round_time(pair[0].get<double>()),
                              round_time(pair[1].get<double>())});
    }
    return out;
}

SeatingChart read_chart(const json& root) {
    if (!root.contains("seating")) return SeatingChart::default_chart();
    const json& seating = root.at("seating");
    std::vector<std::pair<RowKind, int>> sizes;
    for (const json& row : seating.at("rows")) {
        const std::string kind = row.at("kind").get<std::string>();
        if (kind != "front" && kind != "back")
            throw std::runtime_error("row kind must be 'front' or 'back'");
        sizes.emplace_back(kind == "front" ? RowKind::Front : RowKind::Back,
                           row.at("seats").get<int>());
    }
    return SeatingChart::from_row_sizes(sizes);
}

ModeParams read_params(const json& root) {
    ModeParams p;
    if (root.contains("params")) {
        const json& jp = root.at("params");
        p.transition_min = jp.value("transition_min_s", p.transition_min);
        p.transition_max = jp.value("transition_max_s", p.transition_max);
        if (jp.contains("stable")) {
            const json& js = jp.at("stable");
            p.stable.toggle_interval_min =
                js.value("toggle_interval_min_s", p.stable.toggle_interval_min);
            p.stable.toggle_interval_max =
                js.value("toggle_interval_max_s", p.stable.toggle_interval_max);
            p.stable.video_subintervals =
                js.value("video_subintervals", p.stable.video_subintervals);
        }
        if (jp.contains("dynamic")) {
            const json& jd = jp.at("dynamic");
            p.dynamic.lead_in = jd.value("lead_in_s", p.dynamic.lead_in);
            p.dynamic.post_lean_forward =
                jd.value("post_lean_forward_s", p.dynamic.post_lean_forward);
            p.dynamic.revert_wave_duration =
                jd.value("revert_wave_duration_s", p.dynamic.revert_wave_duration);
            p.dynamic.negative_dwell_min =
                jd.value("negative_dwell_min_s", p.dynamic.negative_dwell_min);
            p.dynamic.negative_dwell_max =
                jd.value("negative_dwell_max_s", p.dynamic.negative_dwell_max);
        }
    }
    if (root.contains("variations")) {
        for (const auto& [name, count] : root.at("variations").items()) {
            const auto action = action_from_name(name);
            if (!action) throw std::runtime_error("unknown action '" + name + "' in variations");
            p.variations.count(*action) = count.get<int>();
        }
    }
    return p;
}

} // namespace

ProjectConfig parse_config(const std::string& json_text) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::exception& e) {
        throw std::runtime_error(std::string("config is not valid JSON: ") + e.what());
    }

    try {
        ProjectConfig config;
        const std::string mode = root.at("mode").get<std::string>();
        if (mode == "stable")
            config.mode = ScheduleMode::Stable;
        else if (mode == "dynamic")
            config.mode = ScheduleMode::Dynamic;
        else
            throw std::runtime_error("mode must be 'stable' or 'dynamic'");

        if (!root.contains("seed"))
            throw std::runtime_error("config must declare a seed; runs are reproducible");
        config.seed = root.at("seed").get<std::uint64_t>();

        const json& jt = root.at("timeline");
        config.timeline.duration = round_time(jt.at("duration_s").get<double>());
        config.timeline.key_segments = read_segments(jt, "key_segments");
        config.timeline.video_segments = read_segments(jt, "video_segments");
        config.timeline.validate();

        config.chart = read_chart(root);
        config.params = read_params(root);
        config.params.validate();
        return config;
    } catch (const json::exception& e) {
        throw std::runtime_error(std::string("config: ") + e.what());
    } catch (const std::logic_error& e) {
        throw std::runtime_error(std::string("config: ") + e.what());
    }
}

ProjectConfig load_config(const std::string& path) {
    return parse_config(read_file(path));
}

Schedule generate(const ProjectConfig& config) {
    if (config.mode == ScheduleMode::Stable)
        return generate_stable(config.timeline, config.chart, config.params, config.seed);
    return generate_dynamic(config.timeline, config.chart, config.params, config.seed);
}

} // namespace vclass
