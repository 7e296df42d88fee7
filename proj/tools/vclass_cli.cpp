// vclass: schedule generation, validation and analysis for the virtual
// classroom crowd. One subcommand per invocation; all file writes are
// atomic. Exit codes: 0 ok, 1 validation errors, 2 usage/IO errors.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "vclass/analysis_io.hpp"
#include "vclass/config.hpp"
#include "vclass/metrics.hpp"
#include "vclass/schedule_csv.hpp"
#include "vclass/scheduler.hpp"
#include "vclass/stats.hpp"
#include "vclass/svg_plot.hpp"
#include "vclass/validate.hpp"

namespace fs = std::filesystem;
using namespace vclass;

namespace {

std::string fmt(double v, int digits = 6) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

std::string profile_line(const TimeProfile& p) {
    std::ostringstream os;
    os << "profile positive=" << fmt(p.positive_fraction, 4)
       << " transition=" << fmt(p.transition_fraction, 4)
       << " negative=" << fmt(p.negative_fraction, 4)
       << " neutral=" << fmt(p.neutral_fraction, 4);
    return os.str();
}

// --- generate ---------------------------------------------------------------

int run_generate(const std::string& config_path, const std::string& out_path) {
    const ProjectConfig config = load_config(config_path);
    const Schedule schedule = generate(config);

    const ValidationReport report = validate(schedule, config.params);
    if (!report.ok()) {
        std::cerr << "generated schedule failed validation:\n" << format_report(report);
        return 1;
    }

    write_file_atomic(out_path, serialize_schedule(schedule));
    std::cout << "wrote " << out_path << " (" << schedule.event_count() << " events, "
              << mode_name(schedule.mode) << " mode, seed " << schedule.seed << ")\n";
    std::cout << profile_line(proportions(schedule)) << "\n";
    return 0;
}

// --- validate ---------------------------------------------------------------

int run_validate(const std::string& schedule_path, const std::string& config_path) {
    const Schedule schedule = parse_schedule(read_file(schedule_path));
    ModeParams params;
    if (!config_path.empty()) {
        const ProjectConfig config = load_config(config_path);
        params = config.params;
        if (schedule.timeline.duration != config.timeline.duration ||
            schedule.timeline.key_segments != config.timeline.key_segments ||
            schedule.timeline.video_segments != config.timeline.video_segments)
            std::cout << "note: schedule timeline differs from the config timeline\n";
    }
    const ValidationReport report = validate(schedule, params);
    std::cout << format_report(report);
    return report.ok() ? 0 : 1;
}

// --- positivity -------------------------------------------------------------

int run_positivity(const std::string& schedule_path, double interval,
                   const std::string& out_path, std::string svg_path) {
    if (interval < 0.001)
        throw std::runtime_error("sample interval below the 1 ms time resolution");
    const Schedule schedule = parse_schedule(read_file(schedule_path));
    const PositivitySeries series = positivity_series(schedule, interval);

    std::string csv_path = out_path;
    if (fs::path(out_path).extension() == ".svg") {
        svg_path = out_path;
        csv_path = fs::path(out_path).replace_extension(".csv").string();
    }

    std::ostringstream csv;
    csv << "time_s,positivity\n";
    for (std::size_t k = 0; k < series.values.size(); ++k)
        csv << fmt(series.time_of(k), 3) << ',' << series.values[k] << '\n';
    write_file_atomic(csv_path, csv.str());
    std::cout << "wrote " << csv_path << " (" << series.values.size() << " samples)\n";

    if (!svg_path.empty()) {
        PlotSpec spec;
        spec.title = "Group positivity (" + std::string(mode_name(schedule.mode)) + " mode)";
        spec.x_label = "lecture time [s]";
        spec.y_label = "positivity";
        PlotSeries line;
        line.label = mode_name(schedule.mode);
        for (std::size_t k = 0; k < series.values.size(); ++k) {
            line.x.push_back(series.time_of(k));
            line.y.push_back(series.values[k]);
        }
        spec.series.push_back(std::move(line));
        write_file_atomic(svg_path, render_line_plot(spec));
        std::cout << "wrote " << svg_path << "\n";
    }
    return 0;
}

// --- analyze helpers --------------------------------------------------------

bool group_is_stable(StudyGroup g) {
    return g == StudyGroup::StableNotes || g == StudyGroup::StableNoNotes;
}

StudyGroup group_of(const std::map<std::string, StudyGroup>& groups,
                    const std::string& participant) {
    const auto it = groups.find(participant);
    if (it == groups.end())
        throw std::runtime_error("participant '" + participant +
                                 "' is missing from the groups file");
    return it->second;
}

double mean_of(const std::vector<double>& v) {
    double sum = 0.0;
    for (double x : v) sum += x;
    return v.empty() ? 0.0 : sum / static_cast<double>(v.size());
}

double median_of(std::vector<double> v) {
    if (v.empty()) return 0.0;
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 ? v[n / 2] : (v[n / 2 - 1] + v[n / 2]) / 2.0;
}

std::string stat_row(const std::string& label, const std::string& classes,
                     const StatResult& r) {
    std::ostringstream os;
    os << label << ',' << classes << ',' << fmt(r.statistic) << ',' << fmt(r.p_value) << ','
       << stat_method_name(r.method) << ',' << (r.corrected ? "yes" : "no");
    return os.str();
}

constexpr const char* kStatHeader = "test,groups,statistic,p_value,method,corrected";

// --- analyze posture --------------------------------------------------------

int run_analyze_posture(const std::vector<std::string>& inputs, const std::string& groups_path,
                        const std::string& out_dir, const std::string& facing_name,
                        double threshold) {
    const Facing facing = facing_name == "right" ? Facing::ImageRight : Facing::ImageLeft;
    const auto groups = parse_groups(read_file(groups_path));

    std::vector<PostureSeries> all;
    for (const std::string& path : inputs) {
        PostureSeries series;
        series.participant = fs::path(path).stem().string();
        series.group = group_of(groups, series.participant);
        const auto frames = parse_keypoints(read_file(path));
        series.samples = torso_angles(frames, facing, threshold);
        if (series.samples.empty())
            throw std::runtime_error("no usable frames in '" + path + "'");
        all.push_back(std::move(series));
    }

    // per-participant minute averages
    std::ostringstream minutes_csv;
    minutes_csv << "participant,group,minute,mean_angle_deg\n";
    // group -> minute -> angles across participants
    std::map<StudyGroup, std::map<int, std::vector<double>>> group_minutes;
    for (const PostureSeries& series : all) {
        for (const auto& [minute, mean] : minute_averages(series)) {
            minutes_csv << series.participant << ',' << study_group_name(series.group) << ','
                        << minute << ',' << fmt(mean, 3) << '\n';
            group_minutes[series.group][minute].push_back(mean);
        }
    }
    write_file_atomic((fs::path(out_dir) / "posture_minutes.csv").string(),
                      minutes_csv.str());

    std::ostringstream series_csv;
    series_csv << "group,minute,mean_angle_deg,participants\n";
    PlotSpec spec;
    spec.title = "Torso angle by group";
    spec.x_label = "minute";
    spec.y_label = "angle [deg]";
    for (const auto& [group, minutes] : group_minutes) {
        PlotSeries line;
        line.label = study_group_name(group);
        for (const auto& [minute, angles] : minutes) {
            double sum = 0.0;
            for (double a : angles) sum += a;
            const double mean = sum / static_cast<double>(angles.size());
            series_csv << study_group_name(group) << ',' << minute << ',' << fmt(mean, 3)
                       << ',' << angles.size() << '\n';
            line.x.push_back(minute);
            line.y.push_back(mean);
        }
        spec.series.push_back(std::move(line));
    }
    write_file_atomic((fs::path(out_dir) / "posture_group_series.csv").string(),
                      series_csv.str());
    write_file_atomic((fs::path(out_dir) / "posture_minutes.svg").string(),
                      render_line_plot(spec));

    // per-minute Kruskal-Wallis with Bonferroni-corrected pairwise tests,
    // wherever every observed group has data
    std::ostringstream tests_csv;
    tests_csv << "minute," << kStatHeader << '\n';
    std::set<int> all_minutes;
    for (const auto& [group, minutes] : group_minutes)
        for (const auto& [minute, angles] : minutes) all_minutes.insert(minute);

    std::vector<StudyGroup> group_order;
    for (const auto& [group, minutes] : group_minutes) group_order.push_back(group);

    for (int minute : all_minutes) {
        std::vector<std::vector<double>> samples;
        std::vector<StudyGroup> present;
        for (StudyGroup g : group_order) {
            const auto& minutes = group_minutes[g];
            const auto it = minutes.find(minute);
            if (it != minutes.end() && !it->second.empty()) {
                samples.push_back(it->second);
                present.push_back(g);
            }
        }
        if (samples.size() < 2) continue;
        const KruskalWallisResult kw = kruskal_wallis(samples, true);
        std::string all_groups;
        for (StudyGroup g : present)
            all_groups += (all_groups.empty() ? "" : "|") + std::string(study_group_name(g));
        tests_csv << minute << ',' << stat_row("kruskal-wallis", all_groups, kw.omnibus)
                  << '\n';
        for (std::size_t i = 0; i < kw.pairwise.size(); ++i) {
            const auto [a, b] = kw.pairs[i];
            tests_csv << minute << ','
                      << stat_row("pairwise",
                                  std::string(study_group_name(
                                      present[static_cast<std::size_t>(a)])) +
                                      "|" +
                                      std::string(study_group_name(
                                          present[static_cast<std::size_t>(b)])),
                                  kw.pairwise[i])
                      << '\n';
        }
    }
    write_file_atomic((fs::path(out_dir) / "posture_tests.csv").string(), tests_csv.str());
    std::cout << "analyzed " << all.size() << " posture recordings into " << out_dir << "\n";
    return 0;
}

// --- analyze notes ----------------------------------------------------------

int run_analyze_notes(const std::string& notes_path, const std::string& groups_path,
                      const std::string& out_dir, bool exclude_zero) {
    const auto groups = parse_groups(read_file(groups_path));
    const auto records = parse_notes(read_file(notes_path));

    struct Row {
        std::string participant;
        StudyGroup group;
        NoteCounts counts;
    };
    std::vector<Row> rows;
    for (const auto& [participant, group] : groups)
        rows.push_back(Row{participant, group, count_notes(records, participant)});

    std::ostringstream counts_csv;
    counts_csv << "participant,group,key_slides,nonkey_slides,total_slides,zero_notes\n";
    for (const Row& r : rows)
        counts_csv << r.participant << ',' << study_group_name(r.group) << ','
                   << r.counts.key_slides << ',' << r.counts.nonkey_slides << ','
                   << r.counts.key_slides + r.counts.nonkey_slides << ','
                   << (r.counts.key_slides + r.counts.nonkey_slides == 0 ? "yes" : "no")
                   << '\n';
    write_file_atomic((fs::path(out_dir) / "notes_counts.csv").string(), counts_csv.str());

    auto metric_samples = [&](auto&& metric) {
        std::pair<std::vector<double>, std::vector<double>> out; // stable, dynamic
        for (const Row& r : rows) {
            if (exclude_zero && r.counts.key_slides + r.counts.nonkey_slides == 0) continue;
            (group_is_stable(r.group) ? out.first : out.second)
                .push_back(static_cast<double>(metric(r.counts)));
        }
        return out;
    };

    std::ostringstream tests_csv;
    tests_csv << "metric," << kStatHeader << '\n';
    const std::vector<std::pair<std::string, int NoteCounts::*>> metrics{
        {"key_slides", &NoteCounts::key_slides},
        {"nonkey_slides", &NoteCounts::nonkey_slides},
    };
    for (const auto& [name, member] : metrics) {
        auto [stable, dynamic] = metric_samples([&](const NoteCounts& c) { return c.*member; });
        if (stable.empty() || dynamic.empty())
            throw std::runtime_error("one mode has no participants for metric " + name);
        tests_csv << stat_row(name, "stable|dynamic",
                              wilcoxon_rank_sum(stable, dynamic))
                  << '\n';
    }
    auto [stable_total, dynamic_total] =
        metric_samples([](const NoteCounts& c) { return c.key_slides + c.nonkey_slides; });
    tests_csv << stat_row("total_slides", "stable|dynamic",
                          wilcoxon_rank_sum(stable_total, dynamic_total))
              << '\n';
    write_file_atomic((fs::path(out_dir) / "notes_tests.csv").string(), tests_csv.str());

    // per-group means and a bar chart
    std::map<StudyGroup, std::pair<std::vector<double>, std::vector<double>>> per_group;
    for (const Row& r : rows) {
        if (exclude_zero && r.counts.key_slides + r.counts.nonkey_slides == 0) continue;
        per_group[r.group].first.push_back(r.counts.key_slides);
        per_group[r.group].second.push_back(r.counts.nonkey_slides);
    }
    std::ostringstream groups_csv;
    groups_csv << "group,n,mean_key_slides,mean_nonkey_slides\n";
    BarChartSpec chart;
    chart.title = std::string("Noted slides per group") +
                  (exclude_zero ? " (zero-note participants excluded)" : "");
    chart.y_label = "mean slides";
    for (const auto& [group, samples] : per_group) {
        groups_csv << study_group_name(group) << ',' << samples.first.size() << ','
                   << fmt(mean_of(samples.first), 3) << ',' << fmt(mean_of(samples.second), 3)
                   << '\n';
        chart.bars.push_back(Bar{std::string(study_group_name(group)) + " key",
                                 mean_of(samples.first)});
        chart.bars.push_back(Bar{std::string(study_group_name(group)) + " non-key",
                                 mean_of(samples.second)});
    }
    write_file_atomic((fs::path(out_dir) / "notes_groups.csv").string(), groups_csv.str());
    write_file_atomic((fs::path(out_dir) / "notes_groups.svg").string(),
                      render_bar_chart(chart));

    int zero = 0;
    for (const Row& r : rows) zero += r.counts.key_slides + r.counts.nonkey_slides == 0;
    std::cout << "note counts for " << rows.size() << " participants (" << zero
              << " without notes" << (exclude_zero ? ", excluded from tests" : "") << ")\n";
    return 0;
}

// --- analyze scores ---------------------------------------------------------

int run_analyze_scores(const std::string& responses_path, const std::string& key_path,
                       const std::string& groups_path, const std::string& out_dir) {
    const auto groups = parse_groups(read_file(groups_path));
    const auto key = parse_answer_key(read_file(key_path));
    const auto responses = parse_responses(read_file(responses_path));
    if (responses.empty()) throw std::runtime_error("no responses to score");

    std::ostringstream scores_csv;
    scores_csv << "participant,group,score\n";
    std::map<StudyGroup, std::vector<double>> by_group;
    std::vector<double> stable, dynamic;
    double total = 0.0;
    for (const TestResponse& r : responses) {
        const int score = score_test(r, key);
        const StudyGroup group = group_of(groups, r.participant);
        scores_csv << r.participant << ',' << study_group_name(group) << ',' << score << '\n';
        by_group[group].push_back(score);
        (group_is_stable(group) ? stable : dynamic).push_back(score);
        total += score;
    }
    write_file_atomic((fs::path(out_dir) / "scores.csv").string(), scores_csv.str());

    const double mean = total / static_cast<double>(responses.size());
    std::cout << "overall_mean=" << fmt(mean, 3) << " (n=" << responses.size() << ", max="
              << key.size() << ")\n";

    std::ostringstream tests_csv;
    tests_csv << kStatHeader << '\n';
    if (!stable.empty() && !dynamic.empty())
        tests_csv << stat_row("mode", "stable|dynamic", wilcoxon_rank_sum(stable, dynamic))
                  << '\n';
    if (by_group.size() >= 2) {
        std::vector<std::vector<double>> samples;
        std::vector<StudyGroup> order;
        for (const auto& [group, values] : by_group) {
            samples.push_back(values);
            order.push_back(group);
        }
        const KruskalWallisResult kw = kruskal_wallis(samples, true);
        std::string labels;
        for (StudyGroup g : order)
            labels += (labels.empty() ? "" : "|") + std::string(study_group_name(g));
        tests_csv << stat_row("kruskal-wallis", labels, kw.omnibus) << '\n';
        for (std::size_t i = 0; i < kw.pairwise.size(); ++i) {
            const auto [a, b] = kw.pairs[i];
            tests_csv << stat_row(
                             "pairwise",
                             std::string(study_group_name(order[static_cast<std::size_t>(a)])) +
                                 "|" +
                                 std::string(
                                     study_group_name(order[static_cast<std::size_t>(b)])),
                             kw.pairwise[i])
                      << '\n';
        }
    }
    write_file_atomic((fs::path(out_dir) / "score_tests.csv").string(), tests_csv.str());

    std::ostringstream groups_csv;
    groups_csv << "group,n,mean,median\n";
    BarChartSpec chart;
    chart.title = "Mini-test scores per group";
    chart.y_label = "mean score";
    for (const auto& [group, values] : by_group) {
        groups_csv << study_group_name(group) << ',' << values.size() << ','
                   << fmt(mean_of(values), 3) << ',' << fmt(median_of(values), 3) << '\n';
        chart.bars.push_back(Bar{std::string(study_group_name(group)), mean_of(values)});
    }
    write_file_atomic((fs::path(out_dir) / "score_groups.csv").string(), groups_csv.str());
    write_file_atomic((fs::path(out_dir) / "score_groups.svg").string(),
                      render_bar_chart(chart));
    return 0;
}

// --- analyze crosstab -------------------------------------------------------

int run_analyze_crosstab(const std::string& responses_path, const std::string& key_path,
                         const std::string& notes_path, const std::string& map_path,
                         const std::string& out_dir) {
    const auto key = parse_answer_key(read_file(key_path));
    const auto responses = parse_responses(read_file(responses_path));
    const auto records = parse_notes(read_file(notes_path));
    const auto question_slides = parse_question_slides(read_file(map_path));

    for (std::size_t q = 1; q <= key.size(); ++q)
        if (!question_slides.count(static_cast<int>(q)))
            throw std::runtime_error("question " + std::to_string(q) +
                                     " has no slide mapping");

    // key-class notes per participant per slide
    std::map<std::string, std::set<int>> noted_slides;
    for (const NoteRecord& r : records)
        if (r.seg_class == SegmentClass::Key && r.count > 0)
            noted_slides[r.participant].insert(r.slide);

    std::vector<std::vector<bool>> flags(responses.size(),
                                         std::vector<bool>(key.size(), false));
    for (std::size_t i = 0; i < responses.size(); ++i) {
        const auto it = noted_slides.find(responses[i].participant);
        if (it == noted_slides.end()) continue;
        for (std::size_t q = 0; q < key.size(); ++q)
            for (int slide : question_slides.at(static_cast<int>(q) + 1))
                if (it->second.count(slide)) {
                    flags[i][q] = true;
                    break;
                }
    }

    const auto stats = per_question_crosstab(responses, key, flags);
    std::ostringstream csv;
    csv << "question,accuracy,notetaker_fraction\n";
    PlotSpec spec;
    spec.title = "Accuracy and key-note rate per question";
    spec.x_label = "question";
    spec.y_label = "fraction";
    PlotSeries accuracy{"accuracy", {}, {}}, noted{"notetakers", {}, {}};
    for (const QuestionStat& q : stats) {
        csv << q.question << ',' << fmt(q.accuracy) << ',' << fmt(q.notetaker_fraction)
            << '\n';
        accuracy.x.push_back(q.question);
        accuracy.y.push_back(q.accuracy);
        noted.x.push_back(q.question);
        noted.y.push_back(q.notetaker_fraction);
    }
    spec.series.push_back(std::move(accuracy));
    spec.series.push_back(std::move(noted));
    write_file_atomic((fs::path(out_dir) / "crosstab.csv").string(), csv.str());
    write_file_atomic((fs::path(out_dir) / "crosstab.svg").string(), render_line_plot(spec));
    std::cout << "crosstab over " << stats.size() << " questions for " << responses.size()
              << " participants\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"virtual classroom crowd scheduler and evaluation toolkit"};
    app.require_subcommand(1);

    // generate
    auto* gen = app.add_subcommand("generate", "generate a schedule from a config");
    std::string gen_config, gen_out;
    gen->add_option("--config", gen_config, "project config (JSON)")->required();
    gen->add_option("--out", gen_out, "output schedule CSV")->required();

    // validate
    auto* val = app.add_subcommand("validate", "check a schedule against the rules");
    std::string val_schedule, val_config;
    val->add_option("--schedule", val_schedule, "schedule CSV")->required();
    val->add_option("--config", val_config, "project config (JSON)");

    // positivity
    auto* pos = app.add_subcommand("positivity", "sample the group positivity signal");
    std::string pos_schedule, pos_out, pos_svg;
    double pos_interval = 0.1;
    pos->add_option("--schedule", pos_schedule, "schedule CSV")->required();
    pos->add_option("--interval", pos_interval, "sample interval in seconds");
    pos->add_option("--out", pos_out, "output CSV (or SVG by extension)")->required();
    pos->add_option("--svg", pos_svg, "additionally write a line plot");

    // analyze
    auto* analyze = app.add_subcommand("analyze", "evaluation pipeline");
    analyze->require_subcommand(1);

    auto* posture = analyze->add_subcommand("posture", "torso angle series and tests");
    std::vector<std::string> posture_in;
    std::string posture_groups, posture_out, posture_facing = "left";
    double posture_threshold = kDefaultConfidenceThreshold;
    posture->add_option("--in", posture_in, "keypoint CSVs, one per participant")
        ->required()
        ->expected(-1);
    posture->add_option("--groups", posture_groups, "participant group mapping")->required();
    posture->add_option("--out", posture_out, "output directory")->required();
    posture->add_option("--facing", posture_facing, "subject facing: left or right")
        ->check(CLI::IsMember({"left", "right"}));
    posture->add_option("--threshold", posture_threshold, "keypoint confidence threshold");

    auto* notes = analyze->add_subcommand("notes", "note counting and mode comparison");
    std::string notes_in, notes_groups, notes_out;
    bool notes_exclude_zero = false;
    notes->add_option("--in", notes_in, "notes CSV")->required();
    notes->add_option("--groups", notes_groups, "participant group mapping")->required();
    notes->add_option("--out", notes_out, "output directory")->required();
    notes->add_flag("--exclude-zero", notes_exclude_zero,
                    "drop participants without any notes from the tests");

    auto* scores = analyze->add_subcommand("scores", "mini-test scoring and tests");
    std::string scores_in, scores_key, scores_groups, scores_out;
    scores->add_option("--in", scores_in, "responses CSV")->required();
    scores->add_option("--key", scores_key, "answer key CSV")->required();
    scores->add_option("--groups", scores_groups, "participant group mapping")->required();
    scores->add_option("--out", scores_out, "output directory")->required();

    auto* crosstab = analyze->add_subcommand("crosstab",
                                             "per-question accuracy vs notetaking");
    std::string ct_in, ct_key, ct_notes, ct_map, ct_out;
    crosstab->add_option("--in", ct_in, "responses CSV")->required();
    crosstab->add_option("--key", ct_key, "answer key CSV")->required();
    crosstab->add_option("--notes", ct_notes, "notes CSV")->required();
    crosstab->add_option("--map", ct_map, "question-to-slide mapping CSV")->required();
    crosstab->add_option("--out", ct_out, "output directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        app.exit(e);
        return 2;
    }

    try {
        if (gen->parsed()) return run_generate(gen_config, gen_out);
        if (val->parsed()) return run_validate(val_schedule, val_config);
        if (pos->parsed()) return run_positivity(pos_schedule, pos_interval, pos_out, pos_svg);
        if (posture->parsed())
            return run_analyze_posture(posture_in, posture_groups, posture_out,
                                       posture_facing, posture_threshold);
        if (notes->parsed())
            return run_analyze_notes(notes_in, notes_groups, notes_out, notes_exclude_zero);
        if (scores->parsed())
            return run_analyze_scores(scores_in, scores_key, scores_groups, scores_out);
        if (crosstab->parsed())
            return run_analyze_crosstab(ct_in, ct_key, ct_notes, ct_map, ct_out);
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
