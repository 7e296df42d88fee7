// Serial vs OpenMP comparison for the three data-parallel kernels:
// positivity sampling, batch torso angles, and the exact rank-sum
// enumeration. Each kernel is checked for agreement before timing.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <vector>

#include <omp.h>

#include "vclass/metrics.hpp"
#include "vclass/posture.hpp"
#include "vclass/rng.hpp"
#include "vclass/scheduler.hpp"
#include "vclass/stats.hpp"

using namespace vclass;
using Clock = std::chrono::steady_clock;

namespace {

template <typename Fn>
double time_best_of(int reps, Fn&& fn) {
    double best = 1e100;
    for (int i = 0; i < reps; ++i) {
        const auto t0 = Clock::now();
        fn();
        const double s = std::chrono::duration<double>(Clock::now() - t0).count();
        if (s < best) best = s;
    }
    return best;
}

void row(const char* name, double serial_s, double parallel_s, bool agree) {
    std::printf("%-28s %10.2f ms %10.2f ms %8.2fx  %s\n", name, serial_s * 1e3,
                parallel_s * 1e3, serial_s / parallel_s, agree ? "outputs match" : "MISMATCH");
}

} // namespace

int main() {
    std::printf("threads: %d\n", omp_get_max_threads());
    std::printf("%-28s %13s %13s %9s\n", "kernel", "serial", "openmp", "speedup");

    // positivity series over a full-length dynamic schedule, 10 ms sampling
    {
        LectureTimeline tl;
        tl.duration = 1980.0;
        for (int k = 0; k < 19; ++k)
            tl.key_segments.push_back(Segment{50.0 + 102.0 * k, 76.0 + 102.0 * k});
        ModeParams params;
        params.dynamic.negative_dwell_min = 8.0;
        params.dynamic.negative_dwell_max = 13.0;
        const Schedule s = generate_dynamic(tl, SeatingChart::default_chart(), params, 1);

        PositivitySeries out_parallel, out_serial;
        const double tp = time_best_of(5, [&] { out_parallel = positivity_series(s, 0.01); });
        const double ts =
            time_best_of(5, [&] { out_serial = serial::positivity_series(s, 0.01); });
        row("positivity_series (198k)", ts, tp, out_parallel.values == out_serial.values);
    }

    // torso angles over two million synthetic frames
    {
        std::vector<KeypointFrame> frames;
        frames.reserve(2'000'000);
        RngStream r(9);
        for (int i = 0; i < 2'000'000; ++i) {
            const double deg = r.uniform(-80.0, 80.0);
            const double rad = deg * std::numbers::pi / 180.0;
            KeypointFrame f;
            f.timestamp = i * 0.033;
            f.hip_x = 320.0;
            f.hip_y = 400.0;
            f.neck_x = f.hip_x + 120.0 * std::sin(rad);
            f.neck_y = f.hip_y - 120.0 * std::cos(rad);
            f.neck_conf = i % 13 == 0 ? 0.1 : 0.9;
            frames.push_back(f);
        }
        std::vector<PostureSample> out_parallel, out_serial;
        const double tp =
            time_best_of(5, [&] { out_parallel = torso_angles(frames, Facing::ImageLeft); });
        const double ts = time_best_of(
            5, [&] { out_serial = serial::torso_angles(frames, Facing::ImageLeft); });
        bool agree = out_parallel.size() == out_serial.size();
        for (std::size_t i = 0; agree && i < out_parallel.size(); ++i)
            agree = out_parallel[i].angle == out_serial[i].angle;
        row("torso_angles (2M frames)", ts, tp, agree);
    }

    // exact rank-sum enumeration, C(24,12) = 2.7M subsets
    {
        std::vector<double> a, b;
        RngStream r(4);
        for (int i = 0; i < 12; ++i) {
            a.push_back(static_cast<double>(r.uniform_int(0, 30)));
            b.push_back(static_cast<double>(r.uniform_int(0, 30)));
        }
        double p_parallel = 0.0, p_serial = 0.0;
        const double tp =
            time_best_of(3, [&] { p_parallel = reference::wilcoxon_exact_p(a, b); });
        const double ts =
            time_best_of(3, [&] { p_serial = reference::wilcoxon_exact_p_serial(a, b); });
        row("wilcoxon enum (C(24,12))", ts, tp, p_parallel == p_serial);
    }

    return 0;
}
