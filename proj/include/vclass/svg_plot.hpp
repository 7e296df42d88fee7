#pragma once

#include <string>
#include <vector>

namespace vclass {

/// Minimal static line plot, enough for positivity and posture curves.
struct PlotSeries {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
};

struct PlotSpec {
    std::string title;
    std::string x_label;
    std::string y_label;
    int width = 960;
    int height = 420;
    std::vector<PlotSeries> series;
};

std::string render_line_plot(const PlotSpec& spec);

/// Labeled vertical bars, one per category.
struct Bar {
    std::string label;
    double value = 0.0;
};

struct BarChartSpec {
    std::string title;
    std::string y_label;
    int width = 720;
    int height = 420;
    std::vector<Bar> bars;
};

std::string render_bar_chart(const BarChartSpec& spec);

} // namespace vclass
