#include "vclass/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace vclass {

namespace {

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                    "#9467bd", "#8c564b"};

struct Range {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();

    void include(double v) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    void pad() {
        if (lo > hi) {
            lo = 0.0;
            hi = 1.0;
        }
        if (lo == hi) {
            lo -= 1.0;
            hi += 1.0;
        }
    }
};

std::string num(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

} // namespace

std::string render_line_plot(const PlotSpec& spec) {
    const double ml = 64, mr = 18, mt = 34, mb = 46; // margins
    const double pw = spec.width - ml - mr;
    const double ph = spec.height - mt - mb;

    Range rx, ry;
    for (const PlotSeries& s : spec.series) {
        for (double v : s.x) rx.include(v);
        for (double v : s.y) ry.include(v);
    }
    rx.pad();
    ry.pad();

    auto px = [&](double x) { return ml + (x - rx.lo) / (rx.hi - rx.lo) * pw; };
    auto py = [&](double y) { return mt + ph - (y - ry.lo) / (ry.hi - ry.lo) * ph; };

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << spec.width << "\" height=\""
       << spec.height << "\" viewBox=\"0 0 " << spec.width << " " << spec.height << "\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<text x=\"" << spec.width / 2 << "\" y=\"20\" text-anchor=\"middle\" "
          "font-family=\"sans-serif\" font-size=\"14\">"
       << spec.title << "</text>\n";

    // axes and ticks
    os << "<g stroke=\"#333\" stroke-width=\"1\">\n";
    os << "<line x1=\"" << ml << "\" y1=\"" << mt + ph << "\" x2=\"" << ml + pw << "\" y2=\""
       << mt + ph << "\"/>\n";
    os << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\"" << mt + ph
       << "\"/>\n";
    os << "</g>\n";
    os << "<g font-family=\"sans-serif\" font-size=\"10\" fill=\"#333\">\n";
    for (int i = 0; i <= 5; ++i) {
        const double fx = rx.lo + (rx.hi - rx.lo) * i / 5.0;
        const double fy = ry.lo + (ry.hi - ry.lo) * i / 5.0;
        os << "<line x1=\"" << px(fx) << "\" y1=\"" << mt + ph << "\" x2=\"" << px(fx)
           << "\" y2=\"" << mt + ph + 4 << "\" stroke=\"#333\"/>\n";
        os << "<text x=\"" << px(fx) << "\" y=\"" << mt + ph + 16
           << "\" text-anchor=\"middle\">" << num(fx) << "</text>\n";
        os << "<line x1=\"" << ml - 4 << "\" y1=\"" << py(fy) << "\" x2=\"" << ml << "\" y2=\""
           << py(fy) << "\" stroke=\"#333\"/>\n";
        os << "<text x=\"" << ml - 7 << "\" y=\"" << py(fy) + 3
           << "\" text-anchor=\"end\">" << num(fy) << "</text>\n";
    }
    os << "<text x=\"" << ml + pw / 2 << "\" y=\"" << spec.height - 8
       << "\" text-anchor=\"middle\" font-size=\"12\">" << spec.x_label << "</text>\n";
    os << "<text x=\"14\" y=\"" << mt + ph / 2
       << "\" text-anchor=\"middle\" font-size=\"12\" transform=\"rotate(-90 14 "
       << mt + ph / 2 << ")\">" << spec.y_label << "</text>\n";
    os << "</g>\n";

    for (std::size_t s = 0; s < spec.series.size(); ++s) {
        const PlotSeries& series = spec.series[s];
        const char* color = kPalette[s % (sizeof kPalette / sizeof kPalette[0])];
        os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
        const std::size_t n = std::min(series.x.size(), series.y.size());
        for (std::size_t i = 0; i < n; ++i) {
            if (i) os << ' ';
            os << num(px(series.x[i])) << ',' << num(py(series.y[i]));
        }
        os << "\"/>\n";
        if (!series.label.empty()) {
            const double lx = ml + pw - 150, ly = mt + 14 + 16 * static_cast<double>(s);
            os << "<line x1=\"" << lx << "\" y1=\"" << ly - 4 << "\" x2=\"" << lx + 22
               << "\" y2=\"" << ly - 4 << "\" stroke=\"" << color
               << "\" stroke-width=\"2\"/>\n";
            os << "<text x=\"" << lx + 28 << "\" y=\"" << ly
               << "\" font-family=\"sans-serif\" font-size=\"11\">" << series.label
               << "</text>\n";
        }
    }
    os << "</svg>\n";
    return os.str();
}

std::string render_bar_chart(const BarChartSpec& spec) {
    const double ml = 64, mr = 18, mt = 34, mb = 64;
    const double pw = spec.width - ml - mr;
    const double ph = spec.height - mt - mb;

    double top = 0.0;
    for (const Bar& b : spec.bars) top = std::max(top, b.value);
    if (top <= 0.0) top = 1.0;
    top *= 1.1; // headroom

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << spec.width << "\" height=\""
       << spec.height << "\" viewBox=\"0 0 " << spec.width << " " << spec.height << "\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<text x=\"" << spec.width / 2 << "\" y=\"20\" text-anchor=\"middle\" "
          "font-family=\"sans-serif\" font-size=\"14\">"
       << spec.title << "</text>\n";
    os << "<g stroke=\"#333\" stroke-width=\"1\">\n";
    os << "<line x1=\"" << ml << "\" y1=\"" << mt + ph << "\" x2=\"" << ml + pw << "\" y2=\""
       << mt + ph << "\"/>\n";
    os << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\"" << mt + ph
       << "\"/>\n";
    os << "</g>\n";
    os << "<g font-family=\"sans-serif\" font-size=\"10\" fill=\"#333\">\n";
    for (int i = 0; i <= 5; ++i) {
        const double v = top * i / 5.0;
        const double y = mt + ph - v / top * ph;
        os << "<line x1=\"" << ml - 4 << "\" y1=\"" << y << "\" x2=\"" << ml << "\" y2=\"" << y
           << "\" stroke=\"#333\"/>\n";
        os << "<text x=\"" << ml - 7 << "\" y=\"" << y + 3 << "\" text-anchor=\"end\">"
           << num(v) << "</text>\n";
    }
    os << "<text x=\"14\" y=\"" << mt + ph / 2
       << "\" text-anchor=\"middle\" font-size=\"12\" transform=\"rotate(-90 14 "
       << mt + ph / 2 << ")\">" << spec.y_label << "</text>\n";
    os << "</g>\n";

    const double slot = pw / std::max<std::size_t>(spec.bars.size(), 1);
    for (std::size_t i = 0; i < spec.bars.size(); ++i) {
        const Bar& b = spec.bars[i];
        const double h = b.value / top * ph;
        const double x = ml + slot * static_cast<double>(i) + slot * 0.15;
        const char* color = kPalette[i % (sizeof kPalette / sizeof kPalette[0])];
        os << "<rect x=\"" << num(x) << "\" y=\"" << num(mt + ph - h) << "\" width=\""
           << num(slot * 0.7) << "\" height=\"" << num(h) << "\" fill=\"" << color
           << "\" fill-opacity=\"0.85\"/>\n";
        os << "<text x=\"" << num(x + slot * 0.35) << "\" y=\"" << mt + ph + 14
           << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"10\" "
              "transform=\"rotate(18 "
           << num(x + slot * 0.35) << " " << mt + ph + 14 << ")\">" << b.label << "</text>\n";
        os << "<text x=\"" << num(x + slot * 0.35) << "\" y=\"" << num(mt + ph - h - 4)
           << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"10\">"
           << num(b.value) << "</text>\n";
    }
    os << "</svg>\n";
    return os.str();
}

} // namespace vclass
