#pragma once

#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>
#include <vector>

namespace asgard {

// Minimal self-contained SVG line plot on log-log axes: one band + mean line
// per series. Values are clamped below at floor_y so zero residuals stay
// plottable.
struct SvgSeries {
    std::string label;
    std::vector<double> mean, lo, hi;  // indexed by iteration, starting at k = 0
};

class SvgPlot {
public:
    SvgPlot(std::string title, std::string x_label, std::string y_label)
        : title_(std::move(title)), x_label_(std::move(x_label)), y_label_(std::move(y_label)) {}

    void add(SvgSeries s) { series_.push_back(std::move(s)); }

    void render(std::ostream& out) const {
        const double w = 880, h = 560;
        const double ml = 70, mr = 230, mt = 40, mb = 55;
        const double floor_y = 1e-16;

        double x_lo = 1.0, x_hi = 1.0, y_lo = kBig, y_hi = -kBig;
        for (const auto& s : series_) {
            x_hi = std::max(x_hi, static_cast<double>(s.mean.size() - 1));
            for (std::size_t i = 1; i < s.mean.size(); ++i) {
                for (double v : {s.mean[i], s.lo[i], s.hi[i]}) {
                    v = std::max(v, floor_y);
                    y_lo = std::min(y_lo, v);
                    y_hi = std::max(y_hi, v);
                }
            }
        }
        if (y_lo >= y_hi) {
            y_lo = 1e-8;
            y_hi = 1.0;
        }
        const double lx0 = std::log10(x_lo), lx1 = std::log10(std::max(x_hi, 10.0));
        const double ly0 = std::log10(y_lo), ly1 = std::log10(y_hi) + 0.2;

        auto px = [&](double k) {
            return ml + (std::log10(std::max(k, 1.0)) - lx0) / (lx1 - lx0) * (w - ml - mr);
        };
        auto py = [&](double v) {
            v = std::max(v, floor_y);
            return h - mb - (std::log10(v) - ly0) / (ly1 - ly0) * (h - mt - mb);
        };

        out << "<svg xmlns='http://www.w3.org/2000/svg' width='" << w << "' height='" << h
            << "' font-family='sans-serif' font-size='12'>\n";
        out << "<rect width='100%' height='100%' fill='white'/>\n";
        out << "<text x='" << (ml + (w - ml - mr) / 2) << "' y='22' text-anchor='middle' "
            << "font-size='15'>" << title_ << "</text>\n";

        // Axes and decade grid lines.
        out << "<rect x='" << ml << "' y='" << mt << "' width='" << (w - ml - mr) << "' height='"
            << (h - mt - mb) << "' fill='none' stroke='black'/>\n";
        for (int e = static_cast<int>(std::ceil(lx0)); e <= static_cast<int>(std::floor(lx1));
             ++e) {
            const double x = px(std::pow(10.0, e));
            out << "<line x1='" << x << "' y1='" << mt << "' x2='" << x << "' y2='" << (h - mb)
                << "' stroke='#dddddd'/>\n";
            out << "<text x='" << x << "' y='" << (h - mb + 18)
                << "' text-anchor='middle'>1e" << e << "</text>\n";
        }
        for (int e = static_cast<int>(std::ceil(ly0)); e <= static_cast<int>(std::floor(ly1));
             ++e) {
            const double y = py(std::pow(10.0, e));
            out << "<line x1='" << ml << "' y1='" << y << "' x2='" << (w - mr) << "' y2='" << y
                << "' stroke='#dddddd'/>\n";
            out << "<text x='" << (ml - 8) << "' y='" << (y + 4)
                << "' text-anchor='end'>1e" << e << "</text>\n";
        }
        out << "<text x='" << (ml + (w - ml - mr) / 2) << "' y='" << (h - 12)
            << "' text-anchor='middle'>" << x_label_ << "</text>\n";
        out << "<text x='18' y='" << (mt + (h - mt - mb) / 2)
            << "' text-anchor='middle' transform='rotate(-90 18 " << (mt + (h - mt - mb) / 2)
            << ")'>" << y_label_ << "</text>\n";

        int idx = 0;
        for (const auto& s : series_) {
            const std::string color = palette(idx);
            // Band polygon: hi forward, lo backward.
            out << "<polygon fill='" << color << "' fill-opacity='0.15' stroke='none' points='";
            for (std::size_t i = 1; i < s.hi.size(); ++i) {
                out << px(static_cast<double>(i)) << ',' << py(s.hi[i]) << ' ';
            }
            for (std::size_t i = s.lo.size(); i-- > 1;) {
                out << px(static_cast<double>(i)) << ',' << py(s.lo[i]) << ' ';
            }
            out << "'/>\n";
            out << "<polyline fill='none' stroke='" << color << "' stroke-width='1.6' points='";
            for (std::size_t i = 1; i < s.mean.size(); ++i) {
                out << px(static_cast<double>(i)) << ',' << py(s.mean[i]) << ' ';
            }
            out << "'/>\n";
            const double ly = mt + 18.0 * idx + 10;
            out << "<line x1='" << (w - mr + 12) << "' y1='" << ly << "' x2='" << (w - mr + 38)
                << "' y2='" << ly << "' stroke='" << color << "' stroke-width='2'/>\n";
            out << "<text x='" << (w - mr + 44) << "' y='" << (ly + 4) << "'>" << s.label
                << "</text>\n";
            ++idx;
        }
        out << "</svg>\n";
    }

private:
    static constexpr double kBig = 1e300;

    static std::string palette(int i) {
        static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                       "#9467bd", "#8c564b", "#17becf", "#7f7f7f",
                                       "#bcbd22", "#e377c2"};
        return colors[i % 10];
    }

    std::string title_, x_label_, y_label_;
    std::vector<SvgSeries> series_;
};

}  // namespace asgard
