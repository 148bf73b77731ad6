#include "meander/svg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "meander/numeric.hpp"

namespace meander {

namespace {

constexpr int kWidth = 640, kHeight = 480;
constexpr int kLeft = 70, kRight = 20, kTop = 40, kBottom = 50;

const char* kpalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

struct Mapper {
    double x0, x1, y0, y1;
    bool logx, logy;
    double tx(double x) const {
        double v = logx ? std::log10(x) : x;
        return kLeft + (v - x0) / (x1 - x0) * (kWidth - kLeft - kRight);
    }
    double ty(double y) const {
        double v = logy ? std::log10(y) : y;
        return kHeight - kBottom - (v - y0) / (y1 - y0) * (kHeight - kTop - kBottom);
    }
};

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

void open_svg(std::ostringstream& s, const std::string& title) {
    s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
      << kHeight << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<text x=\"" << kWidth / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\" "
      << "font-family=\"sans-serif\">" << title << "</text>\n";
}

void axes(std::ostringstream& s, const Mapper& m, const std::string& xl, const std::string& yl) {
    s << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << kWidth - kLeft - kRight
      << "\" height=\"" << kHeight - kTop - kBottom
      << "\" fill=\"none\" stroke=\"#333\" stroke-width=\"1\"/>\n";
    s << "<text x=\"" << (kLeft + kWidth - kRight) / 2 << "\" y=\"" << kHeight - 12
      << "\" text-anchor=\"middle\" font-size=\"12\" font-family=\"sans-serif\">" << xl
      << "</text>\n";
    s << "<text x=\"16\" y=\"" << (kTop + kHeight - kBottom) / 2
      << "\" text-anchor=\"middle\" font-size=\"12\" font-family=\"sans-serif\" "
      << "transform=\"rotate(-90 16 " << (kTop + kHeight - kBottom) / 2 << ")\">" << yl
      << "</text>\n";
    // Decade ticks.
    auto tick_range = [](double a, double b) {
        std::vector<double> t;
        for (int e = int(std::floor(a)); e <= int(std::ceil(b)); ++e) t.push_back(double(e));
        return t;
    };
    if (m.logx)
        for (double e : tick_range(m.x0, m.x1)) {
            if (e < m.x0 - 1e-9 || e > m.x1 + 1e-9) continue;
            double px = m.tx(std::pow(10.0, e));
            s << "<line x1=\"" << px << "\" y1=\"" << kHeight - kBottom << "\" x2=\"" << px
              << "\" y2=\"" << kHeight - kBottom + 5 << "\" stroke=\"#333\"/>\n"
              << "<text x=\"" << px << "\" y=\"" << kHeight - kBottom + 18
              << "\" text-anchor=\"middle\" font-size=\"11\" font-family=\"sans-serif\">1e"
              << int(e) << "</text>\n";
        }
    if (m.logy)
        for (double e : tick_range(m.y0, m.y1)) {
            if (e < m.y0 - 1e-9 || e > m.y1 + 1e-9) continue;
            double py = m.ty(std::pow(10.0, e));
            s << "<line x1=\"" << kLeft - 5 << "\" y1=\"" << py << "\" x2=\"" << kLeft
              << "\" y2=\"" << py << "\" stroke=\"#333\"/>\n"
              << "<text x=\"" << kLeft - 8 << "\" y=\"" << py + 4
              << "\" text-anchor=\"end\" font-size=\"11\" font-family=\"sans-serif\">1e" << int(e)
              << "</text>\n";
        }
}

void series_paths(std::ostringstream& s, const Mapper& m, const std::vector<SvgSeries>& series) {
    int ci = 0;
    for (const auto& sr : series) {
        const char* color = kpalette[ci++ % 6];
        std::ostringstream pts;
        for (auto [x, y] : sr.points) pts << num(m.tx(x)) << "," << num(m.ty(y)) << " ";
        s << "<polyline points=\"" << pts.str() << "\" fill=\"none\" stroke=\"" << color
          << "\" stroke-width=\"1.5\"/>\n";
        for (auto [x, y] : sr.points)
            s << "<circle cx=\"" << num(m.tx(x)) << "\" cy=\"" << num(m.ty(y))
              << "\" r=\"3\" fill=\"" << color << "\"/>\n";
        s << "<text x=\"" << kWidth - kRight - 8 << "\" y=\"" << kTop + 16 + 15 * (ci - 1)
          << "\" text-anchor=\"end\" font-size=\"12\" font-family=\"sans-serif\" fill=\"" << color
          << "\">" << sr.label << "</text>\n";
    }
}

} // namespace

std::string render_loglog_svg(const std::string& title, const std::string& x_label,
                              const std::string& y_label, const std::vector<SvgSeries>& series,
                              bool guide_half_slope) {
    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (const auto& sr : series)
        for (auto [x, y] : sr.points) {
            xmin = std::min(xmin, x);
            xmax = std::max(xmax, x);
            ymin = std::min(ymin, y);
            ymax = std::max(ymax, y);
        }
    Mapper m{std::log10(xmin) - 0.1, std::log10(xmax) + 0.1, std::log10(ymin) - 0.2,
             std::log10(ymax) + 0.2, true, true};
    std::ostringstream s;
    open_svg(s, title);
    axes(s, m, x_label, y_label);
    if (guide_half_slope && !series.empty() && !series.front().points.empty()) {
        // Reference line with slope -1/2 anchored at the first point.
        auto [x0, y0] = series.front().points.front();
        double x1 = xmax, y1 = y0 * std::sqrt(x0 / x1);
        s << "<line x1=\"" << num(m.tx(x0)) << "\" y1=\"" << num(m.ty(y0)) << "\" x2=\""
          << num(m.tx(x1)) << "\" y2=\"" << num(m.ty(y1))
          << "\" stroke=\"#999\" stroke-dasharray=\"6,4\"/>\n"
          << "<text x=\"" << num(m.tx(x1) - 48) << "\" y=\"" << num(m.ty(y1) - 6)
          << "\" font-size=\"11\" font-family=\"sans-serif\" fill=\"#777\">slope -1/2</text>\n";
    }
    series_paths(s, m, series);
    s << "</svg>\n";
    return s.str();
}

std::string render_ratio_svg(const std::string& title, const std::string& x_label,
                             const std::string& y_label, const std::vector<SvgSeries>& series) {
    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (const auto& sr : series)
        for (auto [x, y] : sr.points) {
            xmin = std::min(xmin, x);
            xmax = std::max(xmax, x);
            ymin = std::min(ymin, y);
            ymax = std::max(ymax, y);
        }
    ymin = std::min(ymin, 0.95);
    ymax = std::max(ymax, 1.05);
    Mapper m{std::log10(xmin) - 0.1, std::log10(xmax) + 0.1, ymin - 0.05 * (ymax - ymin),
             ymax + 0.05 * (ymax - ymin), true, false};
    std::ostringstream s;
    open_svg(s, title);
    axes(s, m, x_label, y_label);
    s << "<line x1=\"" << kLeft << "\" y1=\"" << num(m.ty(1.0)) << "\" x2=\"" << kWidth - kRight
      << "\" y2=\"" << num(m.ty(1.0)) << "\" stroke=\"#999\" stroke-dasharray=\"6,4\"/>\n";
    series_paths(s, m, series);
    s << "</svg>\n";
    return s.str();
}

} // namespace meander
