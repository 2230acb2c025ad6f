#include "dauction/plots.hpp"

#include "dauction/errors.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace dauction::plots {

namespace {

constexpr double kWidth = 960;
constexpr double kHeight = 520;
constexpr double kLeft = 70;
constexpr double kRight = 170;
constexpr double kTop = 50;
constexpr double kBottom = 70;

const char* const kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                                "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

std::string colour(std::size_t i) { return kPalette[i % std::size(kPalette)]; }

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '&': out += "&amp;"; break;
        case '"': out += "&quot;"; break;
        default: out += c;
        }
    }
    return out;
}

std::string fmt(double v) {
    std::ostringstream os;
    os << std::setprecision(6) << v;
    return os.str();
}

/// Rounds the axis maximum up to 1, 2 or 5 times a power of ten.
double nice_ceiling(double v) {
    if (!(v > 0)) return 1.0;
    const double mag = std::pow(10.0, std::floor(std::log10(v)));
    for (double step : {1.0, 2.0, 5.0, 10.0}) {
        if (v <= step * mag) return step * mag;
    }
    return 10.0 * mag;
}

struct Frame {
    double y_max;
    double plot_w() const { return kWidth - kLeft - kRight; }
    double plot_h() const { return kHeight - kTop - kBottom; }
    double y(double v) const { return kTop + plot_h() * (1.0 - v / y_max); }
};

void open_svg(std::ostream& os, const std::string& title, const std::string& y_label, const Frame& f) {
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
       << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<text x=\"" << kWidth / 2 << "\" y=\"28\" text-anchor=\"middle\" font-size=\"16\">" << escape(title)
       << "</text>\n";
    for (int k = 0; k <= 5; ++k) {
        const double v = f.y_max * k / 5.0;
        const double y = f.y(v);
        os << "<line x1=\"" << kLeft << "\" y1=\"" << y << "\" x2=\"" << kLeft + f.plot_w() << "\" y2=\"" << y
           << "\" stroke=\"#ddd\"/>\n";
        os << "<text x=\"" << kLeft - 6 << "\" y=\"" << y + 4 << "\" text-anchor=\"end\">" << fmt(v) << "</text>\n";
    }
    os << "<line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft << "\" y2=\"" << kTop + f.plot_h()
       << "\" stroke=\"black\"/>\n";
    os << "<line x1=\"" << kLeft << "\" y1=\"" << kTop + f.plot_h() << "\" x2=\"" << kLeft + f.plot_w() << "\" y2=\""
       << kTop + f.plot_h() << "\" stroke=\"black\"/>\n";
    os << "<text transform=\"translate(18," << kTop + f.plot_h() / 2 << ") rotate(-90)\" text-anchor=\"middle\">"
       << escape(y_label) << "</text>\n";
}

void legend(std::ostream& os, const std::vector<Series>& series) {
    const double x = kWidth - kRight + 20;
    for (std::size_t i = 0; i < series.size(); ++i) {
        const double y = kTop + 10 + 20.0 * static_cast<double>(i);
        os << "<rect x=\"" << x << "\" y=\"" << y - 9 << "\" width=\"12\" height=\"12\" fill=\"" << colour(i)
           << "\"/>\n";
        os << "<text x=\"" << x + 18 << "\" y=\"" << y + 1 << "\">" << escape(series[i].name) << "</text>\n";
    }
}

double series_max(const std::vector<Series>& series) {
    double m = 0.0;
    for (const auto& s : series) {
        for (double v : s.values) {
            if (std::isfinite(v)) m = std::max(m, v);
        }
    }
    return nice_ceiling(m);
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw AuctionError("cannot write plot " + path.string());
    out << content;
    if (!out) throw AuctionError("failed writing plot " + path.string());
}

} // namespace

void write_bar_chart(const std::filesystem::path& path, const std::string& title, const std::string& y_label,
                     const std::vector<std::string>& categories, const std::vector<Series>& series) {
    const Frame f{series_max(series)};
    std::ostringstream os;
    open_svg(os, title, y_label, f);

    const double group_w = f.plot_w() / static_cast<double>(std::max<std::size_t>(categories.size(), 1));
    const double bar_w = group_w * 0.8 / static_cast<double>(std::max<std::size_t>(series.size(), 1));
    for (std::size_t g = 0; g < categories.size(); ++g) {
        const double gx = kLeft + group_w * static_cast<double>(g);
        for (std::size_t s = 0; s < series.size(); ++s) {
            const double v = g < series[s].values.size() ? series[s].values[g] : 0.0;
            if (!std::isfinite(v)) continue;
            const double x = gx + group_w * 0.1 + bar_w * static_cast<double>(s);
            os << "<rect x=\"" << x << "\" y=\"" << f.y(v) << "\" width=\"" << bar_w << "\" height=\""
               << f.y(0) - f.y(v) << "\" fill=\"" << colour(s) << "\"><title>" << escape(series[s].name) << " "
               << escape(categories[g]) << ": " << fmt(v) << "</title></rect>\n";
        }
        os << "<text x=\"" << gx + group_w / 2 << "\" y=\"" << kTop + f.plot_h() + 20
           << "\" text-anchor=\"middle\">" << escape(categories[g]) << "</text>\n";
    }
    legend(os, series);
    os << "</svg>\n";
    write_file(path, os.str());
}

void write_line_chart(const std::filesystem::path& path, const std::string& title, const std::string& x_label,
                      const std::string& y_label, const std::vector<double>& xs, const std::vector<Series>& series) {
    const Frame f{series_max(series)};
    std::ostringstream os;
    open_svg(os, title, y_label, f);

    const double x_min = xs.empty() ? 0.0 : *std::min_element(xs.begin(), xs.end());
    const double x_max = xs.empty() ? 1.0 : *std::max_element(xs.begin(), xs.end());
    const double span = x_max > x_min ? x_max - x_min : 1.0;
    auto px = [&](double x) { return kLeft + f.plot_w() * (x - x_min) / span; };

    for (double x : xs) {
        os << "<text x=\"" << px(x) << "\" y=\"" << kTop + f.plot_h() + 20 << "\" text-anchor=\"middle\">" << fmt(x)
           << "</text>\n";
    }
    os << "<text x=\"" << kLeft + f.plot_w() / 2 << "\" y=\"" << kHeight - 20 << "\" text-anchor=\"middle\">"
       << escape(x_label) << "</text>\n";

    for (std::size_t s = 0; s < series.size(); ++s) {
        std::ostringstream points;
        for (std::size_t i = 0; i < xs.size() && i < series[s].values.size(); ++i) {
            const double v = series[s].values[i];
            if (!std::isfinite(v)) continue;
            points << px(xs[i]) << ',' << f.y(v) << ' ';
            os << "<circle cx=\"" << px(xs[i]) << "\" cy=\"" << f.y(v) << "\" r=\"3\" fill=\"" << colour(s)
               << "\"/>\n";
        }
        os << "<polyline fill=\"none\" stroke-width=\"2\" stroke=\"" << colour(s) << "\" points=\"" << points.str()
           << "\"/>\n";
    }
    legend(os, series);
    os << "</svg>\n";
    write_file(path, os.str());
}

} // namespace dauction::plots
