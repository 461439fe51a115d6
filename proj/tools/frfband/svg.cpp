#include "frfband/svg.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

#include "frfbands/errors.hpp"

namespace frfband_io {

namespace {

constexpr double kWidth = 800.0;
constexpr double kHeight = 420.0;
constexpr double kMargin = 50.0;

struct Mapper {
    double x0, x1, y0, y1;
    double sx() const { return (kWidth - 2 * kMargin) / (x1 - x0); }
    double sy() const { return (kHeight - 2 * kMargin) / (y1 - y0); }
    double mx(double x) const { return kMargin + (x - x0) * sx(); }
    double my(double y) const { return kHeight - kMargin - (y - y0) * sy(); }
};

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

void polyline(std::ostringstream& out, const Mapper& map, const std::vector<double>& xs,
              const std::vector<double>& ys, const char* style) {
    out << "  <polyline fill=\"none\" " << style << " points=\"";
    for (std::size_t i = 0; i < xs.size(); ++i) {
        out << fmt(map.mx(xs[i])) << ',' << fmt(map.my(ys[i])) << ' ';
    }
    out << "\"/>\n";
}

void axes(std::ostringstream& out, const Mapper& map, const char* xlabel, const char* ylabel) {
    out << "  <rect x=\"" << kMargin << "\" y=\"" << kMargin << "\" width=\""
        << kWidth - 2 * kMargin << "\" height=\"" << kHeight - 2 * kMargin
        << "\" fill=\"none\" stroke=\"#444\"/>\n";
    out << "  <text x=\"" << kWidth / 2 << "\" y=\"" << kHeight - 12
        << "\" text-anchor=\"middle\" font-size=\"13\">" << xlabel << "</text>\n";
    out << "  <text x=\"14\" y=\"" << kHeight / 2
        << "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 14 "
        << kHeight / 2 << ")\">" << ylabel << "</text>\n";
    for (int i = 0; i <= 4; ++i) {
        const double fx = map.x0 + (map.x1 - map.x0) * i / 4.0;
        const double fy = map.y0 + (map.y1 - map.y0) * i / 4.0;
        out << "  <text x=\"" << fmt(map.mx(fx)) << "\" y=\"" << kHeight - kMargin + 16
            << "\" text-anchor=\"middle\" font-size=\"11\">" << fmt(fx) << "</text>\n";
        out << "  <text x=\"" << kMargin - 6 << "\" y=\"" << fmt(map.my(fy) + 4)
            << "\" text-anchor=\"end\" font-size=\"11\">" << fmt(fy) << "</text>\n";
    }
}

std::string document(const std::string& body) {
    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
        << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n"
        << "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
        << body << "</svg>\n";
    return out.str();
}

} // namespace

std::string band_svg(const frfbands::BandEstimate& band,
                     const std::vector<std::vector<double>>& overlays) {
    const std::size_t n = band.size();
    if (n == 0) throw frfbands::ValidationError("empty band");
    std::vector<double> time(n);
    for (std::size_t j = 0; j < n; ++j) time[j] = static_cast<double>(j) / band.sample_rate();

    double lo = 0.0, hi = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        lo = std::min(lo, band.lower()[j]);
        hi = std::max(hi, band.upper()[j]);
    }
    for (const auto& o : overlays) {
        for (double v : o) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    }
    if (hi == lo) hi = lo + 1.0;
    const double pad = 0.05 * (hi - lo);
    const Mapper map{time.front(), time.back(), lo - pad, hi + pad};

    std::ostringstream body;
    // shaded band as a closed polygon: upper forward, lower backward
    body << "  <polygon fill=\"#9ecae1\" fill-opacity=\"0.45\" stroke=\"none\" points=\"";
    for (std::size_t j = 0; j < n; ++j) {
        body << fmt(map.mx(time[j])) << ',' << fmt(map.my(band.upper()[j])) << ' ';
    }
    for (std::size_t j = n; j-- > 0;) {
        body << fmt(map.mx(time[j])) << ',' << fmt(map.my(band.lower()[j])) << ' ';
    }
    body << "\"/>\n";

    for (const auto& o : overlays) {
        polyline(body, map, time, o, "stroke=\"#bbbbbb\" stroke-width=\"1\"");
    }
    polyline(body, map, time, band.avg(), "stroke=\"#000000\" stroke-width=\"2\"");
    polyline(body, map, time, band.lower(), "stroke=\"#3182bd\" stroke-width=\"1.5\" stroke-dasharray=\"6 3\"");
    polyline(body, map, time, band.upper(), "stroke=\"#3182bd\" stroke-width=\"1.5\" stroke-dasharray=\"6 3\"");

    // zero reference
    if (map.y0 < 0.0 && map.y1 > 0.0) {
        body << "  <line x1=\"" << kMargin << "\" x2=\"" << kWidth - kMargin << "\" y1=\""
             << fmt(map.my(0.0)) << "\" y2=\"" << fmt(map.my(0.0))
             << "\" stroke=\"#d62728\" stroke-width=\"1\"/>\n";
    }
    axes(body, map, "time [s]", "amplitude");
    return document(body.str());
}

std::string histogram_svg(const std::vector<double>& sorted_values, double alpha,
                          double constant) {
    if (sorted_values.empty()) throw frfbands::ValidationError("empty histogram");
    const std::size_t n = sorted_values.size();
    std::vector<double> xs(n), ys(n);
    for (std::size_t i = 0; i < n; ++i) {
        xs[i] = sorted_values[i];
        ys[i] = static_cast<double>(i + 1) / static_cast<double>(n);
    }
    double xmax = xs.back();
    if (xmax <= xs.front()) xmax = xs.front() + 1.0;
    const Mapper map{xs.front(), xmax, 0.0, 1.0};

    std::ostringstream body;
    polyline(body, map, xs, ys, "stroke=\"#333333\" stroke-width=\"1.5\"");
    const double level = alpha / 100.0;
    body << "  <line x1=\"" << kMargin << "\" x2=\"" << kWidth - kMargin << "\" y1=\""
         << fmt(map.my(level)) << "\" y2=\"" << fmt(map.my(level))
         << "\" stroke=\"#d62728\" stroke-dasharray=\"4 3\"/>\n";
    body << "  <line x1=\"" << fmt(map.mx(constant)) << "\" x2=\"" << fmt(map.mx(constant))
         << "\" y1=\"" << kMargin << "\" y2=\"" << kHeight - kMargin
         << "\" stroke=\"#2ca02c\" stroke-dasharray=\"4 3\"/>\n";
    body << "  <text x=\"" << fmt(map.mx(constant) + 4) << "\" y=\"" << kMargin + 14
         << "\" font-size=\"12\">C = " << fmt(constant) << "</text>\n";
    axes(body, map, "statistic", "cumulative fraction");
    return document(body.str());
}

std::string band_csv(const frfbands::BandEstimate& band) {
    std::ostringstream out;
    out << "time,avg,lower,upper\n";
    for (std::size_t j = 0; j < band.size(); ++j) {
        out << (static_cast<double>(j) / band.sample_rate()) << ',' << band.avg()[j] << ','
            << band.lower()[j] << ',' << band.upper()[j] << "\n";
    }
    return out.str();
}

std::string histogram_csv(const std::vector<double>& sorted_values) {
    std::ostringstream out;
    out << "value,cumulative_fraction\n";
    const double n = static_cast<double>(sorted_values.size());
    for (std::size_t i = 0; i < sorted_values.size(); ++i) {
        out << sorted_values[i] << ',' << (static_cast<double>(i + 1) / n) << "\n";
    }
    return out.str();
}

} // namespace frfband_io
