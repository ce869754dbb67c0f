#include "tayrem/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace tayrem {

namespace {

constexpr std::size_t kMaxPointsPerSeries = 2048;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};
constexpr std::size_t kPaletteSize = sizeof(kPalette) / sizeof(kPalette[0]);

std::string fmt(double v, const char* spec = "%.2f") {
    char buf[48];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

std::string escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char ch : s) {
        switch (ch) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            default: out += ch;
        }
    }
    return out;
}

std::vector<double> nice_ticks(double lo, double hi, int target) {
    std::vector<double> ticks;
    double span = hi - lo;
    if (!(span > 0)) return ticks;
    double raw = span / target;
    double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double norm = raw / mag;
    double step = (norm < 1.5 ? 1.0 : norm < 3.5 ? 2.0 : norm < 7.5 ? 5.0 : 10.0) * mag;
    double first = std::ceil(lo / step) * step;
    for (double v = first; v <= hi + step * 1e-9; v += step) {
        if (std::abs(v) < step * 1e-9) v = 0.0;
        ticks.push_back(v);
    }
    return ticks;
}

}  // namespace

std::string render_svg(const std::string& title, const std::string& x_label,
                       const std::string& y_label, const std::vector<PlotSeries>& series,
                       int width, int height) {
    double xlo = std::numeric_limits<double>::infinity(), xhi = -xlo;
    double ylo = xlo, yhi = -xlo;
    for (const auto& s : series) {
        for (std::size_t i = 0; i < s.xs.size() && i < s.ys.size(); ++i) {
            if (!std::isfinite(s.xs[i]) || !std::isfinite(s.ys[i])) continue;
            xlo = std::min(xlo, s.xs[i]);
            xhi = std::max(xhi, s.xs[i]);
            ylo = std::min(ylo, s.ys[i]);
            yhi = std::max(yhi, s.ys[i]);
        }
    }
    if (!(xlo < xhi)) {
        double c = std::isfinite(xlo) ? xlo : 0.0;
        double pad = std::max(1.0, std::abs(c) * 0.1);
        xlo = c - pad;
        xhi = c + pad;
    }
    if (!(ylo < yhi)) {
        double c = std::isfinite(ylo) ? ylo : 0.0;
        double pad = std::max(1.0, std::abs(c) * 0.1);
        ylo = c - pad;
        yhi = c + pad;
    } else {
        double pad = (yhi - ylo) * 0.05;
        ylo -= pad;
        yhi += pad;
    }

    const double ml = 78, mr = 24, mt = 44, mb = 52;
    const double pw = width - ml - mr, ph = height - mt - mb;
    auto sx = [&](double x) { return ml + (x - xlo) / (xhi - xlo) * pw; };
    auto sy = [&](double y) { return mt + (yhi - y) / (yhi - ylo) * ph; };

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
    out << "<rect width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";
    out << "<text x=\"" << width / 2 << "\" y=\"24\" text-anchor=\"middle\" "
        << "font-family=\"sans-serif\" font-size=\"16\">" << escape(title) << "</text>\n";

    for (double t : nice_ticks(xlo, xhi, 8)) {
        double px = sx(t);
        out << "<line x1=\"" << fmt(px) << "\" y1=\"" << fmt(mt) << "\" x2=\"" << fmt(px)
            << "\" y2=\"" << fmt(mt + ph) << "\" stroke=\"#dddddd\"/>\n";
        out << "<text x=\"" << fmt(px) << "\" y=\"" << fmt(mt + ph + 18)
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
            << fmt(t, "%.6g") << "</text>\n";
    }
    for (double t : nice_ticks(ylo, yhi, 6)) {
        double py = sy(t);
        out << "<line x1=\"" << fmt(ml) << "\" y1=\"" << fmt(py) << "\" x2=\"" << fmt(ml + pw)
            << "\" y2=\"" << fmt(py) << "\" stroke=\"#dddddd\"/>\n";
        out << "<text x=\"" << fmt(ml - 6) << "\" y=\"" << fmt(py + 4)
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
            << fmt(t, "%.6g") << "</text>\n";
    }
    out << "<rect x=\"" << fmt(ml) << "\" y=\"" << fmt(mt) << "\" width=\"" << fmt(pw)
        << "\" height=\"" << fmt(ph) << "\" fill=\"none\" stroke=\"#333333\"/>\n";
    out << "<text x=\"" << fmt(ml + pw / 2) << "\" y=\"" << fmt(height - 10.0)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">"
        << escape(x_label) << "</text>\n";
    out << "<text x=\"16\" y=\"" << fmt(mt + ph / 2)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
        << "transform=\"rotate(-90 16 " << fmt(mt + ph / 2) << ")\">" << escape(y_label)
        << "</text>\n";

    for (std::size_t si = 0; si < series.size(); ++si) {
        const auto& s = series[si];
        std::size_t n = std::min(s.xs.size(), s.ys.size());
        if (n == 0) continue;
        std::size_t stride = (n + kMaxPointsPerSeries - 1) / kMaxPointsPerSeries;
        out << "<polyline fill=\"none\" stroke=\"" << kPalette[si % kPaletteSize]
            << "\" stroke-width=\"1.5\" points=\"";
        bool first = true;
        for (std::size_t i = 0; i < n; i += stride) {
            std::size_t j = std::min(i, n - 1);
            if (!std::isfinite(s.xs[j]) || !std::isfinite(s.ys[j])) continue;
            if (!first) out << ' ';
            out << fmt(sx(s.xs[j])) << ',' << fmt(sy(s.ys[j]));
            first = false;
        }
        if ((n - 1) % stride != 0 && std::isfinite(s.xs[n - 1]) && std::isfinite(s.ys[n - 1]))
            out << ' ' << fmt(sx(s.xs[n - 1])) << ',' << fmt(sy(s.ys[n - 1]));
        out << "\"/>\n";
    }

    double ly = mt + 14;
    for (std::size_t si = 0; si < series.size(); ++si) {
        double lx = ml + pw - 170;
        out << "<line x1=\"" << fmt(lx) << "\" y1=\"" << fmt(ly - 4) << "\" x2=\"" << fmt(lx + 26)
            << "\" y2=\"" << fmt(ly - 4) << "\" stroke=\"" << kPalette[si % kPaletteSize]
            << "\" stroke-width=\"2\"/>\n";
        out << "<text x=\"" << fmt(lx + 32) << "\" y=\"" << fmt(ly)
            << "\" font-family=\"sans-serif\" font-size=\"12\">" << escape(series[si].name)
            << "</text>\n";
        ly += 18;
    }

    out << "</svg>\n";
    return out.str();
}

}  // namespace tayrem
