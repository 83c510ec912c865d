#include "fkg/io/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

#include "fkg/errors.hpp"

namespace fkg::io {

namespace {

constexpr double kWidth = 720, kHeight = 480;
constexpr double kLeft = 70, kRight = 20, kTop = 40, kBottom = 50;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

struct Axis {
    double lo = 0, hi = 1;
    bool log = false;

    double map(double v, double pix_lo, double pix_hi) const {
        const double t = log ? (std::log10(v) - std::log10(lo)) / (std::log10(hi) - std::log10(lo))
                             : (v - lo) / (hi - lo);
        return pix_lo + t * (pix_hi - pix_lo);
    }

    std::vector<double> ticks() const {
        std::vector<double> t;
        if (log) {
            for (int e = static_cast<int>(std::floor(std::log10(lo)));
                 e <= static_cast<int>(std::ceil(std::log10(hi))); ++e) {
                const double v = std::pow(10.0, e);
                if (v >= lo * (1 - 1e-9) && v <= hi * (1 + 1e-9)) t.push_back(v);
            }
        } else {
            const double span = hi - lo;
            const double step = std::pow(10.0, std::floor(std::log10(span / 4)));
            const double mult = span / step > 20 ? 5.0 : (span / step > 8 ? 2.0 : 1.0);
            for (double v = std::ceil(lo / (step * mult)) * step * mult; v <= hi + 1e-12 * span;
                 v += step * mult)
                t.push_back(v);
        }
        return t;
    }
};

} // namespace

void write_svg(const std::string& path, const SvgPlot& plot, const ConfigEcho& config) {
    std::ofstream out(path);
    if (!out) throw invalid_config("svg: cannot open '" + path + "' for writing");

    Axis xa{std::numeric_limits<double>::max(), std::numeric_limits<double>::lowest(), plot.logx};
    Axis ya{std::numeric_limits<double>::max(), std::numeric_limits<double>::lowest(), plot.logy};
    for (const Series& s : plot.series)
        for (size_t i = 0; i < s.x.size(); ++i) {
            if (plot.logx && !(s.x[i] > 0)) continue;
            if (plot.logy && !(s.y[i] > 0)) continue;
            xa.lo = std::min(xa.lo, s.x[i]);
            xa.hi = std::max(xa.hi, s.x[i]);
            ya.lo = std::min(ya.lo, s.y[i]);
            ya.hi = std::max(ya.hi, s.y[i]);
        }
    if (!(xa.lo < xa.hi)) xa.hi = xa.lo + 1;
    if (!(ya.lo < ya.hi)) ya.hi = ya.lo + (ya.lo == 0 ? 1 : std::abs(ya.lo) * 0.1);
    if (!plot.logy) {
        const double pad = 0.05 * (ya.hi - ya.lo);
        ya.lo -= pad;
        ya.hi += pad;
    }

    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out << "<!--\n";
    for (const auto& [k, v] : config) out << "  " << k << " = " << v << "\n";
    out << "-->\n";
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
        << kHeight << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    const double px0 = kLeft, px1 = kWidth - kRight, py0 = kHeight - kBottom, py1 = kTop;
    out << "<rect x=\"" << px0 << "\" y=\"" << py1 << "\" width=\"" << px1 - px0 << "\" height=\""
        << py0 - py1 << "\" fill=\"none\" stroke=\"black\"/>\n";
    out << "<text x=\"" << kWidth / 2 << "\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">"
        << plot.title << "</text>\n";
    out << "<text x=\"" << kWidth / 2 << "\" y=\"" << kHeight - 10
        << "\" text-anchor=\"middle\" font-size=\"12\">" << plot.xlabel << "</text>\n";
    out << "<text x=\"15\" y=\"" << kHeight / 2
        << "\" text-anchor=\"middle\" font-size=\"12\" transform=\"rotate(-90 15 " << kHeight / 2
        << ")\">" << plot.ylabel << "</text>\n";

    for (double tx : xa.ticks()) {
        const double px = xa.map(tx, px0, px1);
        out << "<line x1=\"" << num(px) << "\" y1=\"" << py0 << "\" x2=\"" << num(px) << "\" y2=\""
            << py0 + 4 << "\" stroke=\"black\"/>\n";
        out << "<text x=\"" << num(px) << "\" y=\"" << py0 + 16
            << "\" text-anchor=\"middle\" font-size=\"10\">" << num(tx) << "</text>\n";
    }
    for (double ty : ya.ticks()) {
        const double py = ya.map(ty, py0, py1);
        out << "<line x1=\"" << px0 - 4 << "\" y1=\"" << num(py) << "\" x2=\"" << px0 << "\" y2=\""
            << num(py) << "\" stroke=\"black\"/>\n";
        out << "<text x=\"" << px0 - 6 << "\" y=\"" << num(py + 3)
            << "\" text-anchor=\"end\" font-size=\"10\">" << num(ty) << "</text>\n";
    }

    int color = 0;
    for (const Series& s : plot.series) {
        out << "<polyline fill=\"none\" stroke=\"" << kPalette[color % 6]
            << "\" stroke-width=\"1.5\" points=\"";
        for (size_t i = 0; i < s.x.size(); ++i) {
            if (plot.logx && !(s.x[i] > 0)) continue;
            if (plot.logy && !(s.y[i] > 0)) continue;
            out << num(xa.map(s.x[i], px0, px1)) << ',' << num(ya.map(s.y[i], py0, py1)) << ' ';
        }
        out << "\"/>\n";
        if (!s.label.empty())
            out << "<text x=\"" << px1 - 8 << "\" y=\"" << py1 + 14 + 14 * color
                << "\" text-anchor=\"end\" font-size=\"11\" fill=\"" << kPalette[color % 6] << "\">"
                << s.label << "</text>\n";
        ++color;
    }
    out << "</svg>\n";
}

} // namespace fkg::io
