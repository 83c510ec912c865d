#ifndef FKG_IO_SVG_HPP
#define FKG_IO_SVG_HPP

#include <string>
#include <vector>

#include "fkg/io/csv.hpp" // ConfigEcho

namespace fkg::io {

struct Series {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
};

// Minimal self-contained scan plot: one polyline per series, optional log
// axes with decade ticks. No runtime dependencies.
struct SvgPlot {
    std::string title;
    std::string xlabel;
    std::string ylabel;
    bool logx = false;
    bool logy = false;
    std::vector<Series> series;
};

void write_svg(const std::string& path, const SvgPlot& plot, const ConfigEcho& config);

} // namespace fkg::io

#endif
