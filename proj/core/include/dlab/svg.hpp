#ifndef DLAB_SVG_HPP
#define DLAB_SVG_HPP

#include <filesystem>
#include <string>
#include <vector>

namespace dlab {

struct PlotSeries {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
};

struct PlotOptions {
    std::string title;
    std::string xlabel;
    std::string ylabel;
    bool logx = false;
    bool logy = false;
    int width = 640;
    int height = 420;
};

// Self-contained SVG line chart (axes, ticks, legend, no external assets).
// Log axes drop non-positive samples. Throws io_error if the file cannot be
// written or no finite samples remain.
void write_svg_chart(const std::vector<PlotSeries>& series,
                     const PlotOptions& opt,
                     const std::filesystem::path& path);

} // namespace dlab

#endif
