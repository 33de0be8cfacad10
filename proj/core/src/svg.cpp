#include "dlab/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

#include "dlab/errors.hpp"

namespace dlab {

namespace {

const char* kPalette[] = {"#1f6fb2", "#c2402a", "#2e8540", "#8154a1",
                          "#b58a00", "#3aa0a0"};

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '&') out += "&amp;";
        else if (c == '<') out += "&lt;";
        else if (c == '>') out += "&gt;";
        else out += c;
    }
    return out;
}

// tick positions: decades on log axes, "nice" steps otherwise
std::vector<double> ticks(double lo, double hi, bool log) {
    std::vector<double> t;
    if (log) {
        int d0 = int(std::floor(lo)), d1 = int(std::ceil(hi));
        int stride = std::max(1, (d1 - d0) / 6);
        for (int d = d0; d <= d1; d += stride) t.push_back(double(d));
        return t;
    }
    double span = hi - lo;
    if (span <= 0.0) span = std::abs(hi) > 0 ? std::abs(hi) : 1.0;
    double raw = span / 5.0;
    double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double step = mag;
    for (double m : {1.0, 2.0, 5.0, 10.0})
        if (m * mag >= raw) { step = m * mag; break; }
    double first = std::ceil(lo / step) * step;
    for (double v = first; v <= hi + 0.5 * step; v += step) t.push_back(v);
    return t;
}

} // namespace

void write_svg_chart(const std::vector<PlotSeries>& series,
                     const PlotOptions& opt,
                     const std::filesystem::path& path) {
    auto usable = [&](double x, double y) {
        if (!std::isfinite(x) || !std::isfinite(y)) return false;
        if (opt.logx && x <= 0.0) return false;
        if (opt.logy && y <= 0.0) return false;
        return true;
    };
    auto tx = [&](double v) { return opt.logx ? std::log10(v) : v; };
    auto ty = [&](double v) { return opt.logy ? std::log10(v) : v; };

    double xlo = std::numeric_limits<double>::infinity(), xhi = -xlo;
    double ylo = xlo, yhi = -xlo;
    for (const auto& s : series)
        for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i)
            if (usable(s.x[i], s.y[i])) {
                xlo = std::min(xlo, tx(s.x[i])); xhi = std::max(xhi, tx(s.x[i]));
                ylo = std::min(ylo, ty(s.y[i])); yhi = std::max(yhi, ty(s.y[i]));
            }
    if (!(xlo <= xhi))
        throw io_error("write_svg_chart: no plottable samples");
    if (xhi - xlo < 1e-12) { xlo -= 0.5; xhi += 0.5; }
    if (yhi - ylo < 1e-12) { ylo -= 0.5; yhi += 0.5; }
    double pad = 0.04;
    double xs = xhi - xlo, ys = yhi - ylo;
    xlo -= pad * xs; xhi += pad * xs;
    ylo -= pad * ys; yhi += pad * ys;

    const double ml = 64, mr = 16, mt = 32, mb = 44;
    const double W = opt.width, H = opt.height;
    auto px = [&](double v) { return ml + (v - xlo) / (xhi - xlo) * (W - ml - mr); };
    auto py = [&](double v) { return H - mb - (v - ylo) / (yhi - ylo) * (H - mt - mb); };

    std::ofstream out(path);
    if (!out) throw io_error("write_svg_chart: cannot open " + path.string());
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W
        << "\" height=\"" << H << "\" viewBox=\"0 0 " << W << " " << H
        << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
    out << "<rect width=\"" << W << "\" height=\"" << H << "\" fill=\"white\"/>\n";
    if (!opt.title.empty())
        out << "<text x=\"" << W / 2 << "\" y=\"18\" text-anchor=\"middle\" "
            << "font-size=\"13\">" << escape(opt.title) << "</text>\n";

    // frame
    out << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << W - ml - mr
        << "\" height=\"" << H - mt - mb
        << "\" fill=\"none\" stroke=\"#444\"/>\n";

    for (double t : ticks(xlo, xhi, opt.logx)) {
        if (t < xlo || t > xhi) continue;
        double X = px(t);
        out << "<line x1=\"" << fmt(X) << "\" y1=\"" << H - mb << "\" x2=\""
            << fmt(X) << "\" y2=\"" << H - mb + 4 << "\" stroke=\"#444\"/>\n";
        out << "<line x1=\"" << fmt(X) << "\" y1=\"" << mt << "\" x2=\""
            << fmt(X) << "\" y2=\"" << H - mb
            << "\" stroke=\"#ddd\" stroke-width=\"0.5\"/>\n";
        double label = opt.logx ? std::pow(10.0, t) : t;
        out << "<text x=\"" << fmt(X) << "\" y=\"" << H - mb + 16
            << "\" text-anchor=\"middle\">" << fmt(label) << "</text>\n";
    }
    for (double t : ticks(ylo, yhi, opt.logy)) {
        if (t < ylo || t > yhi) continue;
        double Y = py(t);
        out << "<line x1=\"" << ml - 4 << "\" y1=\"" << fmt(Y) << "\" x2=\""
            << ml << "\" y2=\"" << fmt(Y) << "\" stroke=\"#444\"/>\n";
        out << "<line x1=\"" << ml << "\" y1=\"" << fmt(Y) << "\" x2=\""
            << W - mr << "\" y2=\"" << fmt(Y)
            << "\" stroke=\"#ddd\" stroke-width=\"0.5\"/>\n";
        double label = opt.logy ? std::pow(10.0, t) : t;
        out << "<text x=\"" << ml - 7 << "\" y=\"" << fmt(Y + 4)
            << "\" text-anchor=\"end\">" << fmt(label) << "</text>\n";
    }
    if (!opt.xlabel.empty())
        out << "<text x=\"" << (ml + W - mr) / 2 << "\" y=\"" << H - 8
            << "\" text-anchor=\"middle\">" << escape(opt.xlabel) << "</text>\n";
    if (!opt.ylabel.empty())
        out << "<text x=\"14\" y=\"" << (mt + H - mb) / 2
            << "\" text-anchor=\"middle\" transform=\"rotate(-90 14 "
            << (mt + H - mb) / 2 << ")\">" << escape(opt.ylabel) << "</text>\n";

    int ci = 0;
    for (const auto& s : series) {
        const char* color = kPalette[ci % 6];
        out << "<polyline fill=\"none\" stroke=\"" << color
            << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i)
            if (usable(s.x[i], s.y[i]))
                out << fmt(px(tx(s.x[i]))) << "," << fmt(py(ty(s.y[i]))) << " ";
        out << "\"/>\n";
        for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i)
            if (usable(s.x[i], s.y[i]))
                out << "<circle cx=\"" << fmt(px(tx(s.x[i]))) << "\" cy=\""
                    << fmt(py(ty(s.y[i]))) << "\" r=\"2.2\" fill=\"" << color
                    << "\"/>\n";
        if (!s.label.empty()) {
            double ly = mt + 14 + 14 * ci;
            out << "<line x1=\"" << W - mr - 110 << "\" y1=\"" << ly - 4
                << "\" x2=\"" << W - mr - 90 << "\" y2=\"" << ly - 4
                << "\" stroke=\"" << color << "\" stroke-width=\"1.5\"/>\n";
            out << "<text x=\"" << W - mr - 86 << "\" y=\"" << ly << "\">"
                << escape(s.label) << "</text>\n";
        }
        ++ci;
    }
    out << "</svg>\n";
    if (!out) throw io_error("write_svg_chart: write failed for " + path.string());
}

} // namespace dlab
