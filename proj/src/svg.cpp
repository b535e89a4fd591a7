#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>

#include "finnet/run.hpp"

namespace finnet {

namespace {

std::ofstream open_svg(const std::filesystem::path& file, int w, int h) {
    std::ofstream out(file);
    if (!out) throw std::runtime_error("cannot write " + file.string());
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w
        << "\" height=\"" << h << "\" viewBox=\"0 0 " << w << ' ' << h << "\">\n";
    return out;
}

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

void span_minmax(std::span<const double> v, double& lo, double& hi) {
    for (double x : v) {
        if (!std::isfinite(x)) continue;
        lo = std::min(lo, x);
        hi = std::max(hi, x);
    }
}

// three-stop gradient, dark violet through teal to yellow
void colormap(double t, int& r, int& g, int& b) {
    t = std::clamp(t, 0.0, 1.0);
    const int stops[3][3] = {{68, 1, 84}, {33, 145, 140}, {253, 231, 37}};
    int lo = t < 0.5 ? 0 : 1;
    double f = (t - 0.5 * lo) * 2.0;
    r = static_cast<int>(std::lround(stops[lo][0] + f * (stops[lo + 1][0] - stops[lo][0])));
    g = static_cast<int>(std::lround(stops[lo][1] + f * (stops[lo + 1][1] - stops[lo][1])));
    b = static_cast<int>(std::lround(stops[lo][2] + f * (stops[lo + 1][2] - stops[lo][2])));
}

std::string fill(double t) {
    int r, g, b;
    colormap(t, r, g, b);
    char buf[16];
    std::snprintf(buf, sizeof buf, "#%02x%02x%02x", r, g, b);
    return buf;
}

}  // namespace

void write_line_plot_svg(const std::filesystem::path& file,
                         std::span<const double> xs, std::span<const double> pred,
                         std::span<const double> exact) {
    const int W = 720, H = 480, L = 60, R = 20, T = 20, B = 40;
    double xlo = 1e300, xhi = -1e300, ylo = 1e300, yhi = -1e300;
    span_minmax(xs, xlo, xhi);
    span_minmax(pred, ylo, yhi);
    span_minmax(exact, ylo, yhi);
    if (xlo >= xhi) { xlo = 0.0; xhi = 1.0; }
    if (ylo >= yhi) { ylo -= 0.5; yhi += 0.5; }
    double pad = 0.05 * (yhi - ylo);
    ylo -= pad;
    yhi += pad;

    auto px = [&](double x) { return L + (x - xlo) / (xhi - xlo) * (W - L - R); };
    auto py = [&](double y) { return H - B - (y - ylo) / (yhi - ylo) * (H - T - B); };

    std::ofstream out = open_svg(file, W, H);
    out << "<rect x=\"" << L << "\" y=\"" << T << "\" width=\"" << W - L - R
        << "\" height=\"" << H - T - B
        << "\" fill=\"white\" stroke=\"#444\" stroke-width=\"1\"/>\n";

    auto polyline = [&](std::span<const double> ys, const char* color, double width) {
        out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\""
            << width << "\" points=\"";
        for (std::size_t i = 0; i < xs.size(); ++i) {
            if (!std::isfinite(ys[i])) continue;
            out << num(px(xs[i])) << ',' << num(py(ys[i])) << ' ';
        }
        out << "\"/>\n";
    };
    polyline(exact, "#888888", 3.0);
    polyline(pred, "#bb3333", 1.5);

    out << "<text x=\"" << L << "\" y=\"" << H - B + 16 << "\" font-size=\"12\">"
        << num(xlo) << "</text>\n";
    out << "<text x=\"" << W - R - 30 << "\" y=\"" << H - B + 16
        << "\" font-size=\"12\">" << num(xhi) << "</text>\n";
    out << "<text x=\"4\" y=\"" << py(ylo) << "\" font-size=\"12\">" << num(ylo)
        << "</text>\n";
    out << "<text x=\"4\" y=\"" << py(yhi) + 10 << "\" font-size=\"12\">" << num(yhi)
        << "</text>\n";
    out << "<line x1=\"" << W - 180 << "\" y1=\"30\" x2=\"" << W - 150
        << "\" y2=\"30\" stroke=\"#888888\" stroke-width=\"3\"/>\n";
    out << "<text x=\"" << W - 144 << "\" y=\"34\" font-size=\"12\">exact</text>\n";
    out << "<line x1=\"" << W - 180 << "\" y1=\"48\" x2=\"" << W - 150
        << "\" y2=\"48\" stroke=\"#bb3333\" stroke-width=\"1.5\"/>\n";
    out << "<text x=\"" << W - 144 << "\" y=\"52\" font-size=\"12\">predicted</text>\n";
    out << "</svg>\n";
}

void write_heatmap_svg(const std::filesystem::path& file, const Grid2D& g,
                       std::span<const double> pred, std::span<const double> exact) {
    const int cell = 8, gap = 40, T = 36, B = 24, L = 16;
    int pw = g.nx * cell, ph = g.ny * cell;
    int W = L + pw + gap + pw + L, H = T + ph + B;

    double lo = 1e300, hi = -1e300;
    span_minmax(pred, lo, hi);
    span_minmax(exact, lo, hi);
    if (lo >= hi) { lo -= 0.5; hi += 0.5; }

    std::ofstream out = open_svg(file, W, H);
    auto panel = [&](std::span<const double> v, int x0, const char* title) {
        out << "<text x=\"" << x0 << "\" y=\"" << T - 10 << "\" font-size=\"14\">"
            << title << "</text>\n";
        for (int j = 0; j < g.ny; ++j)
            for (int i = 0; i < g.nx; ++i) {
                double val = v[g.idx(i, j)];
                double t = std::isfinite(val) ? (val - lo) / (hi - lo) : 0.0;
                int px = x0 + i * cell;
                int py = T + (g.ny - 1 - j) * cell;   // j up means y up
                out << "<rect x=\"" << px << "\" y=\"" << py << "\" width=\"" << cell
                    << "\" height=\"" << cell << "\" fill=\"" << fill(t) << "\"/>\n";
            }
    };
    panel(pred, L, "predicted");
    panel(exact, L + pw + gap, "exact");
    out << "<text x=\"" << L << "\" y=\"" << H - 8 << "\" font-size=\"12\">min "
        << num(lo) << "  max " << num(hi) << "</text>\n";
    out << "</svg>\n";
}

}  // namespace finnet
