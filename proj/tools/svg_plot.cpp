#include "svg_plot.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace fewnomial {

namespace {

constexpr double kCanvas = 640.0;
constexpr double kMargin = 40.0;
constexpr const char* kPalette[] = {"#1b9e77", "#d95f02", "#7570b3", "#e7298a",
                                    "#66a61e", "#e6ab02", "#a6761d", "#666666"};

std::string fmt(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string escape(const std::string& s)
{
    std::string out;
    for (char c : s) {
        switch (c) {
            case '<':
                out += "&lt;";
                break;
            case '>':
                out += "&gt;";
                break;
            case '&':
                out += "&amp;";
                break;
            default:
                out += c;
        }
    }
    return out;
}

}  // namespace

std::string render_components_svg(const ComponentReport& report, const std::string& title)
{
    // The traces come from the doubled window when confirmation is on.
    double extent = report.window;
    for (const TracedComponent& c : report.components) {
        for (const Point2& p : c.trace) extent = std::max({extent, std::abs(p[0]), std::abs(p[1])});
    }
    const double scale = (kCanvas - 2 * kMargin) / (2 * extent);
    auto sx = [&](double z) { return kMargin + (z + extent) * scale; };
    auto sy = [&](double z) { return kCanvas - kMargin - (z + extent) * scale; };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kCanvas << "\" height=\"" << kCanvas + 120
        << "\" viewBox=\"0 0 " << kCanvas << " " << kCanvas + 120 << "\">\n";
    svg << "<rect x=\"0\" y=\"0\" width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg << "<text x=\"" << kMargin << "\" y=\"24\" font-family=\"sans-serif\" font-size=\"14\">" << escape(title)
        << "</text>\n";
    svg << "<rect x=\"" << fmt(sx(-extent)) << "\" y=\"" << fmt(sy(extent)) << "\" width=\"" << fmt(2 * extent * scale)
        << "\" height=\"" << fmt(2 * extent * scale) << "\" fill=\"none\" stroke=\"#999\"/>\n";
    svg << "<rect x=\"" << fmt(sx(-report.window)) << "\" y=\"" << fmt(sy(report.window)) << "\" width=\""
        << fmt(2 * report.window * scale) << "\" height=\"" << fmt(2 * report.window * scale)
        << "\" fill=\"none\" stroke=\"#ccc\" stroke-dasharray=\"4 4\"/>\n";
    svg << "<line x1=\"" << fmt(sx(-extent)) << "\" y1=\"" << fmt(sy(0)) << "\" x2=\"" << fmt(sx(extent))
        << "\" y2=\"" << fmt(sy(0)) << "\" stroke=\"#eee\"/>\n";
    svg << "<line x1=\"" << fmt(sx(0)) << "\" y1=\"" << fmt(sy(-extent)) << "\" x2=\"" << fmt(sx(0))
        << "\" y2=\"" << fmt(sy(extent)) << "\" stroke=\"#eee\"/>\n";

    for (const TracedComponent& c : report.components) {
        const char* colour = !c.stable ? "#999999" : c.compact ? "#2166ac" : "#b2182b";
        svg << "<polyline fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < c.trace.size(); ++i) {
            svg << (i ? " " : "") << fmt(sx(c.trace[i][0])) << "," << fmt(sy(c.trace[i][1]));
        }
        svg << "\"/>\n";
        for (const BranchEnd& e : c.ends) {
            const char* ec = e.edge >= 0 ? kPalette[e.edge % 8] : "#000000";
            svg << "<circle cx=\"" << fmt(sx(e.point[0])) << "\" cy=\"" << fmt(sy(e.point[1]))
                << "\" r=\"5\" fill=\"" << ec << "\"/>\n";
        }
    }

    double y = kCanvas + 10;
    svg << "<text x=\"" << kMargin << "\" y=\"" << fmt(y) << "\" font-family=\"sans-serif\" font-size=\"12\">"
        << report.compact << " compact (blue), " << report.non_compact << " non-compact (red), "
        << report.indeterminate << " unstable (grey)</text>\n";
    for (std::size_t i = 0; i < report.edges.size(); ++i) {
        y += 16;
        const NewtonEdge& e = report.edges[i];
        svg << "<circle cx=\"" << kMargin + 5 << "\" cy=\"" << fmt(y - 4) << "\" r=\"5\" fill=\"" << kPalette[i % 8]
            << "\"/>\n";
        svg << "<text x=\"" << kMargin + 16 << "\" y=\"" << fmt(y) << "\" font-family=\"sans-serif\" font-size=\"12\">"
            << "edge " << i << ": inner normal (" << fmt(e.normal[0]) << ", " << fmt(e.normal[1]) << "), "
            << e.points.size() << " support points</text>\n";
        if (y > kCanvas + 110) break;
    }
    svg << "</svg>\n";
    return svg.str();
}

}  // namespace fewnomial
