#include "isoclust/svg.hpp"

#include <algorithm>
#include <cstdio>

namespace isoclust {

namespace {

const char* const kFills[] = {"#c6dbef", "#fdd0a2", "#c7e9c0", "#dadaeb", "#fcbba1"};

class Canvas {
public:
    Canvas(const Window& w, double scale) : scale_(scale) {
        const auto [lo, hi] = w.bounds();
        lo_ = lo;
        hi_ = hi;
        margin_ = 0.05 * std::max(hi.x - lo.x, hi.y - lo.y);
    }

    double width() const { return (hi_.x - lo_.x + 2 * margin_) * scale_; }
    double height() const { return (hi_.y - lo_.y + 2 * margin_) * scale_; }

    // y grows downward in SVG
    void put(std::string& out, Vec2 p) const {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.3f,%.3f", (p.x - lo_.x + margin_) * scale_, (hi_.y - p.y + margin_) * scale_);
        out += buf;
    }

    std::string path_data(const std::vector<Vec2>& pts, bool close) const {
        std::string d;
        for (std::size_t i = 0; i < pts.size(); ++i) {
            d += i ? " L" : "M";
            put(d, pts[i]);
        }
        if (close) d += " Z";
        return d;
    }

private:
    double scale_;
    Vec2 lo_, hi_;
    double margin_;
};

std::string escape(const std::string& s) {
    std::string out;
    for (char ch : s) {
        switch (ch) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += ch;
        }
    }
    return out;
}

}  // namespace

std::string to_svg(const DiscreteCluster& c, const SvgStyle& style) {
    const Canvas cv(c.window, style.pixels_per_unit);
    char buf[256];
    std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    std::snprintf(buf, sizeof buf,
                  "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"%.1f\" height=\"%.1f\" "
                  "viewBox=\"0 0 %.1f %.1f\">\n",
                  cv.width(), cv.height(), cv.width(), cv.height());
    out += buf;

    if (style.shade_proper) {
        std::size_t colour = 0;
        for (const ChamberSpec& ch : c.chambers) {
            if (!ch.proper) continue;
            for (const auto& loop : chamber_polygon(c, ch.label)) {
                out += "<polygon class=\"chamber\" data-label=\"" + escape(ch.label) + "\" fill=\"" +
                       kFills[colour % 5] + "\" stroke=\"none\" points=\"";
                for (std::size_t i = 0; i < loop.size(); ++i) {
                    if (i) out += ' ';
                    cv.put(out, loop[i]);
                }
                out += "\"/>\n";
            }
            ++colour;
        }
    }

    std::snprintf(buf, sizeof buf, "%.2f", style.stroke_width);
    const std::string stroke = buf;
    out += "<path class=\"window\" fill=\"none\" stroke=\"#888888\" stroke-dasharray=\"4 3\" stroke-width=\"1\" d=\"" +
           cv.path_data(c.window.outline(c.window.default_boundary_step()), true) + "\"/>\n";
    for (const Interface& f : c.interfaces)
        out += "<path class=\"interface\" id=\"" + escape(f.id) + "\" fill=\"none\" stroke=\"#000000\" stroke-width=\"" +
               stroke + "\" stroke-linejoin=\"round\" d=\"" + cv.path_data(f.points, f.closed()) + "\"/>\n";

    for (const Node& n : c.nodes) {
        std::string at;
        cv.put(at, n.position);
        const auto comma = at.find(',');
        out += "<circle class=\"node\" cx=\"" + at.substr(0, comma) + "\" cy=\"" + at.substr(comma + 1) + "\" r=\"" +
               (n.kind == NodeKind::triple_junction ? "2.5" : "2") + "\" fill=\"" +
               (n.kind == NodeKind::triple_junction ? "#000000" : "#888888") + "\"/>\n";
        if (style.label_nodes)
            out += "<text x=\"" + at.substr(0, comma) + "\" y=\"" + at.substr(comma + 1) +
                   "\" font-size=\"10\" dx=\"4\" dy=\"-4\">" + escape(n.id) + "</text>\n";
    }
    out += "</svg>\n";
    return out;
}

}  // namespace isoclust
