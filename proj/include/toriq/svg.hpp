#pragma once

#include "toriq/fan.hpp"

#include <array>
#include <sstream>
#include <string>
#include <vector>

namespace toriq {

namespace svg_detail {

using Q = Rat;
using QPoint = std::array<Q, 2>;

inline Q qabs(const Q& x) { return x < 0 ? Q(-x) : x; }

inline Q cross(const QPoint& o, const QPoint& a, const QPoint& b) {
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

// Andrew monotone chain, exact
inline std::vector<QPoint> convex_hull(std::vector<QPoint> pts) {
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() <= 2) return pts;
    std::vector<QPoint> h(2 * pts.size());
    std::size_t k = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        while (k >= 2 && cross(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
        h[k++] = pts[i];
    }
    for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
        while (k >= t && cross(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
        h[k++] = pts[i];
    }
    h.resize(k - 1);
    return h;
}

// exact fixed-point decimal with two digits, round half away from zero
inline std::string fixed2(const Q& x) {
    Int num = boost::multiprecision::numerator(x) * 200;
    Int den = boost::multiprecision::denominator(x);
    Int scaled = (num >= 0 ? Int(num + den) : Int(num - den)) / (2 * den);
    Int whole = scaled / 100, frac = abs(scaled % 100);
    std::string fs = frac.str();
    if (fs.size() < 2) fs.insert(fs.begin(), 2 - fs.size(), '0');
    std::string ws = whole.str();
    if (scaled < 0 && whole == 0) ws = "-0";
    return ws + "." + fs;
}

struct Region {
    std::size_t cone_index = 0;
    std::vector<QPoint> polygon;  // hull order; may have 1 or 2 points
    bool unbounded = false;
};

}  // namespace svg_detail

// Cross-section of a 3-dimensional fan with the plane <normal, x> = level,
// drawn by dropping the first coordinate on which the normal is nonzero.
// Unbounded slices are clipped by extending their recession directions to
// the margin; coordinates are exact rationals rendered at fixed scale.
inline std::string slice_plot_svg(const Fan& fan, const IntVec& normal, const Rat& level) {
    using namespace svg_detail;
    if (fan.ambient_rank != 3) throw error("slice-plot: a 3-dimensional fan is required");
    if (normal.size() != 3) throw error("slice-plot: the plane normal must have 3 entries");
    if (is_zero(normal)) throw error("slice-plot: the plane normal must be nonzero");

    std::size_t drop = 0;
    while (normal[drop] == 0) ++drop;
    auto project = [&](const std::array<Q, 3>& p) {
        QPoint out;
        std::size_t k = 0;
        for (std::size_t i = 0; i < 3; ++i)
            if (i != drop) out[k++] = p[i];
        return out;
    };

    struct RawRegion {
        std::size_t cone_index;
        std::vector<QPoint> vertices;
        std::vector<QPoint> recession;
    };
    std::vector<RawRegion> raw;
    for (std::size_t ci = 0; ci < fan.maximal.size(); ++ci) {
        const Cone& c = fan.maximal[ci];
        RawRegion r;
        r.cone_index = ci;
        if (level != 0) {
            for (const IntVec& g : c.generators) {
                Int s = dot(normal, g);
                if (s == 0) continue;
                Q t = level / Q(s);
                if (t <= 0) continue;
                r.vertices.push_back(project({Q(g[0]) * t, Q(g[1]) * t, Q(g[2]) * t}));
            }
        }
        if (r.vertices.empty()) continue;
        Cone rec = intersect(c, Cone::from_inequalities(3, {}, {normal}));
        for (const IntVec& d : rec.generators)
            r.recession.push_back(project({Q(d[0]), Q(d[1]), Q(d[2])}));
        raw.push_back(std::move(r));
    }

    // global extent of the bounded vertices fixes the clipping scale
    Q span = 1;
    for (const RawRegion& r : raw)
        for (const QPoint& p : r.vertices) {
            span = std::max(span, qabs(p[0]));
            span = std::max(span, qabs(p[1]));
        }
    Q reach = span * 8;

    std::vector<Region> regions;
    for (const RawRegion& r : raw) {
        std::vector<QPoint> pts = r.vertices;
        for (const QPoint& d : r.recession) {
            Q m = std::max(qabs(d[0]), qabs(d[1]));
            if (m == 0) continue;
            Q t = reach / m;
            for (const QPoint& v : r.vertices)
                pts.push_back({v[0] + d[0] * t, v[1] + d[1] * t});
        }
        Region reg;
        reg.cone_index = r.cone_index;
        reg.polygon = convex_hull(std::move(pts));
        reg.unbounded = !r.recession.empty();
        regions.push_back(std::move(reg));
    }

    // view box around everything drawn
    Q lo_x = -1, hi_x = 1, lo_y = -1, hi_y = 1;
    bool first = true;
    for (const Region& r : regions)
        for (const QPoint& p : r.polygon) {
            if (first) {
                lo_x = hi_x = p[0];
                lo_y = hi_y = p[1];
                first = false;
            }
            lo_x = std::min(lo_x, p[0]);
            hi_x = std::max(hi_x, p[0]);
            lo_y = std::min(lo_y, p[1]);
            hi_y = std::max(hi_y, p[1]);
        }
    Q pad = std::max(Q(1), Q((hi_x - lo_x + hi_y - lo_y) / 10));
    lo_x -= pad;
    hi_x += pad;
    lo_y -= pad;
    hi_y += pad;

    const int view = 640;
    Q scale = std::min(Q(Q(view) / (hi_x - lo_x)), Q(Q(view) / (hi_y - lo_y)));
    auto map_x = [&](const Q& x) { return Q((x - lo_x) * scale); };
    auto map_y = [&](const Q& y) { return Q(Q(view) - (y - lo_y) * scale); };  // flip y

    static const char* palette[] = {"#4878a8", "#a85048", "#58a868", "#a88f48",
                                    "#7858a8", "#48a0a8"};

    std::ostringstream os;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << view << "\" height=\"" << view
       << "\" viewBox=\"0 0 " << view << " " << view << "\">\n";
    os << "<!-- cross-section of a rank-3 fan: plane <" << to_string(normal)
       << ", x> = " << Rat(level).str() << "; " << regions.size() << " region"
       << (regions.size() == 1 ? "" : "s") << " -->\n";
    os << "<rect width=\"" << view << "\" height=\"" << view << "\" fill=\"#ffffff\"/>\n";

    // light axes of the section plane
    if (lo_x < 0 && hi_x > 0)
        os << "<line x1=\"" << fixed2(map_x(0)) << "\" y1=\"0\" x2=\"" << fixed2(map_x(0))
           << "\" y2=\"" << view << "\" stroke=\"#dddddd\"/>\n";
    if (lo_y < 0 && hi_y > 0)
        os << "<line x1=\"0\" y1=\"" << fixed2(map_y(0)) << "\" x2=\"" << view << "\" y2=\""
           << fixed2(map_y(0)) << "\" stroke=\"#dddddd\"/>\n";

    for (const Region& r : regions) {
        const char* color = palette[r.cone_index % 6];
        if (r.polygon.size() == 1) {
            os << "<circle class=\"region\" cx=\"" << fixed2(map_x(r.polygon[0][0])) << "\" cy=\""
               << fixed2(map_y(r.polygon[0][1])) << "\" r=\"4\" fill=\"" << color << "\"/>\n";
        } else if (r.polygon.size() == 2) {
            os << "<polyline class=\"region\" points=\"";
            for (const QPoint& p : r.polygon)
                os << fixed2(map_x(p[0])) << "," << fixed2(map_y(p[1])) << " ";
            os << "\" fill=\"none\" stroke=\"" << color << "\" stroke-width=\"3\"/>\n";
        } else {
            os << "<polygon class=\"region\" points=\"";
            for (const QPoint& p : r.polygon)
                os << fixed2(map_x(p[0])) << "," << fixed2(map_y(p[1])) << " ";
            os << "\" fill=\"" << color << "\" fill-opacity=\"0.45\" stroke=\"" << color
               << "\" stroke-width=\"1.5\"/>\n";
        }
        Q cx = 0, cy = 0;
        for (const QPoint& p : r.polygon) {
            cx += p[0];
            cy += p[1];
        }
        cx /= Q(r.polygon.size());
        cy /= Q(r.polygon.size());
        os << "<text x=\"" << fixed2(map_x(cx)) << "\" y=\"" << fixed2(map_y(cy))
           << "\" font-family=\"sans-serif\" font-size=\"16\" fill=\"#222222\">C" << r.cone_index
           << "</text>\n";
    }
    os << "</svg>\n";
    return os.str();
}

}  // namespace toriq
