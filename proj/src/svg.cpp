#include "helstrom/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <sstream>

#include "helstrom/errors.hpp"

namespace helstrom::svg {
namespace {

constexpr double kCanvas = 420.0;
constexpr double kMargin = 48.0;

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3f", v);
    // Avoid the two spellings of zero so output stays byte-stable.
    if (std::strcmp(buf, "-0.000") == 0) return "0.000";
    return buf;
}

std::string fmt_ratio(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9f", v);
    return buf;
}

// Affine map from model coordinates to canvas coordinates, y flipped.
struct Frame {
    double min_x, min_y, scale, off_x, off_y;

    double tx(double x) const { return off_x + (x - min_x) * scale; }
    double ty(double y) const { return kCanvas - off_y - (y - min_y) * scale; }
};

Frame fit_frame(double min_x, double max_x, double min_y, double max_y) {
    const double span_x = std::max(max_x - min_x, 1e-9);
    const double span_y = std::max(max_y - min_y, 1e-9);
    const double avail = kCanvas - 2.0 * kMargin;
    const double scale = std::min(avail / span_x, avail / span_y);
    Frame f;
    f.min_x = min_x;
    f.min_y = min_y;
    f.scale = scale;
    f.off_x = (kCanvas - span_x * scale) / 2.0;
    f.off_y = (kCanvas - span_y * scale) / 2.0;
    return f;
}

void open_document(std::ostringstream& out) {
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\""
        << fmt(kCanvas) << "\" height=\"" << fmt(kCanvas) << "\" viewBox=\"0 0 "
        << fmt(kCanvas) << " " << fmt(kCanvas) << "\">\n"
        << "<rect x=\"0\" y=\"0\" width=\"" << fmt(kCanvas) << "\" height=\""
        << fmt(kCanvas) << "\" fill=\"#ffffff\"/>\n";
}

void line(std::ostringstream& out, double x1, double y1, double x2, double y2,
          const char* stroke, bool dashed) {
    out << "<line x1=\"" << fmt(x1) << "\" y1=\"" << fmt(y1) << "\" x2=\"" << fmt(x2)
        << "\" y2=\"" << fmt(y2) << "\" stroke=\"" << stroke << "\" stroke-width=\"1.2\"";
    if (dashed) out << " stroke-dasharray=\"5 4\"";
    out << "/>\n";
}

void marker(std::ostringstream& out, double x, double y, const char* fill,
            const char* stroke) {
    out << "<circle cx=\"" << fmt(x) << "\" cy=\"" << fmt(y) << "\" r=\"5\" fill=\""
        << fill << "\" stroke=\"" << stroke << "\" stroke-width=\"1.5\"/>\n";
}

void label(std::ostringstream& out, double x, double y, const std::string& text) {
    out << "<text x=\"" << fmt(x + 8.0) << "\" y=\"" << fmt(y - 8.0)
        << "\" font-family=\"monospace\" font-size=\"13\" fill=\"#222222\">" << text
        << "</text>\n";
}

void annotation(std::ostringstream& out, const std::string& text) {
    out << "<text x=\"" << fmt(kMargin / 3.0) << "\" y=\"" << fmt(kMargin / 2.0)
        << "\" font-family=\"monospace\" font-size=\"14\" fill=\"#222222\">" << text
        << "</text>\n";
}

}  // namespace

std::string polytope_family_figure(const WeakHelstromFamily& family) {
    const auto& space = family.instance.space();
    if (space.dim() != 2)
        throw ValidationError("figure rendering needs a 2-dimensional state space");

    double min_x = space.vertex(0)[0], max_x = min_x;
    double min_y = space.vertex(0)[1], max_y = min_y;
    for (const auto& v : space.vertices()) {
        min_x = std::min(min_x, v[0]);
        max_x = std::max(max_x, v[0]);
        min_y = std::min(min_y, v[1]);
        max_y = std::max(max_y, v[1]);
    }
    const Frame f = fit_frame(min_x, max_x, min_y, max_y);

    std::ostringstream out;
    open_document(out);

    // Outline order: vertices of a 2-dimensional polytope sorted by angle
    // around the centroid trace the boundary without crossings.
    const Point center = space.centroid();
    std::vector<std::size_t> order(space.num_vertices());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const auto& va = space.vertex(a);
        const auto& vb = space.vertex(b);
        return std::atan2(va[1] - center[1], va[0] - center[0]) <
               std::atan2(vb[1] - center[1], vb[0] - center[0]);
    });
    out << "<polygon points=\"";
    for (std::size_t i = 0; i < order.size(); ++i) {
        const auto& v = space.vertex(order[i]);
        if (i > 0) out << " ";
        out << fmt(f.tx(v[0])) << "," << fmt(f.ty(v[1]));
    }
    out << "\" fill=\"#f4f4f4\" stroke=\"#333333\" stroke-width=\"1.5\"/>\n";

    const std::size_t n = family.instance.num_states();
    for (std::size_t i = 0; i < n; ++i) {
        const auto& s = family.instance.state(i);
        const auto& t = family.conjugates[i];
        line(out, f.tx(s[0]), f.ty(s[1]), f.tx(t[0]), f.ty(t[1]), "#999999", true);
    }
    const auto& r = family.reference;
    for (std::size_t i = 0; i < n; ++i) {
        const auto& s = family.instance.state(i);
        marker(out, f.tx(s[0]), f.ty(s[1]), "#1f6fb4", "#14507f");
        label(out, f.tx(s[0]), f.ty(s[1]), "s" + std::to_string(i + 1));
    }
    for (std::size_t i = 0; i < n; ++i) {
        const auto& t = family.conjugates[i];
        marker(out, f.tx(t[0]), f.ty(t[1]), "#ffffff", "#b43c1f");
        label(out, f.tx(t[0]), f.ty(t[1]), "t" + std::to_string(i + 1));
    }
    marker(out, f.tx(r[0]), f.ty(r[1]), "#444444", "#111111");
    label(out, f.tx(r[0]), f.ty(r[1]), "ref");
    annotation(out, "ratio = " + fmt_ratio(family.ratio));
    out << "</svg>\n";
    return out.str();
}

std::string qubit_section_figure(const quantum::BlochVector& b1,
                                 const quantum::BlochVector& b2,
                                 const quantum::QuantumBinaryResult& result) {
    if (!result.generic)
        throw ValidationError("section figure needs a generic binary result");

    // Orthonormal in-plane axes; everything drawn lies in span(b1, b2).
    const double v1[3] = {b1.x, b1.y, b1.z};
    const double v2[3] = {b2.x, b2.y, b2.z};
    double u[3], w[3];
    const double n1 = b1.norm();
    if (n1 > 1e-9) {
        for (int k = 0; k < 3; ++k) u[k] = v1[k] / n1;
    } else {
        const double n2 = b2.norm();
        if (n2 <= 1e-9)
            throw ValidationError("section figure needs a nonzero Bloch vector");
        for (int k = 0; k < 3; ++k) u[k] = v2[k] / n2;
    }
    double proj = 0.0;
    for (int k = 0; k < 3; ++k) proj += v2[k] * u[k];
    double rest = 0.0;
    for (int k = 0; k < 3; ++k) {
        w[k] = v2[k] - proj * u[k];
        rest += w[k] * w[k];
    }
    if (rest > 1e-12) {
        const double nw = std::sqrt(rest);
        for (int k = 0; k < 3; ++k) w[k] /= nw;
    } else {
        // Colinear states: pick the coordinate axis least aligned with u.
        int pick = 0;
        for (int k = 1; k < 3; ++k)
            if (std::abs(u[k]) < std::abs(u[pick])) pick = k;
        double axis[3] = {0.0, 0.0, 0.0};
        axis[pick] = 1.0;
        double d = 0.0;
        for (int k = 0; k < 3; ++k) d += axis[k] * u[k];
        double nw = 0.0;
        for (int k = 0; k < 3; ++k) {
            w[k] = axis[k] - d * u[k];
            nw += w[k] * w[k];
        }
        nw = std::sqrt(nw);
        for (int k = 0; k < 3; ++k) w[k] /= nw;
    }
    auto plane = [&](const quantum::BlochVector& b) {
        return std::pair<double, double>{b.x * u[0] + b.y * u[1] + b.z * u[2],
                                         b.x * w[0] + b.y * w[1] + b.z * w[2]};
    };

    const Frame f = fit_frame(-1.0, 1.0, -1.0, 1.0);
    std::ostringstream out;
    open_document(out);
    out << "<circle cx=\"" << fmt(f.tx(0.0)) << "\" cy=\"" << fmt(f.ty(0.0))
        << "\" r=\"" << fmt(f.scale)
        << "\" fill=\"#f4f4f4\" stroke=\"#333333\" stroke-width=\"1.5\"/>\n";

    const auto c1 = plane(quantum::density_to_bloch(*result.sigma1));
    const auto c2 = plane(quantum::density_to_bloch(*result.sigma2));
    const auto q1 = plane(b1);
    const auto q2 = plane(b2);
    const auto qr = plane(quantum::density_to_bloch(*result.reference));

    line(out, f.tx(c1.first), f.ty(c1.second), f.tx(c2.first), f.ty(c2.second),
         "#999999", true);
    line(out, f.tx(q1.first), f.ty(q1.second), f.tx(q2.first), f.ty(q2.second),
         "#bbbbbb", true);

    marker(out, f.tx(q1.first), f.ty(q1.second), "#1f6fb4", "#14507f");
    label(out, f.tx(q1.first), f.ty(q1.second), "b1");
    marker(out, f.tx(q2.first), f.ty(q2.second), "#1f6fb4", "#14507f");
    label(out, f.tx(q2.first), f.ty(q2.second), "b2");
    marker(out, f.tx(c1.first), f.ty(c1.second), "#ffffff", "#b43c1f");
    label(out, f.tx(c1.first), f.ty(c1.second), "t1");
    marker(out, f.tx(c2.first), f.ty(c2.second), "#ffffff", "#b43c1f");
    label(out, f.tx(c2.first), f.ty(c2.second), "t2");
    marker(out, f.tx(qr.first), f.ty(qr.second), "#444444", "#111111");
    label(out, f.tx(qr.first), f.ty(qr.second), "ref");
    annotation(out, "ratio = " + fmt_ratio(result.p_success));
    out << "</svg>\n";
    return out.str();
}

}  // namespace helstrom::svg
