#include "cubepack/export.hpp"

#include "cubepack/certificate_io.hpp"

#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace cubepack {

namespace {

constexpr const char* kCubeFill = "#3b6ea8";
constexpr const char* kFreeFill = "#f4d58d";

class SvgCanvas {
public:
    SvgCanvas(const Brick& frame, std::size_t x_axis, std::size_t y_axis, double size_px)
        : frame_(frame), x_(x_axis), y_(y_axis), size_(size_px) {
        long double sx = frame.side(x_axis).to_long_double(), sy = frame.side(y_axis).to_long_double();
        scale_ = static_cast<double>(size_px / std::max(sx, sy));
        width_ = static_cast<double>(sx) * scale_;
        height_ = static_cast<double>(sy) * scale_;
    }

    void rect(const Brick& b, const char* fill, const char* cls) {
        double x0 = px(b.lo(x_), frame_.lo(x_)), x1 = px(b.hi(x_), frame_.lo(x_));
        double y0 = px(b.lo(y_), frame_.lo(y_)), y1 = px(b.hi(y_), frame_.lo(y_));
        char buf[256];
        std::snprintf(buf, sizeof buf,
                      "<rect class=\"%s\" x=\"%.4f\" y=\"%.4f\" width=\"%.4f\" height=\"%.4f\" fill=\"%s\"/>\n", cls,
                      x0, height_ - y1, x1 - x0, y1 - y0, fill);
        body_ << buf;
    }

    std::string finish(const std::string& title) const {
        std::ostringstream os;
        char head[256];
        std::snprintf(head, sizeof head,
                      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%.4f\" height=\"%.4f\" viewBox=\"0 0 %.4f %.4f\">\n",
                      width_, height_, width_, height_);
        os << head << "<title>" << title << "</title>\n";
        os << "<g stroke=\"#222222\" stroke-width=\"0.25\">\n" << body_.str() << "</g>\n</svg>\n";
        return os.str();
    }

private:
    double px(const Dyadic& v, const Dyadic& origin) const {
        return static_cast<double>((v - origin).to_long_double() * scale_);
    }

    Brick frame_;
    std::size_t x_, y_;
    double size_;
    double scale_ = 1, width_ = 0, height_ = 0;
    std::ostringstream body_;
};

std::string svg2d(const Certificate& cert, const ExportOptions& options) {
    if (cert.config.d != 2) throw std::invalid_argument("svg2d needs d = 2; use svg-slice for higher dimensions");
    SvgCanvas canvas(cert.container, 0, 1, options.size_px);
    for (const auto& f : cert.free) canvas.rect(f, kFreeFill, "free");
    for (const auto& c : cert.placements) canvas.rect(c.brick(), kCubeFill, "cube");
    return canvas.finish("cubes n=" + std::to_string(cert.config.n0) + ".." +
                         std::to_string(cert.config.n0 + cert.placements.size()));
}

// Members whose extent along `axis` contains the plane; at the container's
// upper face the closed upper end counts, elsewhere the half-open one.
bool cut_by(const Brick& b, std::size_t axis, const Dyadic& at, bool top) {
    if (top) return b.lo(axis) < at && at <= b.hi(axis);
    return b.lo(axis) <= at && at < b.hi(axis);
}

Brick drop_axis(const Brick& b, std::size_t axis) {
    std::vector<Dyadic> lo, hi;
    for (std::size_t k = 0; k < b.dim(); ++k)
        if (k != axis) {
            lo.push_back(b.lo(k));
            hi.push_back(b.hi(k));
        }
    return Brick(std::move(lo), std::move(hi));
}

std::string svg_slice(const Certificate& cert, const ExportOptions& options) {
    if (cert.config.d != 3) throw std::invalid_argument("svg-slice needs d = 3; use svg2d for d = 2");
    const std::size_t axis = options.slice_axis;
    if (axis >= 3) throw std::invalid_argument("slice axis must be 0, 1 or 2");
    const Dyadic& at = options.slice_at;
    if (at < cert.container.lo(axis) || cert.container.hi(axis) < at)
        throw std::invalid_argument("slice coordinate " + at.to_string() + " outside the container");
    const bool top = at == cert.container.hi(axis);

    SvgCanvas canvas(drop_axis(cert.container, axis), 0, 1, options.size_px);
    for (const auto& f : cert.free)
        if (cut_by(f, axis, at, top)) canvas.rect(drop_axis(f, axis), kFreeFill, "free");
    for (const auto& c : cert.placements) {
        Brick b = c.brick();
        if (cut_by(b, axis, at, top)) canvas.rect(drop_axis(b, axis), kCubeFill, "cube");
    }
    return canvas.finish("slice x" + std::to_string(axis) + " = " + at.to_string());
}

}  // namespace

std::string export_certificate(const Certificate& cert, const std::string& format, const ExportOptions& options) {
    if (format == "svg2d") return svg2d(cert, options);
    if (format == "svg-slice") return svg_slice(cert, options);
    if (format == "csv") return io::stats_csv(cert);
    throw std::invalid_argument("unknown export format '" + format + "' (expected svg2d, svg-slice or csv)");
}

}  // namespace cubepack
