#include "bmap/svg.hpp"

#include <charconv>
#include <cmath>

namespace bmap {

std::string SvgWriter::fixed(double value) {
    if (value > -0.005 && value <= 0) value = 0; // avoid "-0.00"
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::fixed, 2);
    return std::string(buf, res.ptr);
}

namespace {

std::string escape_text(std::string_view content) {
    std::string out;
    for (char c : content) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            default: out += c;
        }
    }
    return out;
}

void append_paint(std::string& out, std::string_view fill, double opacity,
                  std::string_view stroke, double stroke_width) {
    if (!fill.empty()) {
        out += " fill=\"";
        out += fill;
        out += '"';
    }
    if (opacity >= 0) {
        out += " fill-opacity=\"";
        out += SvgWriter::fixed(opacity);
        out += '"';
    }
    if (!stroke.empty()) {
        out += " stroke=\"";
        out += stroke;
        out += "\" stroke-width=\"";
        out += SvgWriter::fixed(stroke_width);
        out += '"';
    }
}

} // namespace

SvgWriter::SvgWriter(double width, double height) {
    body_ = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fixed(width) +
            "\" height=\"" + fixed(height) + "\" viewBox=\"0 0 " + fixed(width) + " " +
            fixed(height) + "\">\n";
}

void SvgWriter::rect(double x, double y, double w, double h, std::string_view fill,
                     double opacity, std::string_view stroke, double stroke_width) {
    body_ += "<rect x=\"" + fixed(x) + "\" y=\"" + fixed(y) + "\" width=\"" + fixed(w) +
             "\" height=\"" + fixed(h) + "\"";
    append_paint(body_, fill, opacity, stroke, stroke_width);
    body_ += "/>\n";
}

void SvgWriter::circle(double cx, double cy, double r, std::string_view fill,
                       double opacity, std::string_view stroke, double stroke_width) {
    body_ += "<circle cx=\"" + fixed(cx) + "\" cy=\"" + fixed(cy) + "\" r=\"" + fixed(r) +
             "\"";
    append_paint(body_, fill, opacity, stroke, stroke_width);
    body_ += "/>\n";
}

void SvgWriter::line(double x1, double y1, double x2, double y2, std::string_view stroke,
                     double width, double opacity) {
    body_ += "<line x1=\"" + fixed(x1) + "\" y1=\"" + fixed(y1) + "\" x2=\"" + fixed(x2) +
             "\" y2=\"" + fixed(y2) + "\" stroke=\"";
    body_ += stroke;
    body_ += "\" stroke-width=\"" + fixed(width) + "\"";
    if (opacity >= 0) body_ += " stroke-opacity=\"" + fixed(opacity) + "\"";
    body_ += "/>\n";
}

void SvgWriter::text(double x, double y, double size, std::string_view fill,
                     std::string_view anchor, std::string_view content) {
    body_ += "<text x=\"" + fixed(x) + "\" y=\"" + fixed(y) + "\" font-family=\"monospace\"" +
             " font-size=\"" + fixed(size) + "\" fill=\"";
    body_ += fill;
    body_ += "\" text-anchor=\"";
    body_ += anchor;
    body_ += "\">";
    body_ += escape_text(content);
    body_ += "</text>\n";
}

std::string SvgWriter::finish() {
    body_ += "</svg>\n";
    return std::move(body_);
}

} // namespace bmap
