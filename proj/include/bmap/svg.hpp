#pragma once

#include <string>
#include <string_view>

namespace bmap {

// Minimal SVG builder with pinned serialization: fixed attribute order and
// fixed 2-decimal coordinates, so renders are byte-stable golden files.
class SvgWriter {
public:
    SvgWriter(double width, double height);

    void rect(double x, double y, double w, double h, std::string_view fill,
              double opacity = -1, std::string_view stroke = "", double stroke_width = 0);
    void circle(double cx, double cy, double r, std::string_view fill,
                double opacity = -1, std::string_view stroke = "", double stroke_width = 0);
    void line(double x1, double y1, double x2, double y2, std::string_view stroke,
              double width, double opacity = -1);
    void text(double x, double y, double size, std::string_view fill,
              std::string_view anchor, std::string_view content);

    std::string finish(); // closes the document; writer is spent afterwards

    // Fixed-point decimal with 2 fraction digits, locale-independent;
    // negative zero normalizes to "0.00".
    static std::string fixed(double value);

private:
    std::string body_;
};

} // namespace bmap
