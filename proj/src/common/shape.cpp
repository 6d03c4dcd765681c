#include "sskh/common/shape.hpp"

#include <cmath>

#include "sskh/common/error.hpp"

namespace sskh {

Shape parse_shape(const std::string& s) {
    if (s == "identity" || s == "linear") return Shape::identity;
    if (s == "sqrt") return Shape::sqrt;
    if (s == "square") return Shape::square;
    if (s == "cbrt") return Shape::cbrt;
    if (s == "log1p") return Shape::log1p;
    fail(ErrorCode::invalid_argument, "unknown function kind: " + s);
}

std::string to_string(Shape s) {
    switch (s) {
        case Shape::identity: return "identity";
        case Shape::sqrt: return "sqrt";
        case Shape::square: return "square";
        case Shape::cbrt: return "cbrt";
        case Shape::log1p: return "log1p";
    }
    return "unknown";
}

double shape_value(Shape s, double x) {
    switch (s) {
        case Shape::identity: return x;
        case Shape::sqrt: return std::sqrt(x);
        case Shape::square: return x * x;
        case Shape::cbrt: return std::cbrt(x);
        case Shape::log1p: return std::log1p(x);
    }
    return x;
}

double normalized_scale(Shape s, double m) {
    require(m > 0, ErrorCode::invalid_argument, "normalized_scale: m must be positive");
    return m / shape_value(s, m);
}

}  // namespace sskh
