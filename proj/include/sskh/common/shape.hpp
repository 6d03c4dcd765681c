#pragma once

#include <string>

namespace sskh {

// Monotone nonlinearities shared by channel functions and regression transforms.
enum class Shape { identity, sqrt, square, cbrt, log1p };

Shape parse_shape(const std::string& s);   // accepts "linear" as identity
std::string to_string(Shape s);

// Plain shape value; sqrt/cbrt/log1p require x >= 0 (checked by callers).
double shape_value(Shape s, double x);

// Scale c with c * shape(m) = m, so x -> c*shape(x) maps [0, m] onto [0, m].
double normalized_scale(Shape s, double m);

}  // namespace sskh
