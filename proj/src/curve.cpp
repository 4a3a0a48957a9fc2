#include "thermalnoon/curve.hpp"

#include <algorithm>
#include <cmath>

#include "thermalnoon/errors.hpp"
#include "thermalnoon/geometry.hpp"

namespace thermalnoon {

void CorrelationCurve::validate() const {
    if (grid.size() < 2) throw InvalidArgument("correlation curve needs at least two grid points");
    if (grid.size() != values.size())
        throw InvalidArgument("correlation curve grid and values differ in length");
    for (double v : values)
        if (!(v >= 0.0) || !std::isfinite(v))
            throw InvalidArgument("correlation curve values must be finite and nonnegative");
    if (stderr_values && stderr_values->size() != values.size())
        throw InvalidArgument("correlation curve stderr length mismatch");
    for (const auto& b : batch_values)
        if (b.size() != values.size())
            throw InvalidArgument("correlation curve batch length mismatch");
}

CorrelationCurve CorrelationCurve::normalized_copy() const {
    CorrelationCurve out = *this;
    const double peak = *std::max_element(values.begin(), values.end());
    if (!(peak > 0.0)) throw InvalidArgument("cannot normalize an all-zero curve");
    for (double& v : out.values) v /= peak;
    if (out.stderr_values)
        for (double& s : *out.stderr_values) s /= peak;
    for (auto& b : out.batch_values)
        for (double& v : b) v /= peak;
    out.normalized = true;
    return out;
}

std::vector<double> uniform_grid(std::size_t points) {
    if (points < 2) throw InvalidArgument("grid needs at least two points");
    std::vector<double> g(points);
    for (std::size_t i = 0; i < points; ++i)
        g[i] = kTwoPi * static_cast<double>(i) / static_cast<double>(points - 1);
    return g;
}

}  // namespace thermalnoon
