#include "hsd/actions.hpp"

#include "hsd/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace hsd {

ActionSpaceBounds ActionSpaceBounds::uniform(double lo, double hi) {
    ActionSpaceBounds b;
    for (auto& d : b.dims) d = {lo, hi};
    return b;
}

void ActionSpaceBounds::validate() const {
    for (size_t i = 0; i < dims.size(); ++i) {
        if (!std::isfinite(dims[i].lo) || !std::isfinite(dims[i].hi)) {
            throw ConfigError("action bounds must be finite (dim " + std::to_string(i) + ")");
        }
        if (!(dims[i].lo < dims[i].hi)) {
            throw ConfigError("degenerate action bounds on dim " + std::to_string(i));
        }
    }
}

static void check_k(int k_bins) {
    if (k_bins < 2) throw ConfigError("bin count must be >= 2, got " + std::to_string(k_bins));
}

ActionBins quantize(const ActionSlice& a, const ActionSpaceBounds& bounds, int k_bins) {
    check_k(k_bins);
    bounds.validate();
    ActionBins out;
    for (int i = 0; i < kActionDims; ++i) {
        const double v = a[i];
        if (!std::isfinite(v)) {
            throw InvalidInputError("non-finite action value on dim " + std::to_string(i));
        }
        const DimBounds& d = bounds.dims[static_cast<size_t>(i)];
        const double clamped = std::clamp(v, d.lo, d.hi);
        const double t = (clamped - d.lo) / d.span();
        int bin = static_cast<int>(std::floor(t * (k_bins - 1)));
        // t == 1 would floor to K-1 exactly; guard fp overshoot anyway.
        bin = std::clamp(bin, 0, k_bins - 1);
        out[i] = bin;
    }
    return out;
}

ActionSlice dequantize(const ActionBins& b, const ActionSpaceBounds& bounds, int k_bins) {
    check_k(k_bins);
    bounds.validate();
    ActionSlice out;
    for (int i = 0; i < kActionDims; ++i) {
        const int bin = b[i];
        if (bin < 0 || bin >= k_bins) {
            throw InvalidInputError("bin " + std::to_string(bin) + " out of range on dim " +
                                    std::to_string(i));
        }
        const DimBounds& d = bounds.dims[static_cast<size_t>(i)];
        out[i] = d.lo + static_cast<double>(bin) / (k_bins - 1) * d.span();
    }
    return out;
}

GripperState gripper_binary(double g, const ActionSpaceBounds& bounds) {
    if (!std::isfinite(g)) throw InvalidInputError("non-finite gripper command");
    return g >= bounds.dims[kGripperDim].mid() ? GripperState::closed : GripperState::open;
}

} // namespace hsd
