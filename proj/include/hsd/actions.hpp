#pragma once

#include <array>
#include <cstdint>

namespace hsd {

// One 7-DoF action: gripper position deltas (X, Y, Z), joint rotations
// (rX, rY, rZ) in radians, and a continuous gripper command G that is
// interpreted as binary by thresholding at the midpoint of its bounds.
inline constexpr int kActionDims = 7;
inline constexpr int kGripperDim = 6;

struct ActionSlice {
    std::array<double, kActionDims> values{};

    double operator[](int i) const { return values[static_cast<size_t>(i)]; }
    double& operator[](int i) { return values[static_cast<size_t>(i)]; }
};

struct ActionBins {
    std::array<int, kActionDims> bins{};

    int operator[](int i) const { return bins[static_cast<size_t>(i)]; }
    int& operator[](int i) { return bins[static_cast<size_t>(i)]; }

    bool operator==(const ActionBins&) const = default;
};

struct DimBounds {
    double lo = -1.0;
    double hi = 1.0;

    double mid() const { return 0.5 * (lo + hi); }
    double span() const { return hi - lo; }
};

struct ActionSpaceBounds {
    std::array<DimBounds, kActionDims> dims{};

    // Same [lo, hi] interval on every dimension.
    static ActionSpaceBounds uniform(double lo, double hi);

    // Throws ConfigError unless lo < hi on every dimension.
    void validate() const;
};

enum class GripperState : std::uint8_t { open, closed };

// Uniform discretization of one slice into per-dimension bin indices:
//   b_i = floor(clamp(a_i) - lo_i) / (hi_i - lo_i) * (K - 1)
// Out-of-range values are clamped to the dimension bounds first.
// Throws InvalidInputError on non-finite input, ConfigError on degenerate
// bounds or K < 2.
ActionBins quantize(const ActionSlice& a, const ActionSpaceBounds& bounds, int k_bins);

// Inverse linear interpolation: a_i = lo_i + b_i / (K - 1) * (hi_i - lo_i).
// Throws InvalidInputError when any bin is outside [0, K-1].
ActionSlice dequantize(const ActionBins& b, const ActionSpaceBounds& bounds, int k_bins);

// Binary gripper rule: closed iff g >= midpoint of the gripper bounds.
GripperState gripper_binary(double g, const ActionSpaceBounds& bounds);

} // namespace hsd
