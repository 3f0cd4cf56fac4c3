#pragma once

#include "hsd/geometry.hpp"

#include <span>
#include <vector>

namespace hsd {

struct TrajectoryPoint {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
    int step_index = 0;

    Vec3 pos() const { return {x, y, z}; }
};

// Windowed kinematic features: curvature radius R, cumulative displacement D,
// and their normalized fusion F in [0, 1].
struct WindowFeatures {
    double R = 0.0;
    double D = 0.0;
    double F = 0.0;
    int w = 0;
};

// Per-suite normalization bounds: raw minimum and 95th-percentile maximum.
struct NormalizationBounds {
    double d_min = 0.0;
    double d_max95 = 1.0;
    double r_min = 0.0;
    double r_max95 = 1.0;

    void validate() const; // throws ConfigError when min > max95 or negative
};

struct FusedMetricParams {
    double alpha = 0.5;     // weight on normalized R
    int w = 15;             // sliding window length
    double threshold = 0.5; // boundary between the two SD modes
    double r_cap = 1.0;     // radius ceiling before normalization

    void validate() const;
};

// Which drafting mode a segment calls for.
enum class SdKind { retrieval_sd, drafter_sd };

const char* to_string(SdKind kind);

// Result of the geometric circle-center fit.
struct CircleFit {
    Vec2 center{};
    bool degenerate = false; // point spread below resolution; center = centroid
    int iterations = 0;
};

// Centers the window at its mean and projects onto the two dominant
// principal directions of the centered point set. Requires >= 3 points.
std::vector<Vec2> project_window(std::span<const TrajectoryPoint> points);

// Minimizes the variance of point-to-center distances,
//   sum_i (||p_i - C|| - mu)^2  with  mu = mean distance,
// by damped Gauss-Newton from the centroid (step tolerance 1e-10, at most
// 100 iterations). Windows with spread < 1e-9 come back degenerate.
CircleFit fit_circle_center(std::span<const Vec2> points);

// Mean distance of the projected window to the fitted center, capped at
// r_cap. Degenerate windows return 0.
double curvature_radius(std::span<const TrajectoryPoint> points, double r_cap);

// Sum of consecutive 3-D segment lengths; direction-free. Requires >= 2 points.
double cumulative_displacement(std::span<const TrajectoryPoint> points);

// Min-max normalization with the upper bound at the 95th percentile:
// clip((x - lo) / (hi95 - lo), 0, 1). Degenerate bounds (lo == hi95) map to 0.
double normalize(double x, double lo, double hi95);

// (min, nearest-rank 95th percentile) of a non-empty sample set.
std::pair<double, double> compute_percentile_bounds(std::span<const double> samples);

// F = alpha * norm(R) + (1 - alpha) * norm(D), in [0, 1].
double fused_metric(double R, double D, const FusedMetricParams& params,
                    const NormalizationBounds& bounds);

// Retrieval-based SD iff F strictly exceeds the threshold.
SdKind classify_segment(double F, double threshold);

// R, D, F over one full window (|points| == params.w).
WindowFeatures window_features(std::span<const TrajectoryPoint> points,
                               const FusedMetricParams& params,
                               const NormalizationBounds& bounds);

} // namespace hsd
