#include "hsd/kinematics.hpp"

#include "hsd/errors.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <string>

namespace hsd {

void NormalizationBounds::validate() const {
    if (!(d_min >= 0.0) || !(r_min >= 0.0)) throw ConfigError("normalization bounds must be nonnegative");
    if (d_min > d_max95) throw ConfigError("d_min exceeds d_max95");
    if (r_min > r_max95) throw ConfigError("r_min exceeds r_max95");
}

void FusedMetricParams::validate() const {
    if (!(alpha >= 0.0 && alpha <= 1.0)) throw ConfigError("metric.alpha must lie in [0,1]");
    if (w < 3) throw ConfigError("metric.window must be >= 3");
    if (!(threshold >= 0.0 && threshold <= 1.0)) throw ConfigError("metric.threshold must lie in [0,1]");
    if (!(r_cap > 0.0)) throw ConfigError("metric.r_cap must be positive");
}

const char* to_string(SdKind kind) {
    return kind == SdKind::retrieval_sd ? "retrieval_sd" : "drafter_sd";
}

static void check_finite(std::span<const TrajectoryPoint> points) {
    for (const auto& p : points) {
        if (!std::isfinite(p.x) || !std::isfinite(p.y) || !std::isfinite(p.z)) {
            throw InvalidInputError("non-finite trajectory point");
        }
    }
}

std::vector<Vec2> project_window(std::span<const TrajectoryPoint> points) {
    if (points.size() < 3) {
        throw InvalidInputError("projection needs at least 3 points, got " +
                                std::to_string(points.size()));
    }
    check_finite(points);

    const auto n = static_cast<Eigen::Index>(points.size());
    Eigen::Matrix<double, Eigen::Dynamic, 3> centered(n, 3);
    Eigen::RowVector3d mean = Eigen::RowVector3d::Zero();
    for (Eigen::Index i = 0; i < n; ++i) {
        centered.row(i) << points[static_cast<size_t>(i)].x, points[static_cast<size_t>(i)].y,
            points[static_cast<size_t>(i)].z;
        mean += centered.row(i);
    }
    mean /= static_cast<double>(n);
    centered.rowwise() -= mean;

    const Eigen::Matrix3d cov = centered.transpose() * centered;
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> eig(cov);
    // Eigenvalues ascending; the plane is spanned by the top two directions.
    Eigen::Vector3d axis_u = eig.eigenvectors().col(2);
    Eigen::Vector3d axis_v = eig.eigenvectors().col(1);

    // Fix the sign convention so output is deterministic across platforms.
    auto canonical = [](Eigen::Vector3d& a) {
        int lead = 0;
        a.cwiseAbs().maxCoeff(&lead);
        if (a[lead] < 0.0) a = -a;
    };
    canonical(axis_u);
    canonical(axis_v);

    std::vector<Vec2> out(points.size());
    for (Eigen::Index i = 0; i < n; ++i) {
        out[static_cast<size_t>(i)] = {centered.row(i).dot(axis_u), centered.row(i).dot(axis_v)};
    }
    return out;
}

static double max_pairwise_distance(std::span<const Vec2> points) {
    double best = 0.0;
    for (size_t i = 0; i < points.size(); ++i) {
        for (size_t j = i + 1; j < points.size(); ++j) {
            best = std::max(best, distance(points[i], points[j]));
        }
    }
    return best;
}

namespace {

struct RadiusObjective {
    // Returns sum of squared (r_i - mu) residuals at center c.
    static double eval(std::span<const Vec2> pts, const Eigen::Vector2d& c) {
        double mu = 0.0;
        for (const auto& p : pts) mu += std::hypot(p.u - c.x(), p.v - c.y());
        mu /= static_cast<double>(pts.size());
        double s = 0.0;
        for (const auto& p : pts) {
            const double r = std::hypot(p.u - c.x(), p.v - c.y());
            s += (r - mu) * (r - mu);
        }
        return s;
    }
};

} // namespace

CircleFit fit_circle_center(std::span<const Vec2> points) {
    if (points.size() < 3) {
        throw InvalidInputError("circle fit needs at least 3 points");
    }
    for (const auto& p : points) {
        if (!std::isfinite(p.u) || !std::isfinite(p.v)) {
            throw InvalidInputError("non-finite point in circle fit");
        }
    }

    const auto n = static_cast<double>(points.size());
    Eigen::Vector2d centroid(0.0, 0.0);
    for (const auto& p : points) centroid += Eigen::Vector2d(p.u, p.v);
    centroid /= n;

    const double spread = max_pairwise_distance(points);
    CircleFit fit;
    if (spread < 1e-9) {
        fit.center = {centroid.x(), centroid.y()};
        fit.degenerate = true;
        return fit;
    }

    // Collinear windows make the centroid a stationary point of the
    // objective (the perpendicular gradient vanishes there), so Gauss-Newton
    // would stall on the line. Detect rank deficiency of the 2-D scatter and
    // start off-line along the minor axis instead; the iteration then drives
    // the center outward and the caller's radius cap takes over.
    Eigen::Matrix2d scatter = Eigen::Matrix2d::Zero();
    for (const auto& p : points) {
        const Eigen::Vector2d d = Eigen::Vector2d(p.u, p.v) - centroid;
        scatter += d * d.transpose();
    }
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> eig(scatter);
    Eigen::Vector2d center = centroid;
    if (eig.eigenvalues()(0) <= 1e-12 * eig.eigenvalues()(1)) {
        center += eig.eigenvectors().col(0) * spread;
    }

    constexpr int kMaxIterations = 100;
    constexpr double kStepTol = 1e-10;
    double lambda = 1e-6;
    double objective = RadiusObjective::eval(points, center);

    for (int iter = 0; iter < kMaxIterations; ++iter) {
        fit.iterations = iter + 1;

        // Residuals f_i = r_i - mu and Jacobian rows J_i = -u_i + mean_j u_j,
        // with u_i the unit vector from the center to point i.
        Eigen::VectorXd radii(points.size());
        Eigen::MatrixX2d units(points.size(), 2);
        double mu = 0.0;
        for (size_t i = 0; i < points.size(); ++i) {
            const Eigen::Vector2d d = Eigen::Vector2d(points[i].u, points[i].v) - center;
            const double r = d.norm();
            radii(static_cast<Eigen::Index>(i)) = r;
            units.row(static_cast<Eigen::Index>(i)) =
                r > 0.0 ? (d / r).transpose() : Eigen::RowVector2d::Zero();
            mu += r;
        }
        mu /= n;
        const Eigen::RowVector2d mean_unit = units.colwise().mean();

        Eigen::Matrix2d jtj = Eigen::Matrix2d::Zero();
        Eigen::Vector2d jtf = Eigen::Vector2d::Zero();
        for (Eigen::Index i = 0; i < radii.size(); ++i) {
            const Eigen::RowVector2d jrow = -units.row(i) + mean_unit;
            const double f = radii(i) - mu;
            jtj += jrow.transpose() * jrow;
            jtf += jrow.transpose() * f;
        }

        bool moved = false;
        for (int attempt = 0; attempt < 25; ++attempt) {
            const Eigen::Matrix2d damped = jtj + lambda * Eigen::Matrix2d::Identity();
            const Eigen::Vector2d step = damped.ldlt().solve(-jtf);
            if (!step.allFinite()) {
                lambda *= 10.0;
                continue;
            }
            const Eigen::Vector2d candidate = center + step;
            const double cand_obj = RadiusObjective::eval(points, candidate);
            if (cand_obj <= objective) {
                center = candidate;
                objective = cand_obj;
                lambda = std::max(lambda * 0.3, 1e-12);
                moved = step.norm() >= kStepTol;
                if (!moved) {
                    fit.center = {center.x(), center.y()};
                    return fit;
                }
                break;
            }
            lambda *= 10.0;
        }
        if (!moved) break; // damping exhausted without an acceptable step
    }

    fit.center = {center.x(), center.y()};
    return fit;
}

double curvature_radius(std::span<const TrajectoryPoint> points, double r_cap) {
    if (!(r_cap > 0.0)) throw ConfigError("r_cap must be positive");
    const std::vector<Vec2> projected = project_window(points);
    const CircleFit fit = fit_circle_center(projected);
    if (fit.degenerate) return 0.0;
    double mean_r = 0.0;
    for (const auto& p : projected) mean_r += distance(p, fit.center);
    mean_r /= static_cast<double>(projected.size());
    return std::min(mean_r, r_cap);
}

double cumulative_displacement(std::span<const TrajectoryPoint> points) {
    if (points.size() < 2) {
        throw InvalidInputError("displacement needs at least 2 points");
    }
    check_finite(points);
    double total = 0.0;
    for (size_t i = 0; i + 1 < points.size(); ++i) {
        total += distance(points[i].pos(), points[i + 1].pos());
    }
    return total;
}

double normalize(double x, double lo, double hi95) {
    if (lo > hi95) throw InvalidInputError("normalization bounds inverted");
    if (lo == hi95) return 0.0; // degenerate bounds
    return std::clamp((x - lo) / (hi95 - lo), 0.0, 1.0);
}

std::pair<double, double> compute_percentile_bounds(std::span<const double> samples) {
    if (samples.empty()) throw InvalidInputError("percentile of empty sample set");
    std::vector<double> sorted(samples.begin(), samples.end());
    std::sort(sorted.begin(), sorted.end());
    const auto n = sorted.size();
    // Nearest-rank: the value at 1-based rank ceil(0.95 * n).
    const auto rank = static_cast<size_t>(std::ceil(0.95 * static_cast<double>(n)));
    const size_t idx = std::min(n - 1, std::max<size_t>(rank, 1) - 1);
    return {sorted.front(), sorted[idx]};
}

double fused_metric(double R, double D, const FusedMetricParams& params,
                    const NormalizationBounds& bounds) {
    if (R < 0.0 || D < 0.0) throw InvalidInputError("R and D must be nonnegative");
    const double nr = normalize(R, bounds.r_min, bounds.r_max95);
    const double nd = normalize(D, bounds.d_min, bounds.d_max95);
    return params.alpha * nr + (1.0 - params.alpha) * nd;
}

SdKind classify_segment(double F, double threshold) {
    return F > threshold ? SdKind::retrieval_sd : SdKind::drafter_sd;
}

WindowFeatures window_features(std::span<const TrajectoryPoint> points,
                               const FusedMetricParams& params,
                               const NormalizationBounds& bounds) {
    if (points.size() != static_cast<size_t>(params.w)) {
        throw InvalidInputError("window_features expects exactly w points");
    }
    WindowFeatures f;
    f.w = params.w;
    f.R = curvature_radius(points, params.r_cap);
    f.D = cumulative_displacement(points);
    f.F = fused_metric(f.R, f.D, params, bounds);
    return f;
}

} // namespace hsd
