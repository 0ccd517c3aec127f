#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

namespace dualspin::pointset {

using Point = std::array<double, 2>;

/// Largest pairwise distance in the set.
double diameter(std::span<const Point> pts);

/// Grassberger-Procaccia correlation-dimension estimate of a planar point
/// set: least-squares slope of log C(r) against log r over log-spaced
/// radii in [r_lo, r_hi]. Radii with an empty correlation sum are skipped.
/// At most max_points points are used (deterministic stride subsample).
double correlation_dimension(std::span<const Point> pts, double r_lo, double r_hi,
                             std::size_t n_radii = 16, std::size_t max_points = 3000);

struct Cluster {
    Point centroid{};
    std::size_t count = 0;
    double radius = 0.0;  ///< max distance of a member from the centroid
};

/// Greedy radius clustering: each point joins the first cluster whose
/// centroid lies within `radius`, else founds a new one. Cluster radii
/// are measured against the final centroids.
std::vector<Cluster> cluster_points(std::span<const Point> pts, double radius);

/// Largest nearest-neighbor distance over the set (the biggest "gap"
/// when the points sample a curve).
double max_nearest_neighbor_gap(std::span<const Point> pts);

/// Length of a greedy nearest-neighbor tour through all points, closed
/// back to the start. For dense samples of a closed curve this
/// approximates the curve length.
double nn_tour_length(std::span<const Point> pts);

}  // namespace dualspin::pointset
