#include "dualspin/pointset.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dualspin/errors.hpp"

namespace dualspin::pointset {

namespace {

inline double dist(const Point& a, const Point& b) {
    const double dx = a[0] - b[0];
    const double dy = a[1] - b[1];
    return std::sqrt(dx * dx + dy * dy);
}

std::vector<Point> subsample(std::span<const Point> pts, std::size_t max_points) {
    std::vector<Point> out;
    const std::size_t stride = (pts.size() + max_points - 1) / max_points;
    out.reserve(pts.size() / stride + 1);
    for (std::size_t i = 0; i < pts.size(); i += stride) out.push_back(pts[i]);
    return out;
}

}  // namespace

double diameter(std::span<const Point> pts) {
    double d = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j) d = std::max(d, dist(pts[i], pts[j]));
    return d;
}

double correlation_dimension(std::span<const Point> pts, double r_lo, double r_hi,
                             std::size_t n_radii, std::size_t max_points) {
    if (pts.size() < 10) throw InsufficientData("correlation_dimension: too few points");
    if (!(r_lo > 0.0) || !(r_hi > r_lo)) throw InvalidInput("correlation_dimension: bad radii");

    std::vector<Point> sub;
    if (pts.size() > max_points) sub = subsample(pts, max_points);
    std::span<const Point> p = sub.empty() ? pts : std::span<const Point>(sub);

    // Histogram pair distances into log-spaced radius bins, then cumulate.
    const double log_lo = std::log(r_lo);
    const double log_step = (std::log(r_hi) - log_lo) / static_cast<double>(n_radii - 1);
    std::vector<std::size_t> counts(n_radii, 0);
    for (std::size_t i = 0; i < p.size(); ++i) {
        for (std::size_t j = i + 1; j < p.size(); ++j) {
            const double d = dist(p[i], p[j]);
            if (d >= r_hi) continue;
            std::size_t bin;
            if (d <= r_lo) {
                bin = 0;
            } else {
                bin = static_cast<std::size_t>(std::ceil((std::log(d) - log_lo) / log_step));
                if (bin >= n_radii) continue;
            }
            ++counts[bin];
        }
    }
    const double n_pairs = 0.5 * static_cast<double>(p.size()) * static_cast<double>(p.size() - 1);
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::size_t used = 0, cum = 0;
    for (std::size_t k = 0; k < n_radii; ++k) {
        cum += counts[k];
        if (cum == 0) continue;
        const double lx = log_lo + log_step * static_cast<double>(k);
        const double ly = std::log(static_cast<double>(cum) / n_pairs);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        ++used;
    }
    if (used < 3) throw InsufficientData("correlation_dimension: no pairs in radius range");
    const double nf = static_cast<double>(used);
    return (nf * sxy - sx * sy) / (nf * sxx - sx * sx);
}

std::vector<Cluster> cluster_points(std::span<const Point> pts, double radius) {
    std::vector<Cluster> clusters;
    for (const Point& pt : pts) {
        bool placed = false;
        for (Cluster& cl : clusters) {
            if (dist(cl.centroid, pt) <= radius) {
                // Incremental centroid update.
                const double w = 1.0 / static_cast<double>(cl.count + 1);
                cl.centroid[0] += (pt[0] - cl.centroid[0]) * w;
                cl.centroid[1] += (pt[1] - cl.centroid[1]) * w;
                ++cl.count;
                placed = true;
                break;
            }
        }
        if (!placed) clusters.push_back({pt, 1, 0.0});
    }
    for (const Point& pt : pts) {
        Cluster* best = nullptr;
        double best_d = std::numeric_limits<double>::infinity();
        for (Cluster& cl : clusters) {
            const double d = dist(cl.centroid, pt);
            if (d < best_d) {
                best_d = d;
                best = &cl;
            }
        }
        if (best) best->radius = std::max(best->radius, best_d);
    }
    return clusters;
}

double max_nearest_neighbor_gap(std::span<const Point> pts) {
    if (pts.size() < 2) throw InsufficientData("max_nearest_neighbor_gap: too few points");
    double gap = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        double nn = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < pts.size(); ++j) {
            if (i == j) continue;
            nn = std::min(nn, dist(pts[i], pts[j]));
        }
        gap = std::max(gap, nn);
    }
    return gap;
}

double nn_tour_length(std::span<const Point> pts) {
    if (pts.size() < 2) throw InsufficientData("nn_tour_length: too few points");
    std::vector<bool> visited(pts.size(), false);
    std::size_t current = 0;
    visited[0] = true;
    double length = 0.0;
    for (std::size_t step = 1; step < pts.size(); ++step) {
        double best_d = std::numeric_limits<double>::infinity();
        std::size_t best_j = 0;
        for (std::size_t j = 0; j < pts.size(); ++j) {
            if (visited[j]) continue;
            const double d = dist(pts[current], pts[j]);
            if (d < best_d) {
                best_d = d;
                best_j = j;
            }
        }
        length += best_d;
        current = best_j;
        visited[current] = true;
    }
    length += dist(pts[current], pts[0]);
    return length;
}

}  // namespace dualspin::pointset
