#pragma once

#include "seamforge/atlas.hpp"
#include "seamforge/mesh.hpp"
#include "seamforge/seam.hpp"

#include <string>
#include <vector>

namespace seamforge {

struct ChartMetrics {
    double area_3d = 0.0;
    double area_uv = 0.0;
    double compactness = 0.0;
    double convexity = 0.0;
    double jaggedness = 0.0;
    int flipped_triangles = 0;
};

struct AtlasReport {
    double overall_dist = 0.0;    // area-weighted mean of max(sigma, 1/sigma), >= 1
    double angular_dist = 0.0;    // area-weighted conformality 2*s1*s2/(s1^2+s2^2), <= 1
    int n_charts = 0;
    double compactness = 0.0;     // 4*pi*area/perimeter^2, area-weighted over charts
    double convexity = 0.0;       // area/convex hull area, area-weighted over charts
    double seam_len_ratio = 0.0;  // total 3D seam length / total 3D area
    double jaggedness = 0.0;      // mean |p[i-1]-2p[i]+p[i+1]| / sample spacing
    int degenerate_uv_triangles = 0;
    std::string flattener;
    std::vector<ChartMetrics> per_chart;
};

AtlasReport compute_metrics(const Mesh& mesh, const std::vector<UVChart>& charts,
                            const SeamEdgeSet& seams, int samples_per_loop = 128);

/// Area of the convex hull of a 2D point set (monotone chain).
double convex_hull_area(const std::vector<Eigen::Vector2d>& points);

/// Closed polyline resampled at `samples` uniform arc-length positions,
/// starting from the first input point.
std::vector<Eigen::Vector2d> resample_closed(const std::vector<Eigen::Vector2d>& points,
                                             int samples);

} // namespace seamforge
