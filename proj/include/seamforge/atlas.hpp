#pragma once

#include "seamforge/mesh.hpp"
#include "seamforge/seam.hpp"

#include <string>
#include <vector>

namespace seamforge {

/// One cut-out piece of the parent mesh. Vertices incident to seams are
/// duplicated per side, so the chart is an independent mesh. Boundary loops
/// are closed chart-vertex cycles following face orientation (the first
/// vertex is not repeated at the end).
struct Chart {
    std::vector<int> parent_faces;  // parent face id of chart face i
    Mesh mesh;                      // chart-local (no UVs)
    std::vector<int> vertex_map;    // chart vertex -> parent vertex
    std::vector<std::vector<int>> boundary_loops;
    int euler_characteristic = 0;
    bool disk_topology = false;
};

/// Faces grouped by connected_components with seam edges blocked; seam and
/// boundary vertices duplicated per side via corner gluing.
std::vector<Chart> cut_mesh(const Mesh& mesh, const AdjacencyTable& adjacency,
                            const SeamEdgeSet& seams);

struct UVChart {
    Chart chart;
    Eigen::MatrixX2d uv;  // per chart vertex
    std::string flattener;
    int flipped_triangles = 0;

    double uv_area() const;                    // sum of |signed| triangle areas
    double uv_signed_area(int face) const;
    double boundary_length_uv() const;
};

/// Barycentric (uniform-weight) embedding with the longest boundary loop on
/// a circle, scaled so UV area equals chart 3D area. Injective on disk
/// charts. Throws on non-disk input.
UVChart flatten_tutte(const Chart& chart);

/// Least-squares conformal map pinned at the farthest boundary pair.
/// Falls back to Tutte when the system is singular; flips are reported.
UVChart flatten_lscm(const Chart& chart);

/// Assigns UVs straight from the parent mesh's corner UVs (evaluating an
/// existing layout instead of re-flattening). Seam-side duplication makes
/// the per-chart assignment well defined.
UVChart chart_uv_from_corners(const Chart& chart, const Mesh& parent);

/// Shelf packing into the unit square: per-chart translation plus one
/// global uniform scale, so all distortion metrics are unaffected.
struct PackedAtlas {
    std::vector<UVChart> charts;
    double scale = 1.0;
    double margin = 0.01;
};

PackedAtlas pack_charts(std::vector<UVChart> charts, double margin = 0.01);

/// Adds auto-generated cut edges until every chart is a disk: shortest
/// paths merge extra boundary loops, a short seed slit opens closed charts,
/// and a pruned dual-tree cut graph breaks handles.
struct AutoCutResult {
    SeamEdgeSet augmented;
    std::vector<Edge> added_edges;
};

AutoCutResult auto_cut_to_disks(const Mesh& mesh, const AdjacencyTable& adjacency,
                                const SeamEdgeSet& seams, int max_rounds = 16);

/// Parent mesh with corner UVs taken from the packed charts.
Mesh atlas_mesh(const Mesh& parent, const PackedAtlas& packed);

} // namespace seamforge
