#pragma once

#include <Eigen/Core>

#include <array>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace seamforge {

/// Canonical undirected edge: (min, max) vertex pair.
using Edge = std::pair<int, int>;

inline Edge make_edge(int a, int b) {
    return a < b ? Edge{a, b} : Edge{b, a};
}

/// Indexed triangle mesh. Positions are rows of `positions`; faces index into
/// them. `corner_uvs` (when non-empty) stores one UV per face corner, row
/// 3*f + k for corner k of face f.
struct Mesh {
    Eigen::MatrixX3d positions;   // N x 3
    Eigen::MatrixX3i faces;       // F x 3
    Eigen::MatrixX2d corner_uvs;  // 3F x 2 or 0 x 2

    int vertex_count() const { return static_cast<int>(positions.rows()); }
    int face_count() const { return static_cast<int>(faces.rows()); }
    bool has_uvs() const { return corner_uvs.rows() > 0; }

    Eigen::Vector3d face_normal(int f) const;
    double face_area(int f) const;
    double surface_area() const;

    /// UV of vertex v as stored in face f. v must be a corner of f.
    Eigen::Vector2d corner_uv(int f, int v) const;

    /// Area-weighted vertex normals (zero-safe normalization).
    Eigen::MatrixX3d vertex_normals() const;

    /// Throws on out-of-range indices, degenerate faces, or a corner_uvs
    /// row count that does not equal 3 * face_count().
    void validate() const;
};

/// Per-vertex 1-ring table plus edge -> incident faces map. Neighbor lists
/// are sorted; edges are canonical (min, max) pairs.
struct AdjacencyTable {
    std::vector<std::vector<int>> neighbors;
    std::map<Edge, std::array<int, 2>> edge_faces;  // second slot -1 for boundary

    bool is_boundary_edge(const Edge& e) const {
        auto it = edge_faces.find(e);
        return it != edge_faces.end() && it->second[1] < 0;
    }
    bool has_edge(const Edge& e) const { return edge_faces.count(e) > 0; }
    bool adjacent(int a, int b) const { return has_edge(make_edge(a, b)); }
};

/// Edge-connected face subset of a parent mesh, with cached surface area.
struct Patch {
    std::vector<int> faces;  // sorted
    double area = 0.0;
};

/// Builds the 1-ring table. Throws a domain error naming the offending edge
/// if any edge has more than two incident faces.
AdjacencyTable build_adjacency(const Mesh& mesh);

double patch_area(const Mesh& mesh, const Patch& patch);

/// Partitions `faces` into maximal components connected through shared
/// edges not listed in `blocked_edges`. Components are ordered by their
/// smallest contained face index; faces within a component are sorted.
std::vector<Patch> connected_components(const Mesh& mesh,
                                        const std::vector<int>& faces,
                                        const std::vector<Edge>& blocked_edges);

/// Sub-mesh of `faces` with vertices re-indexed densely.
/// `vertex_map[i]` is the parent index of sub-mesh vertex i.
struct SubMesh {
    Mesh mesh;
    std::vector<int> vertex_map;
};

SubMesh extract_submesh(const Mesh& mesh, const std::vector<int>& faces);

} // namespace seamforge
