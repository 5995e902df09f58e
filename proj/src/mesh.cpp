#include "seamforge/mesh.hpp"

#include "seamforge/error.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <set>
#include <sstream>

namespace seamforge {

Eigen::Vector3d Mesh::face_normal(int f) const {
    Eigen::Vector3d a = positions.row(faces(f, 0));
    Eigen::Vector3d b = positions.row(faces(f, 1));
    Eigen::Vector3d c = positions.row(faces(f, 2));
    Eigen::Vector3d n = (b - a).cross(c - a);
    double len = n.norm();
    return len > 0.0 ? Eigen::Vector3d(n / len) : Eigen::Vector3d::Zero();
}

double Mesh::face_area(int f) const {
    Eigen::Vector3d a = positions.row(faces(f, 0));
    Eigen::Vector3d b = positions.row(faces(f, 1));
    Eigen::Vector3d c = positions.row(faces(f, 2));
    return 0.5 * (b - a).cross(c - a).norm();
}

double Mesh::surface_area() const {
    double total = 0.0;
    for (int f = 0; f < face_count(); ++f) total += face_area(f);
    return total;
}

Eigen::Vector2d Mesh::corner_uv(int f, int v) const {
    for (int k = 0; k < 3; ++k) {
        if (faces(f, k) == v) return corner_uvs.row(3 * f + k);
    }
    throw_domain("vertex " + std::to_string(v) + " is not a corner of face " +
                 std::to_string(f));
}

Eigen::MatrixX3d Mesh::vertex_normals() const {
    Eigen::MatrixX3d normals = Eigen::MatrixX3d::Zero(vertex_count(), 3);
    for (int f = 0; f < face_count(); ++f) {
        Eigen::Vector3d a = positions.row(faces(f, 0));
        Eigen::Vector3d b = positions.row(faces(f, 1));
        Eigen::Vector3d c = positions.row(faces(f, 2));
        Eigen::Vector3d n = (b - a).cross(c - a);  // area-weighted
        for (int k = 0; k < 3; ++k) normals.row(faces(f, k)) += n.transpose();
    }
    for (int i = 0; i < normals.rows(); ++i) {
        double len = normals.row(i).norm();
        if (len > 0.0) normals.row(i) /= len;
    }
    return normals;
}

void Mesh::validate() const {
    const int n = vertex_count();
    for (int f = 0; f < face_count(); ++f) {
        int a = faces(f, 0), b = faces(f, 1), c = faces(f, 2);
        if (a < 0 || b < 0 || c < 0 || a >= n || b >= n || c >= n) {
            throw_domain("face " + std::to_string(f) + " has a vertex index out of range");
        }
        if (a == b || b == c || a == c) {
            throw_domain("face " + std::to_string(f) + " is degenerate");
        }
    }
    if (corner_uvs.rows() != 0 && corner_uvs.rows() != 3 * face_count()) {
        throw_domain("corner_uvs row count must be 3 x face count");
    }
}

AdjacencyTable build_adjacency(const Mesh& mesh) {
    AdjacencyTable table;
    table.neighbors.assign(mesh.vertex_count(), {});

    for (int f = 0; f < mesh.face_count(); ++f) {
        for (int k = 0; k < 3; ++k) {
            int a = mesh.faces(f, k);
            int b = mesh.faces(f, (k + 1) % 3);
            Edge e = make_edge(a, b);
            auto [it, inserted] = table.edge_faces.try_emplace(e, std::array<int, 2>{f, -1});
            if (!inserted) {
                if (it->second[1] >= 0) {
                    throw_domain("non-manifold edge (" + std::to_string(e.first) + ", " +
                                 std::to_string(e.second) + "): more than 2 incident faces");
                }
                it->second[1] = f;
            }
        }
    }
    for (const auto& [e, fs] : table.edge_faces) {
        table.neighbors[e.first].push_back(e.second);
        table.neighbors[e.second].push_back(e.first);
    }
    for (auto& nbrs : table.neighbors) std::sort(nbrs.begin(), nbrs.end());
    return table;
}

double patch_area(const Mesh& mesh, const Patch& patch) {
    double total = 0.0;
    for (int f : patch.faces) total += mesh.face_area(f);
    return total;
}

std::vector<Patch> connected_components(const Mesh& mesh,
                                        const std::vector<int>& faces,
                                        const std::vector<Edge>& blocked_edges) {
    std::set<Edge> blocked(blocked_edges.begin(), blocked_edges.end());

    // Face-to-face adjacency through shared unblocked edges, restricted to
    // the requested face set.
    std::map<Edge, std::array<int, 2>> edge_faces;
    std::set<int> in_set(faces.begin(), faces.end());
    for (int f : faces) {
        for (int k = 0; k < 3; ++k) {
            Edge e = make_edge(mesh.faces(f, k), mesh.faces(f, (k + 1) % 3));
            auto [it, inserted] = edge_faces.try_emplace(e, std::array<int, 2>{f, -1});
            if (!inserted && it->second[0] != f) it->second[1] = f;
        }
    }

    std::map<int, std::vector<int>> face_nbrs;
    for (const auto& [e, fs] : edge_faces) {
        if (fs[1] < 0 || blocked.count(e)) continue;
        face_nbrs[fs[0]].push_back(fs[1]);
        face_nbrs[fs[1]].push_back(fs[0]);
    }

    std::vector<Patch> result;
    std::set<int> visited;
    std::vector<int> ordered(faces);
    std::sort(ordered.begin(), ordered.end());
    for (int seed : ordered) {
        if (visited.count(seed)) continue;
        Patch patch;
        std::queue<int> frontier;
        frontier.push(seed);
        visited.insert(seed);
        while (!frontier.empty()) {
            int f = frontier.front();
            frontier.pop();
            patch.faces.push_back(f);
            auto it = face_nbrs.find(f);
            if (it == face_nbrs.end()) continue;
            for (int g : it->second) {
                if (visited.insert(g).second) frontier.push(g);
            }
        }
        std::sort(patch.faces.begin(), patch.faces.end());
        patch.area = patch_area(mesh, patch);
        result.push_back(std::move(patch));
    }
    return result;
}

SubMesh extract_submesh(const Mesh& mesh, const std::vector<int>& faces) {
    SubMesh sub;
    std::map<int, int> parent_to_sub;
    for (int f : faces) {
        for (int k = 0; k < 3; ++k) {
            int v = mesh.faces(f, k);
            if (parent_to_sub.emplace(v, 0).second) sub.vertex_map.push_back(v);
        }
    }
    std::sort(sub.vertex_map.begin(), sub.vertex_map.end());
    for (size_t i = 0; i < sub.vertex_map.size(); ++i) {
        parent_to_sub[sub.vertex_map[i]] = static_cast<int>(i);
    }

    sub.mesh.positions.resize(static_cast<int>(sub.vertex_map.size()), 3);
    for (size_t i = 0; i < sub.vertex_map.size(); ++i) {
        sub.mesh.positions.row(static_cast<int>(i)) = mesh.positions.row(sub.vertex_map[i]);
    }
    sub.mesh.faces.resize(static_cast<int>(faces.size()), 3);
    bool has_uvs = mesh.has_uvs();
    if (has_uvs) sub.mesh.corner_uvs.resize(3 * static_cast<int>(faces.size()), 2);
    for (size_t i = 0; i < faces.size(); ++i) {
        for (int k = 0; k < 3; ++k) {
            sub.mesh.faces(static_cast<int>(i), k) = parent_to_sub[mesh.faces(faces[i], k)];
            if (has_uvs) {
                sub.mesh.corner_uvs.row(3 * static_cast<int>(i) + k) =
                    mesh.corner_uvs.row(3 * faces[i] + k);
            }
        }
    }
    return sub;
}

} // namespace seamforge
