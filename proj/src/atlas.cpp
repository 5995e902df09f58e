#include "seamforge/atlas.hpp"

#include "seamforge/error.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <queue>
#include <set>

namespace seamforge {

namespace {

struct DisjointSet {
    std::vector<int> parent;
    explicit DisjointSet(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
};

Chart build_chart(const Mesh& mesh, const AdjacencyTable& adjacency, const SeamEdgeSet& seams,
                  const std::vector<int>& faces) {
    const int nf = static_cast<int>(faces.size());
    std::map<int, int> face_local;
    for (int i = 0; i < nf; ++i) face_local[faces[i]] = i;

    // Corner gluing: corners of the same parent vertex merge across shared
    // non-seam edges whose two faces both lie in this component.
    DisjointSet corners(3 * nf);
    for (int i = 0; i < nf; ++i) {
        int f = faces[i];
        for (int k = 0; k < 3; ++k) {
            int a = mesh.faces(f, k);
            int b = mesh.faces(f, (k + 1) % 3);
            Edge e = make_edge(a, b);
            if (seams.contains(e)) continue;
            const auto& fs = adjacency.edge_faces.at(e);
            int g = fs[0] == f ? fs[1] : fs[0];
            if (g < 0) continue;
            auto it = face_local.find(g);
            if (it == face_local.end()) continue;
            int j = it->second;
            // Merge matching-vertex corners of f and g.
            for (int v : {a, b}) {
                int ck = -1, cj = -1;
                for (int t = 0; t < 3; ++t) {
                    if (mesh.faces(f, t) == v) ck = t;
                    if (mesh.faces(g, t) == v) cj = t;
                }
                corners.unite(3 * i + ck, 3 * j + cj);
            }
        }
    }

    Chart chart;
    chart.parent_faces = faces;

    std::map<int, int> root_to_vertex;
    std::vector<int> corner_vertex(3 * nf);
    for (int c = 0; c < 3 * nf; ++c) {
        int root = corners.find(c);
        auto [it, inserted] =
            root_to_vertex.try_emplace(root, static_cast<int>(root_to_vertex.size()));
        corner_vertex[c] = it->second;
    }

    const int nv = static_cast<int>(root_to_vertex.size());
    chart.mesh.positions.resize(nv, 3);
    chart.vertex_map.assign(nv, -1);
    chart.mesh.faces.resize(nf, 3);
    for (int i = 0; i < nf; ++i) {
        for (int k = 0; k < 3; ++k) {
            int cv = corner_vertex[3 * i + k];
            int pv = mesh.faces(faces[i], k);
            chart.mesh.faces(i, k) = cv;
            chart.vertex_map[cv] = pv;
            chart.mesh.positions.row(cv) = mesh.positions.row(pv);
        }
    }

    // Halfedge twins inside the chart: halfedge h = 3*i + k runs from corner
    // k to corner k+1 of local face i. Boundary halfedges keep twin -1.
    std::vector<int> twin(3 * nf, -1);
    std::map<std::pair<int, int>, int> directed;  // (from, to) chart vertices
    for (int i = 0; i < nf; ++i) {
        for (int k = 0; k < 3; ++k) {
            int a = chart.mesh.faces(i, k);
            int b = chart.mesh.faces(i, (k + 1) % 3);
            directed[{a, b}] = 3 * i + k;
        }
    }
    for (const auto& [ab, h] : directed) {
        auto it = directed.find({ab.second, ab.first});
        if (it != directed.end()) twin[h] = it->second;
    }

    auto he_next = [](int h) { return (h / 3) * 3 + (h % 3 + 1) % 3; };
    auto he_from = [&](int h) { return chart.mesh.faces(h / 3, h % 3); };

    int boundary_count = 0;
    std::vector<bool> visited(3 * nf, false);
    for (int h0 = 0; h0 < 3 * nf; ++h0) {
        if (twin[h0] >= 0 || visited[h0]) continue;
        std::vector<int> loop;
        int h = h0;
        do {
            visited[h] = true;
            ++boundary_count;
            loop.push_back(he_from(h));
            // Rotate around the head vertex to the next boundary halfedge.
            int candidate = he_next(h);
            while (twin[candidate] >= 0) candidate = he_next(twin[candidate]);
            h = candidate;
        } while (h != h0);
        chart.boundary_loops.push_back(std::move(loop));
    }

    int n_edges = (3 * nf - boundary_count) / 2 + boundary_count;
    chart.euler_characteristic = nv - n_edges + nf;
    chart.disk_topology =
        chart.euler_characteristic == 1 && chart.boundary_loops.size() == 1;
    return chart;
}

} // namespace

std::vector<Chart> cut_mesh(const Mesh& mesh, const AdjacencyTable& adjacency,
                            const SeamEdgeSet& seams) {
    std::vector<int> all(mesh.face_count());
    std::iota(all.begin(), all.end(), 0);
    auto components = connected_components(mesh, all, {seams.edges.begin(), seams.edges.end()});

    std::vector<Chart> charts;
    charts.reserve(components.size());
    for (const Patch& comp : components) {
        charts.push_back(build_chart(mesh, adjacency, seams, comp.faces));
    }
    return charts;
}

double UVChart::uv_signed_area(int face) const {
    Eigen::Vector2d a = uv.row(chart.mesh.faces(face, 0));
    Eigen::Vector2d b = uv.row(chart.mesh.faces(face, 1));
    Eigen::Vector2d c = uv.row(chart.mesh.faces(face, 2));
    return 0.5 * ((b.x() - a.x()) * (c.y() - a.y()) - (c.x() - a.x()) * (b.y() - a.y()));
}

double UVChart::uv_area() const {
    double total = 0.0;
    for (int f = 0; f < chart.mesh.face_count(); ++f) total += std::abs(uv_signed_area(f));
    return total;
}

double UVChart::boundary_length_uv() const {
    double total = 0.0;
    for (const auto& loop : chart.boundary_loops) {
        for (size_t i = 0; i < loop.size(); ++i) {
            total += (uv.row(loop[i]) - uv.row(loop[(i + 1) % loop.size()])).norm();
        }
    }
    return total;
}

namespace {

double loop_length_3d(const Chart& chart, const std::vector<int>& loop) {
    double total = 0.0;
    for (size_t i = 0; i < loop.size(); ++i) {
        total += (chart.mesh.positions.row(loop[i]) -
                  chart.mesh.positions.row(loop[(i + 1) % loop.size()]))
                     .norm();
    }
    return total;
}

void scale_to_surface_area(UVChart& uvchart) {
    double a3 = uvchart.chart.mesh.surface_area();
    double auv = uvchart.uv_area();
    if (auv > 0.0 && a3 > 0.0) uvchart.uv *= std::sqrt(a3 / auv);
}

int count_flips(const UVChart& uvchart) {
    int flips = 0;
    for (int f = 0; f < uvchart.chart.mesh.face_count(); ++f) {
        if (uvchart.uv_signed_area(f) <= 0.0) ++flips;
    }
    return flips;
}

} // namespace

UVChart flatten_tutte(const Chart& chart) {
    if (!chart.disk_topology) {
        throw_domain("flatten_tutte requires a disk chart (euler " +
                     std::to_string(chart.euler_characteristic) + ", " +
                     std::to_string(chart.boundary_loops.size()) + " boundary loops)");
    }
    const int nv = chart.mesh.vertex_count();

    const std::vector<int>* boundary = &chart.boundary_loops.front();
    for (const auto& loop : chart.boundary_loops) {
        if (loop_length_3d(chart, loop) > loop_length_3d(chart, *boundary)) boundary = &loop;
    }

    UVChart out;
    out.chart = chart;
    out.flattener = "tutte";
    out.uv = Eigen::MatrixX2d::Zero(nv, 2);

    // Boundary on a circle, spaced by 3D arc length, following the loop's
    // face-induced orientation.
    double total = loop_length_3d(chart, *boundary);
    if (total <= 0.0) throw_domain("degenerate chart boundary");
    std::vector<bool> fixed(nv, false);
    double acc = 0.0;
    for (size_t i = 0; i < boundary->size(); ++i) {
        double angle = 2.0 * M_PI * acc / total;
        out.uv.row((*boundary)[i]) = Eigen::Vector2d(std::cos(angle), std::sin(angle));
        fixed[(*boundary)[i]] = true;
        acc += (chart.mesh.positions.row((*boundary)[i]) -
                chart.mesh.positions.row((*boundary)[(i + 1) % boundary->size()]))
                   .norm();
    }

    // Interior: uniform-weight Laplace, each vertex the mean of its 1-ring.
    AdjacencyTable adj = build_adjacency(chart.mesh);
    std::vector<int> interior_index(nv, -1);
    int n_interior = 0;
    for (int v = 0; v < nv; ++v) {
        if (!fixed[v]) interior_index[v] = n_interior++;
    }
    if (n_interior > 0) {
        std::vector<Eigen::Triplet<double>> triplets;
        Eigen::MatrixX2d rhs = Eigen::MatrixX2d::Zero(n_interior, 2);
        for (int v = 0; v < nv; ++v) {
            if (fixed[v]) continue;
            int row = interior_index[v];
            triplets.emplace_back(row, row, static_cast<double>(adj.neighbors[v].size()));
            for (int nbr : adj.neighbors[v]) {
                if (fixed[nbr]) {
                    rhs.row(row) += out.uv.row(nbr);
                } else {
                    triplets.emplace_back(row, interior_index[nbr], -1.0);
                }
            }
        }
        Eigen::SparseMatrix<double> laplacian(n_interior, n_interior);
        laplacian.setFromTriplets(triplets.begin(), triplets.end());
        Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver(laplacian);
        if (solver.info() != Eigen::Success) throw_domain("tutte system factorization failed");
        Eigen::MatrixX2d solution = solver.solve(rhs);
        for (int v = 0; v < nv; ++v) {
            if (!fixed[v]) out.uv.row(v) = solution.row(interior_index[v]);
        }
    }

    scale_to_surface_area(out);
    out.flipped_triangles = count_flips(out);
    return out;
}

UVChart flatten_lscm(const Chart& chart) {
    if (chart.mesh.vertex_count() < 3) throw_domain("lscm needs at least 3 vertices");
    if (!chart.disk_topology) throw_domain("flatten_lscm requires a disk chart");
    const int nv = chart.mesh.vertex_count();
    const int nf = chart.mesh.face_count();

    // Pin the farthest pair of boundary vertices.
    const auto& boundary = chart.boundary_loops.front();
    int pin_a = boundary[0], pin_b = boundary[0];
    double best = -1.0;
    for (size_t i = 0; i < boundary.size(); ++i) {
        for (size_t j = i + 1; j < boundary.size(); ++j) {
            double d = (chart.mesh.positions.row(boundary[i]) -
                        chart.mesh.positions.row(boundary[j]))
                           .norm();
            if (d > best) {
                best = d;
                pin_a = boundary[i];
                pin_b = boundary[j];
            }
        }
    }
    if (pin_a == pin_b) throw_domain("lscm could not pick two pin vertices");

    std::vector<int> unknown(nv, -1);
    int n_unknown = 0;
    for (int v = 0; v < nv; ++v) {
        if (v != pin_a && v != pin_b) unknown[v] = n_unknown++;
    }
    Eigen::Vector2d uv_a(0.0, 0.0), uv_b(1.0, 0.0);

    Eigen::VectorXd rhs_dense = Eigen::VectorXd::Zero(2 * nf);
    std::vector<Eigen::Triplet<double>> a_triplets;

    for (int f = 0; f < nf; ++f) {
        Eigen::Vector3d q0 = chart.mesh.positions.row(chart.mesh.faces(f, 0));
        Eigen::Vector3d q1 = chart.mesh.positions.row(chart.mesh.faces(f, 1));
        Eigen::Vector3d q2 = chart.mesh.positions.row(chart.mesh.faces(f, 2));
        Eigen::Vector3d normal = (q1 - q0).cross(q2 - q0);
        double two_area = normal.norm();
        if (two_area <= 0.0) continue;  // degenerate face contributes nothing
        Eigen::Vector3d x_axis = (q1 - q0).normalized();
        Eigen::Vector3d y_axis = normal.normalized().cross(x_axis);
        double x1 = (q1 - q0).norm();
        double x2 = (q2 - q0).dot(x_axis);
        double y2 = (q2 - q0).dot(y_axis);

        // Conformality residual coefficients, scaled by 1/sqrt(2A).
        double s = 1.0 / std::sqrt(two_area);
        double wx[3] = {(x2 - x1) * s, (0.0 - x2) * s, (x1 - 0.0) * s};
        double wy[3] = {y2 * s, -y2 * s, 0.0};

        for (int k = 0; k < 3; ++k) {
            int v = chart.mesh.faces(f, k);
            bool pinned = v == pin_a || v == pin_b;
            // Real row 2f:   sum(wx*u - wy*v) = 0
            // Imag row 2f+1: sum(wy*u + wx*v) = 0
            if (pinned) {
                Eigen::Vector2d pin_uv = v == pin_a ? uv_a : uv_b;
                rhs_dense[2 * f] -= wx[k] * pin_uv.x() - wy[k] * pin_uv.y();
                rhs_dense[2 * f + 1] -= wy[k] * pin_uv.x() + wx[k] * pin_uv.y();
            } else {
                int col_u = 2 * unknown[v];
                int col_v = 2 * unknown[v] + 1;
                a_triplets.emplace_back(2 * f, col_u, wx[k]);
                a_triplets.emplace_back(2 * f, col_v, -wy[k]);
                a_triplets.emplace_back(2 * f + 1, col_u, wy[k]);
                a_triplets.emplace_back(2 * f + 1, col_v, wx[k]);
            }
        }
    }

    Eigen::SparseMatrix<double> a_mat(2 * nf, 2 * n_unknown);
    a_mat.setFromTriplets(a_triplets.begin(), a_triplets.end());
    Eigen::SparseMatrix<double> at = a_mat.transpose();
    Eigen::SparseMatrix<double> normal_mat = at * a_mat;
    Eigen::VectorXd normal_rhs = at * rhs_dense;

    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver(normal_mat);
    Eigen::VectorXd solution;
    bool ok = solver.info() == Eigen::Success;
    if (ok) {
        solution = solver.solve(normal_rhs);
        ok = solver.info() == Eigen::Success && solution.allFinite();
    }
    if (!ok) {
        UVChart fallback = flatten_tutte(chart);
        fallback.flattener = "lscm->tutte";
        return fallback;
    }

    UVChart out;
    out.chart = chart;
    out.flattener = "lscm";
    out.uv = Eigen::MatrixX2d::Zero(nv, 2);
    out.uv.row(pin_a) = uv_a;
    out.uv.row(pin_b) = uv_b;
    for (int v = 0; v < nv; ++v) {
        if (unknown[v] >= 0) {
            out.uv(v, 0) = solution[2 * unknown[v]];
            out.uv(v, 1) = solution[2 * unknown[v] + 1];
        }
    }

    // A mirrored solution is still conformal; normalize orientation.
    double signed_total = 0.0;
    for (int f = 0; f < nf; ++f) signed_total += out.uv_signed_area(f);
    if (signed_total < 0.0) out.uv.col(1) *= -1.0;

    scale_to_surface_area(out);
    out.flipped_triangles = count_flips(out);
    return out;
}

UVChart chart_uv_from_corners(const Chart& chart, const Mesh& parent) {
    if (!parent.has_uvs()) throw_domain("parent mesh has no corner UVs");
    UVChart out;
    out.chart = chart;
    out.flattener = "source";
    out.uv = Eigen::MatrixX2d::Zero(chart.mesh.vertex_count(), 2);
    std::vector<bool> seen(chart.mesh.vertex_count(), false);
    for (int i = 0; i < chart.mesh.face_count(); ++i) {
        int pf = chart.parent_faces[i];
        for (int k = 0; k < 3; ++k) {
            int cv = chart.mesh.faces(i, k);
            if (!seen[cv]) {
                out.uv.row(cv) = parent.corner_uvs.row(3 * pf + k);
                seen[cv] = true;
            }
        }
    }
    out.flipped_triangles = count_flips(out);
    return out;
}

PackedAtlas pack_charts(std::vector<UVChart> charts, double margin) {
    if (charts.empty()) throw_domain("pack_charts requires at least one chart");
    if (margin < 0.0 || margin >= 0.5) throw_domain("margin must lie in [0, 0.5)");

    struct Box {
        int index;
        double w, h;
        Eigen::Vector2d offset;
    };
    std::vector<Box> boxes;
    for (size_t i = 0; i < charts.size(); ++i) {
        Eigen::Vector2d lo = charts[i].uv.colwise().minCoeff();
        Eigen::Vector2d hi = charts[i].uv.colwise().maxCoeff();
        charts[i].uv.rowwise() -= lo.transpose();
        boxes.push_back({static_cast<int>(i), hi.x() - lo.x(), hi.y() - lo.y(), {0.0, 0.0}});
    }
    std::sort(boxes.begin(), boxes.end(), [](const Box& a, const Box& b) {
        if (a.h != b.h) return a.h > b.h;
        if (a.w != b.w) return a.w > b.w;
        return a.index < b.index;
    });

    const double limit = 1.0 - margin;
    auto try_place = [&](double scale, bool commit) {
        double x = margin, y = margin, shelf = 0.0;
        for (Box& box : boxes) {
            double bw = box.w * scale, bh = box.h * scale;
            if (x + bw > limit && x > margin) {
                y += shelf + margin;
                x = margin;
                shelf = 0.0;
            }
            if (x + bw > limit + 1e-12 || y + bh > limit + 1e-12) return false;
            if (commit) box.offset = Eigen::Vector2d(x, y);
            x += bw + margin;
            shelf = std::max(shelf, bh);
        }
        return true;
    };

    double max_dim = 1e-300;
    for (const Box& box : boxes) max_dim = std::max({max_dim, box.w, box.h});
    double hi = (1.0 - 2.0 * margin) / max_dim;
    double lo = 0.0;
    if (try_place(hi, false)) {
        lo = hi;
    } else {
        for (int iter = 0; iter < 48; ++iter) {
            double mid = 0.5 * (lo + hi);
            (try_place(mid, false) ? lo : hi) = mid;
        }
    }
    if (lo <= 0.0) throw_domain("packing failed");
    try_place(lo, true);

    PackedAtlas packed;
    packed.margin = margin;
    packed.scale = lo;
    packed.charts = std::move(charts);
    for (const Box& box : boxes) {
        auto& uv = packed.charts[box.index].uv;
        uv *= lo;
        uv.rowwise() += box.offset.transpose();
    }
    return packed;
}

namespace {

std::vector<Edge> chart_edges_to_parent(const Chart& chart, const std::vector<Edge>& local) {
    std::vector<Edge> out;
    out.reserve(local.size());
    for (const Edge& e : local) {
        out.push_back(make_edge(chart.vertex_map[e.first], chart.vertex_map[e.second]));
    }
    return out;
}

// Shortest vertex path (3D edge lengths) from loop 0 to any other loop.
std::vector<Edge> bridge_boundary_loops(const Chart& chart) {
    AdjacencyTable adj = build_adjacency(chart.mesh);
    const int nv = chart.mesh.vertex_count();
    std::vector<double> dist(nv, std::numeric_limits<double>::infinity());
    std::vector<int> from(nv, -1);
    std::vector<int> loop_of(nv, -1);
    for (size_t l = 0; l < chart.boundary_loops.size(); ++l) {
        for (int v : chart.boundary_loops[l]) loop_of[v] = static_cast<int>(l);
    }

    using Item = std::pair<double, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
    for (int v : chart.boundary_loops.front()) {
        dist[v] = 0.0;
        queue.push({0.0, v});
    }
    int target = -1;
    while (!queue.empty()) {
        auto [d, v] = queue.top();
        queue.pop();
        if (d > dist[v]) continue;
        if (loop_of[v] > 0) {
            target = v;
            break;
        }
        for (int nbr : adj.neighbors[v]) {
            double nd = d + (chart.mesh.positions.row(v) - chart.mesh.positions.row(nbr)).norm();
            if (nd < dist[nbr]) {
                dist[nbr] = nd;
                from[nbr] = v;
                queue.push({nd, nbr});
            }
        }
    }
    if (target < 0) throw_domain("auto-cut: boundary loops are not connected");

    std::vector<Edge> path;
    for (int v = target; from[v] >= 0; v = from[v]) path.push_back(make_edge(v, from[v]));
    return chart_edges_to_parent(chart, path);
}

// Edges not crossed by a dual spanning tree, pruned at interior valence-1
// vertices; cutting along them opens all handles.
std::vector<Edge> handle_cut_graph(const Chart& chart) {
    AdjacencyTable adj = build_adjacency(chart.mesh);
    const int nf = chart.mesh.face_count();

    std::set<Edge> crossed;
    std::vector<bool> seen(nf, false);
    std::queue<int> frontier;
    frontier.push(0);
    seen[0] = true;
    while (!frontier.empty()) {
        int f = frontier.front();
        frontier.pop();
        for (int k = 0; k < 3; ++k) {
            Edge e = make_edge(chart.mesh.faces(f, k), chart.mesh.faces(f, (k + 1) % 3));
            const auto& fs = adj.edge_faces.at(e);
            if (fs[1] < 0) continue;
            int g = fs[0] == f ? fs[1] : fs[0];
            if (!seen[g]) {
                seen[g] = true;
                crossed.insert(e);
                frontier.push(g);
            }
        }
    }

    std::set<int> boundary_vertices;
    for (const auto& loop : chart.boundary_loops) {
        boundary_vertices.insert(loop.begin(), loop.end());
    }

    std::set<Edge> cut;
    for (const auto& [e, fs] : adj.edge_faces) {
        if (fs[1] < 0) continue;  // already boundary
        if (!crossed.count(e)) cut.insert(e);
    }

    // Prune dangling cut edges whose free end is not on the boundary.
    bool changed = true;
    while (changed) {
        changed = false;
        std::map<int, int> valence;
        for (const Edge& e : cut) {
            ++valence[e.first];
            ++valence[e.second];
        }
        for (auto it = cut.begin(); it != cut.end();) {
            bool drop = false;
            for (int v : {it->first, it->second}) {
                if (valence[v] == 1 && !boundary_vertices.count(v)) drop = true;
            }
            if (drop) {
                it = cut.erase(it);
                changed = true;
            } else {
                ++it;
            }
        }
    }
    return chart_edges_to_parent(chart, {cut.begin(), cut.end()});
}

// Two-edge slit so closed charts acquire a usable boundary.
std::vector<Edge> seed_slit(const Chart& chart) {
    AdjacencyTable adj = build_adjacency(chart.mesh);
    int v0 = 0;
    if (adj.neighbors[v0].empty()) throw_domain("auto-cut: isolated vertex");
    int v1 = adj.neighbors[v0].front();
    int v2 = -1;
    for (int nbr : adj.neighbors[v1]) {
        if (nbr != v0) {
            v2 = nbr;
            break;
        }
    }
    if (v2 < 0) throw_domain("auto-cut: cannot extend seed slit");
    return chart_edges_to_parent(chart, {make_edge(v0, v1), make_edge(v1, v2)});
}

} // namespace

AutoCutResult auto_cut_to_disks(const Mesh& mesh, const AdjacencyTable& adjacency,
                                const SeamEdgeSet& seams, int max_rounds) {
    AutoCutResult result;
    result.augmented = seams;

    for (int round = 0; round < max_rounds; ++round) {
        auto charts = cut_mesh(mesh, adjacency, result.augmented);
        bool all_disks = true;
        for (const Chart& chart : charts) {
            if (chart.disk_topology) continue;
            all_disks = false;
            std::vector<Edge> added;
            if (chart.boundary_loops.size() >= 2) {
                added = bridge_boundary_loops(chart);
            } else if (chart.boundary_loops.empty()) {
                added = seed_slit(chart);
            } else {
                added = handle_cut_graph(chart);
            }
            if (added.empty()) throw_domain("auto-cut made no progress");
            for (const Edge& e : added) {
                if (result.augmented.edges.insert(e).second) {
                    result.added_edges.push_back(e);
                }
            }
        }
        if (all_disks) return result;
    }
    throw_domain("auto-cut failed to reach disk topology within " +
                 std::to_string(max_rounds) + " rounds");
}

Mesh atlas_mesh(const Mesh& parent, const PackedAtlas& packed) {
    Mesh out = parent;
    out.corner_uvs.resize(3 * parent.face_count(), 2);
    out.corner_uvs.setZero();
    for (const UVChart& uvchart : packed.charts) {
        for (int i = 0; i < uvchart.chart.mesh.face_count(); ++i) {
            int pf = uvchart.chart.parent_faces[i];
            for (int k = 0; k < 3; ++k) {
                out.corner_uvs.row(3 * pf + k) = uvchart.uv.row(uvchart.chart.mesh.faces(i, k));
            }
        }
    }
    return out;
}

} // namespace seamforge
