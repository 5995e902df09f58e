#include "seamforge/obj_io.hpp"

#include "seamforge/error.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>
#include <vector>

namespace seamforge {

namespace {

struct Corner {
    int v = -1;
    int vt = -1;  // -1: no texture coordinate
};

// "3", "3/5", "3//7", "3/5/7" (1-based, negatives count from the end).
Corner parse_corner(const std::string& token, int line_no, int n_verts, int n_uvs) {
    std::optional<int> v, vt;
    std::istringstream ss(token);
    std::string part;
    int slot = 0;
    while (std::getline(ss, part, '/')) {
        if (!part.empty()) {
            int idx = 0;
            try {
                idx = std::stoi(part);
            } catch (const std::exception&) {
                throw_domain("line " + std::to_string(line_no) + ": bad face index '" + part + "'");
            }
            if (slot == 0) v = idx;
            if (slot == 1) vt = idx;
        }
        ++slot;
    }
    if (!v || *v == 0) {
        throw_domain("line " + std::to_string(line_no) + ": missing vertex index");
    }
    auto resolve = [line_no](int idx, int count, const char* what) {
        int r = idx > 0 ? idx - 1 : count + idx;
        if (r < 0 || r >= count) {
            throw_domain("line " + std::to_string(line_no) + ": " + what + " index " +
                         std::to_string(idx) + " out of range (count " + std::to_string(count) + ")");
        }
        return r;
    };
    Corner c;
    c.v = resolve(*v, n_verts, "vertex");
    if (vt) c.vt = resolve(*vt, n_uvs, "texture");
    return c;
}

} // namespace

Mesh load_obj(std::istream& in, const std::string& name) {
    std::vector<Eigen::Vector3d> verts;
    std::vector<Eigen::Vector2d> uvs;
    std::vector<std::array<int, 3>> faces;
    std::vector<std::array<int, 3>> face_uvs;
    bool any_uv_corner = false;

    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::istringstream ss(line);
        std::string tag;
        if (!(ss >> tag) || tag[0] == '#') continue;

        if (tag == "v") {
            double x, y, z;
            if (!(ss >> x >> y >> z)) {
                throw_domain(name + " line " + std::to_string(line_no) + ": malformed vertex");
            }
            verts.emplace_back(x, y, z);
        } else if (tag == "vt") {
            double u, v;
            if (!(ss >> u >> v)) {
                throw_domain(name + " line " + std::to_string(line_no) + ": malformed vt");
            }
            uvs.emplace_back(u, v);
        } else if (tag == "f") {
            std::vector<Corner> corners;
            std::string token;
            while (ss >> token) {
                corners.push_back(parse_corner(token, line_no,
                                               static_cast<int>(verts.size()),
                                               static_cast<int>(uvs.size())));
            }
            if (corners.size() < 3) {
                throw_domain(name + " line " + std::to_string(line_no) + ": face with < 3 corners");
            }
            for (size_t k = 1; k + 1 < corners.size(); ++k) {
                faces.push_back({corners[0].v, corners[k].v, corners[k + 1].v});
                face_uvs.push_back({corners[0].vt, corners[k].vt, corners[k + 1].vt});
                if (corners[0].vt >= 0 && corners[k].vt >= 0 && corners[k + 1].vt >= 0) {
                    any_uv_corner = true;
                }
            }
        }
        // o/g/s/usemtl/mtllib and anything else: ignored.
    }

    Mesh mesh;
    mesh.positions.resize(static_cast<int>(verts.size()), 3);
    for (size_t i = 0; i < verts.size(); ++i) mesh.positions.row(static_cast<int>(i)) = verts[i];
    mesh.faces.resize(static_cast<int>(faces.size()), 3);
    for (size_t f = 0; f < faces.size(); ++f) {
        for (int k = 0; k < 3; ++k) mesh.faces(static_cast<int>(f), k) = faces[f][k];
    }
    if (any_uv_corner) {
        mesh.corner_uvs.resize(3 * static_cast<int>(faces.size()), 2);
        for (size_t f = 0; f < faces.size(); ++f) {
            for (int k = 0; k < 3; ++k) {
                int vt = face_uvs[f][k];
                if (vt < 0) {
                    throw_domain(name + ": face " + std::to_string(f) +
                                 " mixes corners with and without vt indices");
                }
                mesh.corner_uvs.row(3 * static_cast<int>(f) + k) = uvs[vt];
            }
        }
    }
    mesh.validate();
    return mesh;
}

Mesh load_obj(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw_io("cannot open '" + path + "' for reading");
    return load_obj(in, path);
}

void save_obj(const Mesh& mesh, std::ostream& out) {
    out << std::setprecision(12);
    for (int i = 0; i < mesh.vertex_count(); ++i) {
        out << "v " << mesh.positions(i, 0) << ' ' << mesh.positions(i, 1) << ' '
            << mesh.positions(i, 2) << '\n';
    }
    bool has_uvs = mesh.has_uvs();
    if (has_uvs) {
        for (int r = 0; r < mesh.corner_uvs.rows(); ++r) {
            out << "vt " << mesh.corner_uvs(r, 0) << ' ' << mesh.corner_uvs(r, 1) << '\n';
        }
    }
    for (int f = 0; f < mesh.face_count(); ++f) {
        out << 'f';
        for (int k = 0; k < 3; ++k) {
            out << ' ' << mesh.faces(f, k) + 1;
            if (has_uvs) out << '/' << 3 * f + k + 1;
        }
        out << '\n';
    }
}

void save_obj(const Mesh& mesh, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw_io("cannot open '" + path + "' for writing");
    save_obj(mesh, out);
}

} // namespace seamforge
