#pragma once

#include "seamforge/mesh.hpp"

#include <iosfwd>
#include <string>

namespace seamforge {

/// Wavefront OBJ reader. Supports `v`, `vt`, `f` records with 1-based
/// indices; polygons are fan-triangulated; `f v/vt` corners populate
/// corner_uvs. Throws io errors for unreadable files and domain errors
/// (with line numbers) for malformed records.
Mesh load_obj(const std::string& path);
Mesh load_obj(std::istream& in, const std::string& name);

/// Writer emits one `vt` per corner when UVs are present.
void save_obj(const Mesh& mesh, const std::string& path);
void save_obj(const Mesh& mesh, std::ostream& out);

} // namespace seamforge
