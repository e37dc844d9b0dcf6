#pragma once

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

#include "maam/geometry.hpp"

namespace maam {

struct TriMesh {
    std::vector<Vec3> vertices;
    std::vector<std::array<int, 3>> triangles;

    Vec3 aabb_min() const;
    Vec3 aabb_max() const;
};

// Triangles-and-vertices-only OBJ (v/f lines, polygons fanned).
TriMesh load_obj(std::istream& in);

// ASCII OFF.
TriMesh load_off(std::istream& in);

// Dispatch on .obj / .off extension.
TriMesh load_mesh(const std::string& path);

}  // namespace maam
