#include "maam/mesh.hpp"

#include <fstream>
#include <limits>
#include <sstream>

#include "maam/errors.hpp"

namespace maam {

Vec3 TriMesh::aabb_min() const {
    Vec3 lo{std::numeric_limits<double>::max(), std::numeric_limits<double>::max(),
            std::numeric_limits<double>::max()};
    for (const Vec3& v : vertices) {
        lo.x = std::min(lo.x, v.x);
        lo.y = std::min(lo.y, v.y);
        lo.z = std::min(lo.z, v.z);
    }
    return lo;
}

Vec3 TriMesh::aabb_max() const {
    Vec3 hi{std::numeric_limits<double>::lowest(), std::numeric_limits<double>::lowest(),
            std::numeric_limits<double>::lowest()};
    for (const Vec3& v : vertices) {
        hi.x = std::max(hi.x, v.x);
        hi.y = std::max(hi.y, v.y);
        hi.z = std::max(hi.z, v.z);
    }
    return hi;
}

TriMesh load_obj(std::istream& in) {
    TriMesh mesh;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag)) continue;
        if (tag == "v") {
            Vec3 v;
            if (!(ls >> v.x >> v.y >> v.z)) throw ParseError(line_no, "bad vertex");
            mesh.vertices.push_back(v);
        } else if (tag == "f") {
            std::vector<int> idx;
            std::string tok;
            while (ls >> tok) {
                // accept v, v/vt, v/vt/vn, v//vn forms
                int i = std::stoi(tok.substr(0, tok.find('/')));
                if (i < 0) i = static_cast<int>(mesh.vertices.size()) + i + 1;
                if (i < 1 || i > static_cast<int>(mesh.vertices.size()))
                    throw ParseError(line_no, "face index out of range");
                idx.push_back(i - 1);
            }
            if (idx.size() < 3) throw ParseError(line_no, "face with fewer than 3 vertices");
            for (size_t k = 2; k < idx.size(); ++k)
                mesh.triangles.push_back({idx[0], idx[k - 1], idx[k]});
        }
    }
    return mesh;
}

TriMesh load_off(std::istream& in) {
    std::string header;
    in >> header;
    if (header != "OFF") throw ParseError(1, "missing OFF header");
    size_t nv, nf, ne;
    if (!(in >> nv >> nf >> ne)) throw ParseError(2, "bad OFF counts");
    TriMesh mesh;
    mesh.vertices.resize(nv);
    for (size_t i = 0; i < nv; ++i)
        if (!(in >> mesh.vertices[i].x >> mesh.vertices[i].y >> mesh.vertices[i].z))
            throw ParseError(static_cast<int>(3 + i), "bad OFF vertex");
    for (size_t i = 0; i < nf; ++i) {
        size_t cnt;
        if (!(in >> cnt) || cnt < 3) throw ParseError(static_cast<int>(3 + nv + i), "bad OFF face");
        std::vector<int> idx(cnt);
        for (size_t k = 0; k < cnt; ++k) {
            if (!(in >> idx[k]) || idx[k] < 0 || idx[k] >= static_cast<int>(nv))
                throw ParseError(static_cast<int>(3 + nv + i), "OFF face index out of range");
        }
        for (size_t k = 2; k < cnt; ++k)
            mesh.triangles.push_back({idx[0], idx[k - 1], idx[k]});
    }
    return mesh;
}

TriMesh load_mesh(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open mesh file: " + path);
    auto dot = path.rfind('.');
    std::string ext = dot == std::string::npos ? "" : path.substr(dot);
    for (char& c : ext) c = static_cast<char>(std::tolower(c));
    if (ext == ".obj") return load_obj(in);
    if (ext == ".off") return load_off(in);
    throw Error("unsupported mesh format (want .obj or .off): " + path);
}

}  // namespace maam
