#include "supershape/mesh_io.hpp"

#include <cstdio>

#include "supershape/error.hpp"

namespace supershape {

namespace {

void write_triplet(std::ostream& out, const char* tag, const Vec3& v) {
    char buf[1024];
    const int n = std::snprintf(buf, sizeof buf, "%s %.6f %.6f %.6f\n", tag, v.x(), v.y(), v.z());
    out.write(buf, n);
}

}  // namespace

void export_obj(const TriangleMesh& mesh, std::ostream& sink) {
    for (const auto& v : mesh.vertices) write_triplet(sink, "v", v);
    for (const auto& n : mesh.normals) write_triplet(sink, "vn", n);
    for (const auto& t : mesh.triangles) {
        const auto a = t[0] + 1, b = t[1] + 1, c = t[2] + 1;
        sink << "f " << a << "//" << a << ' ' << b << "//" << b << ' ' << c << "//" << c << '\n';
    }
    sink.flush();
    if (!sink) throw Error(ErrorKind::io_error, "failed to write OBJ stream");
}

}  // namespace supershape
