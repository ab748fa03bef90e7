#pragma once

#include <ostream>

#include "supershape/geometry.hpp"

namespace supershape {

// Wavefront OBJ: all `v` lines, then all `vn` lines, then `f a//a b//b c//c`
// with 1-based indices. Numbers use "%.6f", lines end in LF.
// Throws Error{io_error} if the stream goes bad.
void export_obj(const TriangleMesh& mesh, std::ostream& sink);

}  // namespace supershape
