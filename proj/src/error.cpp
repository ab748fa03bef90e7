#include "supershape/error.hpp"

namespace supershape {

const char* to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::invalid_params: return "invalid-params";
        case ErrorKind::invalid_resolution: return "invalid-resolution";
        case ErrorKind::invalid_config: return "invalid-config";
        case ErrorKind::invalid_genome: return "invalid-genome";
        case ErrorKind::dimension_mismatch: return "dimension-mismatch";
        case ErrorKind::empty_population: return "empty-population";
        case ErrorKind::io_error: return "io-error";
        case ErrorKind::non_finite_surface: return "non-finite-surface";
    }
    return "unknown";
}

}  // namespace supershape
