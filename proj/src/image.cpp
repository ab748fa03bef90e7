#include "supershape/image.hpp"

#include <algorithm>

#include "supershape/error.hpp"

namespace supershape {

ImageBuffer::ImageBuffer(int width, int height, Rgb fill) : width_(width), height_(height) {
    if (width < 0 || height < 0) throw Error(ErrorKind::invalid_config, "negative image size");
    pixels_.resize(pixel_count() * 3);
    for (std::size_t i = 0; i < pixel_count(); ++i) {
        pixels_[3 * i] = fill.r;
        pixels_[3 * i + 1] = fill.g;
        pixels_[3 * i + 2] = fill.b;
    }
}

void ImageBuffer::blit(const ImageBuffer& tile, int x0, int y0) {
    if (x0 < 0 || y0 < 0 || x0 + tile.width() > width_ || y0 + tile.height() > height_)
        throw Error(ErrorKind::invalid_config, "tile does not fit in the target image");
    const std::size_t row_bytes = static_cast<std::size_t>(tile.width()) * 3;
    for (int y = 0; y < tile.height(); ++y) {
        auto src = tile.pixels_.begin() + static_cast<std::ptrdiff_t>(y * row_bytes);
        std::copy(src, src + static_cast<std::ptrdiff_t>(row_bytes), pixels_.begin() + static_cast<std::ptrdiff_t>(offset(x0, y0 + y)));
    }
}

}  // namespace supershape
