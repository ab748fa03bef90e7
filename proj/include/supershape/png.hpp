#pragma once

#include <cstdint>
#include <filesystem>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "supershape/image.hpp"

namespace supershape {

// 8-bit truecolor PNG, no alpha, no interlace, filter type 0 on every row,
// one IDAT chunk. Output depends only on the pixels.
std::vector<std::uint8_t> encode_png(const ImageBuffer& image);

// Throws Error{io_error} if the stream fails.
void encode_png(const ImageBuffer& image, std::ostream& sink);
void write_png(const ImageBuffer& image, const std::filesystem::path& path);

// Decodes any PNG libpng understands, flattening alpha/palette/gray to RGB.
// Throws Error{io_error} on undecodable input.
ImageBuffer decode_png(std::span<const std::uint8_t> bytes);
ImageBuffer read_png(const std::filesystem::path& path);

std::string base64_encode(std::span<const std::uint8_t> bytes);

}  // namespace supershape
