#include "supershape/novelty.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "supershape/error.hpp"
#include "supershape/scoring.hpp"

namespace supershape {

namespace {

void check_dimension(std::size_t expected, const Descriptor& d) {
    if (d.size() != expected)
        throw Error(ErrorKind::dimension_mismatch,
                    "descriptor has dimension " + std::to_string(d.size()) + ", expected " +
                        std::to_string(expected));
}

double distance(const Descriptor& a, const Descriptor& b) {
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        sum += d * d;
    }
    return std::sqrt(sum);
}

}  // namespace

Descriptor behavior_descriptor(const ImageBuffer& image) {
    Descriptor out(kDescriptorDim, 0.0);
    const int w = image.width(), h = image.height();
    if (w == 0 || h == 0) return out;
    auto span_of = [](int cell, int size) {
        int lo = cell * size / kDescriptorGrid;
        int hi = (cell + 1) * size / kDescriptorGrid;
        lo = std::min(lo, size - 1);
        return std::pair{lo, std::max(hi, lo + 1)};
    };
    for (int cy = 0; cy < kDescriptorGrid; ++cy) {
        const auto [y0, y1] = span_of(cy, h);
        for (int cx = 0; cx < kDescriptorGrid; ++cx) {
            const auto [x0, x1] = span_of(cx, w);
            double sum = 0.0;
            for (int y = y0; y < y1; ++y)
                for (int x = x0; x < x1; ++x) sum += luma(image.at(x, y));
            out[static_cast<std::size_t>(cy) * kDescriptorGrid + cx] =
                std::clamp(sum / static_cast<double>((y1 - y0) * (x1 - x0)), 0.0, 1.0);
        }
    }
    return out;
}

NoveltyArchive::NoveltyArchive(std::size_t dimension, std::size_t k, double add_threshold)
    : dimension_(dimension), k_(k), add_threshold_(add_threshold) {
    if (dimension == 0 || k == 0 || !(add_threshold >= 0.0) || !std::isfinite(add_threshold))
        throw Error(ErrorKind::invalid_config, "novelty archive needs dimension > 0, k > 0, threshold >= 0");
}

bool NoveltyArchive::update(const Descriptor& descriptor, double novelty) {
    check_dimension(dimension_, descriptor);
    if (!(novelty > add_threshold_)) return false;
    descriptors_.push_back(descriptor);
    return true;
}

void NoveltyArchive::restore(Descriptor descriptor) {
    check_dimension(dimension_, descriptor);
    descriptors_.push_back(std::move(descriptor));
}

double novelty(const NoveltyArchive& archive, std::span<const Descriptor> candidates,
               const Descriptor& query, std::optional<std::size_t> exclude) {
    check_dimension(archive.dimension(), query);
    std::vector<double> d;
    d.reserve(archive.size() + candidates.size());
    for (const auto& a : archive.descriptors()) d.push_back(distance(query, a));
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        check_dimension(archive.dimension(), candidates[i]);
        if (exclude && *exclude == i) continue;
        d.push_back(distance(query, candidates[i]));
    }
    if (d.empty()) return 0.0;
    const std::size_t k = std::min(archive.k(), d.size());
    std::partial_sort(d.begin(), d.begin() + static_cast<std::ptrdiff_t>(k), d.end());
    double sum = 0.0;
    for (std::size_t i = 0; i < k; ++i) sum += d[i];
    return sum / static_cast<double>(k);
}

}  // namespace supershape
