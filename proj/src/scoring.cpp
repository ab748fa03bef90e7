#include "supershape/scoring.hpp"

#include <cmath>

#include "supershape/error.hpp"

namespace supershape {

double luma(Rgb c) noexcept { return (0.299 * c.r + 0.587 * c.g + 0.114 * c.b) / 255.0; }

Fitness score(const Scorer& scorer, const ImageBuffer& image) noexcept {
    try {
        const Fitness f = scorer.score(image);
        if (f.valid && !std::isfinite(f.raw)) return Fitness::invalid();
        return f;
    } catch (...) {
        return Fitness::invalid();
    }
}

double silhouette_fraction(const ImageBuffer& image, Rgb background) {
    if (image.pixel_count() == 0) return 0.0;
    std::size_t on = 0;
    for (int y = 0; y < image.height(); ++y)
        for (int x = 0; x < image.width(); ++x)
            if (image.at(x, y) != background) ++on;
    return static_cast<double>(on) / static_cast<double>(image.pixel_count());
}

Fitness SilhouetteFractionScorer::score(const ImageBuffer& image) const {
    return Fitness::of(silhouette_fraction(image, background_));
}

CoverageScorer::CoverageScorer(double target, Rgb background) : target_(target), background_(background) {
    if (!(target >= 0.0 && target <= 1.0))
        throw Error(ErrorKind::invalid_config, "coverage target must lie in [0, 1]");
}

Fitness CoverageScorer::score(const ImageBuffer& image) const {
    return Fitness::of(-std::abs(silhouette_fraction(image, background_) - target_));
}

Fitness BrightnessScorer::score(const ImageBuffer& image) const {
    if (image.pixel_count() == 0) return Fitness::invalid();
    double sum = 0.0;
    for (int y = 0; y < image.height(); ++y)
        for (int x = 0; x < image.width(); ++x) sum += luma(image.at(x, y));
    return Fitness::of(sum / static_cast<double>(image.pixel_count()));
}

MaskIoUScorer::MaskIoUScorer(ImageBuffer mask, Rgb background)
    : mask_(std::move(mask)), background_(background) {}

Fitness MaskIoUScorer::score(const ImageBuffer& image) const {
    if (image.width() != mask_.width() || image.height() != mask_.height()) return Fitness::invalid();
    std::size_t both = 0, either = 0;
    for (int y = 0; y < image.height(); ++y)
        for (int x = 0; x < image.width(); ++x) {
            const bool s = image.at(x, y) != background_;
            const bool m = luma(mask_.at(x, y)) >= 0.5;
            both += s && m;
            either += s || m;
        }
    return Fitness::of(either == 0 ? 1.0 : static_cast<double>(both) / static_cast<double>(either));
}

}  // namespace supershape
