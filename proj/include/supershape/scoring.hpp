#pragma once

#include <memory>
#include <string>

#include "supershape/image.hpp"

namespace supershape {

// Scorer output. Larger raw is better for every scorer; valid == false marks
// a failed evaluation (the evolver ranks it below the generation's worst).
struct Fitness {
    double raw = 0.0;
    bool valid = false;

    static Fitness of(double raw) { return {raw, true}; }
    static Fitness invalid() { return {0.0, false}; }

    friend bool operator==(const Fitness&, const Fitness&) = default;
};

class Scorer {
public:
    virtual ~Scorer() = default;
    // Must be safe to call concurrently on independent images.
    virtual Fitness score(const ImageBuffer& image) const = 0;
    virtual std::string name() const = 0;
};

// Never throws: exceptions from the scorer and non-finite raw values become invalid.
Fitness score(const Scorer& scorer, const ImageBuffer& image) noexcept;

double silhouette_fraction(const ImageBuffer& image, Rgb background);

// raw = fraction of non-background pixels.
class SilhouetteFractionScorer final : public Scorer {
public:
    explicit SilhouetteFractionScorer(Rgb background = {128, 128, 128}) : background_(background) {}
    Fitness score(const ImageBuffer& image) const override;
    std::string name() const override { return "silhouette"; }

private:
    Rgb background_;
};

// raw = -|coverage - target|, coverage being the non-background fraction.
class CoverageScorer final : public Scorer {
public:
    explicit CoverageScorer(double target = 0.5, Rgb background = {128, 128, 128});
    Fitness score(const ImageBuffer& image) const override;
    std::string name() const override { return "coverage"; }

private:
    double target_;
    Rgb background_;
};

// raw = mean Rec.601 luma in [0, 1].
class BrightnessScorer final : public Scorer {
public:
    Fitness score(const ImageBuffer& image) const override;
    std::string name() const override { return "brightness"; }
};

// raw = intersection-over-union of the rendered silhouette with a mask whose
// "on" pixels have luma >= 0.5. Two empty sets score 1. Image and mask sizes must match.
class MaskIoUScorer final : public Scorer {
public:
    MaskIoUScorer(ImageBuffer mask, Rgb background = {128, 128, 128});
    Fitness score(const ImageBuffer& image) const override;
    std::string name() const override { return "iou"; }

private:
    ImageBuffer mask_;
    Rgb background_;
};

double luma(Rgb c) noexcept;

}  // namespace supershape
