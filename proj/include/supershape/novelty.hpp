#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "supershape/image.hpp"

namespace supershape {

using Descriptor = std::vector<double>;

inline constexpr int kDescriptorGrid = 16;
inline constexpr std::size_t kDescriptorDim = kDescriptorGrid * kDescriptorGrid;

// Luma, box-averaged onto a 16x16 grid (cell c spans pixels
// [c*W/16, (c+1)*W/16)), row-major, each entry in [0, 1].
Descriptor behavior_descriptor(const ImageBuffer& image);

// Append-only store of behavior descriptors of one fixed dimension.
class NoveltyArchive {
public:
    explicit NoveltyArchive(std::size_t dimension = kDescriptorDim, std::size_t k = 15,
                            double add_threshold = 0.03);

    std::size_t dimension() const noexcept { return dimension_; }
    std::size_t k() const noexcept { return k_; }
    double add_threshold() const noexcept { return add_threshold_; }
    std::size_t size() const noexcept { return descriptors_.size(); }
    const std::vector<Descriptor>& descriptors() const noexcept { return descriptors_; }

    // Appends iff novelty > add_threshold (strict). Returns whether it did.
    // Throws Error{dimension_mismatch}.
    bool update(const Descriptor& descriptor, double novelty);

    // Unconditional append, used when replaying a checkpoint.
    void restore(Descriptor descriptor);

private:
    std::size_t dimension_;
    std::size_t k_;
    double add_threshold_;
    std::vector<Descriptor> descriptors_;
};

// Mean Euclidean distance from `query` to its k nearest neighbours among
// archive entries and `candidates` (skipping candidates[exclude], the query's
// own slot). Fewer than k neighbours: average over all; none: 0.
// Throws Error{dimension_mismatch}.
double novelty(const NoveltyArchive& archive, std::span<const Descriptor> candidates,
               const Descriptor& query, std::optional<std::size_t> exclude = std::nullopt);

inline bool archive_update(NoveltyArchive& archive, const Descriptor& descriptor, double its_novelty) {
    return archive.update(descriptor, its_novelty);
}

}  // namespace supershape
