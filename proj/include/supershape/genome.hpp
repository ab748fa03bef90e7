#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "supershape/camera.hpp"
#include "supershape/geometry.hpp"

namespace supershape {

inline constexpr std::size_t kGeneCount = 15;

// Gene order: r1.{m,a,b,n1,n2,n3}, r2.{m,a,b,n1,n2,n3}, elevation, azimuth, rotation.
inline constexpr std::array<std::string_view, kGeneCount> kGeneNames = {
    "r1_m", "r1_a", "r1_b", "r1_n1", "r1_n2", "r1_n3",
    "r2_m", "r2_a", "r2_b", "r2_n1", "r2_n2", "r2_n3",
    "elevation", "azimuth", "rotation"};

std::optional<std::size_t> gene_index(std::string_view name) noexcept;

struct GeneRange {
    double lo = 0.0;
    double hi = 0.0;

    double width() const noexcept { return hi - lo; }
    bool contains(double v) const noexcept { return v >= lo && v <= hi; }
    friend bool operator==(const GeneRange&, const GeneRange&) = default;
};

using GeneBounds = std::array<GeneRange, kGeneCount>;

// m in [0, 20]; a, b in [0.1, 5]; n1 in [0.1, 20]; n2, n3 in [0, 20]; angles in [-pi, pi].
GeneBounds default_gene_bounds();

// Throws Error{invalid_config} when a range is empty, non-finite, or admits
// invalid superformula parameters.
void validate_bounds(const GeneBounds& bounds);

class Genome {
public:
    Genome() = default;
    explicit Genome(const std::array<double, kGeneCount>& genes) : genes_(genes) {}
    Genome(const SuperformulaParams& r1, const SuperformulaParams& r2, double elevation,
           double azimuth, double rotation);

    double operator[](std::size_t i) const { return genes_[i]; }
    double& operator[](std::size_t i) { return genes_[i]; }
    std::span<const double, kGeneCount> genes() const noexcept { return genes_; }

    SuperformulaParams r1() const noexcept { return params_at(0); }
    SuperformulaParams r2() const noexcept { return params_at(6); }
    ViewAngles view() const { return {genes_[12], genes_[13], genes_[14]}; }

    bool within(const GeneBounds& bounds) const noexcept;
    // Throws Error{invalid_genome} naming the first offending gene.
    void check_within(const GeneBounds& bounds) const;

    friend bool operator==(const Genome&, const Genome&) = default;

private:
    SuperformulaParams params_at(std::size_t o) const noexcept {
        return {genes_[o], genes_[o + 1], genes_[o + 2], genes_[o + 3], genes_[o + 4], genes_[o + 5]};
    }

    std::array<double, kGeneCount> genes_{};
};

// The unit sphere seen head-on: both superformulas at a=b=1, n1=n2=n3=2, all angles 0.
Genome sphere_genome();

// Parses exactly 15 comma-separated reals. Throws Error{invalid_genome}
// mentioning the arity when the count is wrong.
Genome parse_genome(std::string_view text);
std::string format_genome(const Genome& genome);

}  // namespace supershape
