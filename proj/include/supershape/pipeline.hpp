#pragma once

#include <memory>

#include "supershape/evolve.hpp"
#include "supershape/render.hpp"

namespace supershape {

struct PhenotypeConfig {
    TessellationGrid grid;
    RenderConfig render;
};

TriangleMesh genome_mesh(const Genome& genome, const PhenotypeConfig& config);
RenderResult render_genome(const Genome& genome, const PhenotypeConfig& config);
RenderResult render_genome(const Genome& genome, const ViewAngles& view, const PhenotypeConfig& config);

// render -> score; exceptions anywhere become invalid fitness.
GenomeEvaluator objective_evaluator(std::shared_ptr<const Scorer> scorer, PhenotypeConfig config);

DescriptorFn descriptor_function(PhenotypeConfig config);

// Contact-sheet view for cell (row, col): azimuth = 2*pi*col/cols, elevation
// evenly spaced over [-pi/3, pi/3] by row (0 for a single row), rotation 0.
ViewAngles sweep_view(int row, int col, int rows, int cols);

// Shape genes rendered at every sweep_view, tiled row-major into one image
// of (rows * height) x (cols * width).
ImageBuffer view_sheet(const Genome& genome, int rows, int cols, const PhenotypeConfig& config);

}  // namespace supershape
