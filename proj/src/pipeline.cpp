#include "supershape/pipeline.hpp"

#include <numbers>

#include "supershape/error.hpp"

namespace supershape {

TriangleMesh genome_mesh(const Genome& genome, const PhenotypeConfig& config) {
    return tessellate(genome.r1(), genome.r2(), config.grid);
}

RenderResult render_genome(const Genome& genome, const PhenotypeConfig& config) {
    return render_genome(genome, genome.view(), config);
}

RenderResult render_genome(const Genome& genome, const ViewAngles& view, const PhenotypeConfig& config) {
    return render(genome_mesh(genome, config), view, config.render);
}

GenomeEvaluator objective_evaluator(std::shared_ptr<const Scorer> scorer, PhenotypeConfig config) {
    return [scorer = std::move(scorer), config](const Genome& genome) {
        try {
            return score(*scorer, render_genome(genome, config).image);
        } catch (...) {
            return Fitness::invalid();
        }
    };
}

DescriptorFn descriptor_function(PhenotypeConfig config) {
    return [config](const Genome& genome) { return behavior_descriptor(render_genome(genome, config).image); };
}

ViewAngles sweep_view(int row, int col, int rows, int cols) {
    constexpr double pi = std::numbers::pi;
    const double azimuth = 2.0 * pi * col / cols;
    const double elevation = rows == 1 ? 0.0 : -pi / 3.0 + (2.0 * pi / 3.0) * row / (rows - 1);
    return {elevation, azimuth, 0.0};
}

ImageBuffer view_sheet(const Genome& genome, int rows, int cols, const PhenotypeConfig& config) {
    if (rows < 1 || cols < 1) throw Error(ErrorKind::invalid_config, "view grid must be at least 1x1");
    const TriangleMesh mesh = genome_mesh(genome, config);
    const int w = config.render.width, h = config.render.height;
    ImageBuffer sheet(cols * w, rows * h, config.render.background);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c)
            sheet.blit(render(mesh, sweep_view(r, c, rows, cols), config.render).image, c * w, r * h);
    return sheet;
}

}  // namespace supershape
