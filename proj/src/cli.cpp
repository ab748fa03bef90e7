#include "supershape/cli.hpp"

#include <omp.h>

#include <CLI11.hpp>
#include <algorithm>
#include <atomic>
#include <csignal>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <regex>

#include "supershape/checkpoint.hpp"
#include "supershape/error.hpp"
#include "supershape/mesh_io.hpp"
#include "supershape/png.hpp"
#include "supershape/run_config.hpp"

namespace supershape::cli {

namespace fs = std::filesystem;

namespace {

std::atomic<bool> g_stop{false};

extern "C" void on_interrupt(int) { g_stop.store(true); }

class InterruptGuard {
public:
    InterruptGuard() {
        g_stop.store(false);
        previous_ = std::signal(SIGINT, on_interrupt);
    }
    ~InterruptGuard() { std::signal(SIGINT, previous_); }
    InterruptGuard(const InterruptGuard&) = delete;
    InterruptGuard& operator=(const InterruptGuard&) = delete;

private:
    void (*previous_)(int) = SIG_DFL;
};

int exit_code_for(const Error& e) {
    switch (e.kind()) {
        case ErrorKind::io_error: return kExitIo;
        default: return kExitConfig;
    }
}

void ensure_writable_dir(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw Error(ErrorKind::io_error, "cannot create output directory " + dir.string() + ": " + ec.message());
    const fs::path probe = dir / ".write_probe";
    {
        std::ofstream out(probe);
        if (!out || !(out << "ok")) throw Error(ErrorKind::io_error, "output directory " + dir.string() + " is not writable");
    }
    fs::remove(probe, ec);
}

void write_obj_file(const TriangleMesh& mesh, const fs::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::io_error, "cannot open " + path.string() + " for writing");
    export_obj(mesh, out);
}

// "<15 comma-separated reals>" or "gen<k>:best" / "gen<k>:<index>" resolved against a checkpoint file.
Genome resolve_genome(const std::string& spec, const fs::path& checkpoint) {
    static const std::regex ref(R"(gen(\d+):(best|\d+))");
    std::smatch m;
    if (!std::regex_match(spec, m, ref)) return parse_genome(spec);
    const auto generation = std::stoull(m[1].str());
    for (const auto& entry : read_checkpoints(checkpoint)) {
        if (entry.record.index != generation) continue;
        if (m[2] == "best") return entry.record.best().genome;
        const auto i = std::stoull(m[2].str());
        if (i >= entry.record.scored.size())
            throw Error(ErrorKind::invalid_genome, "checkpoint generation " + m[1].str() + " has no genome " + m[2].str());
        return entry.record.scored[i].genome;
    }
    throw Error(ErrorKind::invalid_genome, "no generation " + m[1].str() + " in " + checkpoint.string());
}

std::shared_ptr<const Scorer> make_scorer(const RunConfig& config) {
    const auto& o = config.objective;
    const Rgb bg = config.phenotype.render.background;
    switch (o.kind) {
        case ObjectiveKind::coverage: return std::make_shared<CoverageScorer>(o.coverage_target, bg);
        case ObjectiveKind::silhouette: return std::make_shared<SilhouetteFractionScorer>(bg);
        case ObjectiveKind::brightness: return std::make_shared<BrightnessScorer>();
        case ObjectiveKind::iou: {
            ImageBuffer mask;
            try {
                mask = read_png(o.mask);
            } catch (const Error& e) {
                throw Error(ErrorKind::invalid_config, std::string("mask: ") + e.what());
            }
            if (mask.width() != config.phenotype.render.width || mask.height() != config.phenotype.render.height)
                throw Error(ErrorKind::invalid_config, "mask size must match the render size");
            return std::make_shared<MaskIoUScorer>(std::move(mask), bg);
        }
        case ObjectiveKind::remote: {
            const auto ms = std::chrono::milliseconds(static_cast<long long>(std::llround(o.timeout_seconds * 1000.0)));
            return std::make_shared<RemoteScorer>(Endpoint{o.endpoint, ms}, o.mode, o.target);
        }
        case ObjectiveKind::novelty: break;
    }
    return nullptr;
}

void add_config_flags(CLI::App& cmd, std::map<std::string, std::string>& values) {
    for (const auto& key : config_keys()) cmd.add_option("--" + key, values[key], "config key " + key);
}

std::vector<std::pair<std::string, std::string>> given_overrides(const CLI::App& cmd,
                                                                  const std::map<std::string, std::string>& values) {
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& key : config_keys())
        if (cmd.count("--" + key) > 0) out.emplace_back(key, values.at(key));
    return out;
}

RunConfig load_run_config(const std::string& config_path, const std::vector<std::pair<std::string, std::string>>& overrides) {
    std::optional<std::string> text;
    if (!config_path.empty()) {
        try {
            text = read_text_file(config_path);
        } catch (const Error& e) {
            throw Error(ErrorKind::invalid_config, e.what());
        }
    }
    std::optional<std::string> env;
    if (const char* v = std::getenv(kEndpointEnv)) env = v;
    return resolve_config(text, overrides, env);
}

struct EvolveArgs {
    std::string config_path;
    bool resume = false;
    std::map<std::string, std::string> values;
};

int cmd_evolve(const CLI::App& cmd, const EvolveArgs& args, std::ostream& out, std::ostream& err) {
    RunConfig config;
    try {
        config = load_run_config(args.config_path, given_overrides(cmd, args.values));
        config.validate();
    } catch (const Error& e) {
        err << "config error: " << e.what() << '\n';
        return kExitConfig;
    }
    if (config.threads > 0) omp_set_num_threads(config.threads);

    try {
        ensure_writable_dir(config.out_dir);
    } catch (const Error& e) {
        err << e.what() << '\n';
        return kExitIo;
    }

    std::shared_ptr<const Scorer> scorer;
    try {
        scorer = make_scorer(config);
    } catch (const Error& e) {
        err << "config error: " << e.what() << '\n';
        return kExitConfig;
    }
    if (config.objective.kind == ObjectiveKind::remote) {
        const auto& remote = static_cast<const RemoteScorer&>(*scorer);
        if (!check_health(remote.endpoint())) {
            err << "scorer at " << remote.endpoint().base_url << " is not healthy (GET /healthz)\n";
            return kExitScorerUnreachable;
        }
    }

    const fs::path checkpoint_path = config.out_dir / "checkpoints.jsonl";
    const nlohmann::json echo = config.to_json();
    const bool novelty = config.objective.kind == ObjectiveKind::novelty;

    std::optional<EvolutionState> resume;
    std::optional<NoveltyArchive> archive;
    std::optional<GenerationRecord> resumed_last;
    try {
        if (args.resume && fs::exists(checkpoint_path)) {
            const auto entries = read_checkpoints(checkpoint_path);
            if (!entries.empty()) {
                auto stored = entries.back().config;
                auto current = echo;
                stored.erase("generations");
                current.erase("generations");
                if (stored != current) {
                    err << "config error: --resume needs the same configuration as the checkpoint\n";
                    return kExitConfig;
                }
                if (novelty) {
                    archive.emplace(kDescriptorDim, config.objective.novelty.k, config.objective.novelty.add_threshold);
                    for (const auto& e : entries)
                        for (const auto& d : e.archive_added) archive->restore(d);
                }
                resumed_last = entries.back().record;
                resume = resume_state(entries.back().record, config.ga);
            }
        }
    } catch (const Error& e) {
        err << e.what() << '\n';
        return exit_code_for(e);
    }

    try {
        CheckpointWriter writer(checkpoint_path, resume.has_value());
        const auto& phenotype = config.phenotype;
        auto export_best = [&](const GenerationRecord& record) {
            const auto last = config.ga.generations == 0 ? 0 : config.ga.generations - 1;
            if (config.export_every <= 0) return;
            if (record.index % static_cast<std::size_t>(config.export_every) != 0 && record.index != last) return;
            try {
                write_png(render_genome(record.best().genome, phenotype).image,
                          config.out_dir / ("gen_" + std::to_string(record.index) + "_best.png"));
            } catch (const Error& e) {
                if (e.kind() == ErrorKind::io_error) throw;
            }
        };
        auto log = [&](const GenerationRecord& record) {
            const auto& best = record.best().fitness;
            out << "generation " << record.index << " best " << (best.valid ? std::to_string(best.raw) : "invalid") << '\n';
        };

        InterruptGuard guard;
        GenerationRecord final_record;
        bool interrupted = false;
        const bool already_done = resumed_last && resume->index >= config.ga.generations;
        if (already_done) {
            final_record = *resumed_last;
        } else if (novelty) {
            auto result = run_novelty_search(
                config.ga, config.objective.novelty, descriptor_function(phenotype),
                [&](const GenerationRecord& record, const std::vector<Descriptor>& added) {
                    writer.write({echo, record, true, added});
                    export_best(record);
                    log(record);
                },
                std::move(resume), std::move(archive), &g_stop);
            final_record = std::move(result.final_record);
            interrupted = result.interrupted;
            out << "archive size " << result.archive.size() << '\n';
        } else {
            auto result = run_evolution(
                config.ga, parallel_batch(objective_evaluator(scorer, phenotype)),
                [&](const GenerationRecord& record) {
                    writer.write({echo, record, false, {}});
                    export_best(record);
                    log(record);
                },
                std::move(resume), &g_stop);
            final_record = std::move(result.final_record);
            interrupted = result.interrupted;
        }
        if (interrupted) {
            err << "interrupted after generation " << final_record.index << "; resume with --resume\n";
            return kExitInterrupted;
        }

        const Genome& best = final_record.best().genome;
        try {
            write_obj_file(genome_mesh(best, phenotype), config.out_dir / "final_best.obj");
            write_png(render_genome(best, phenotype).image, config.out_dir / "final_best.png");
        } catch (const Error& e) {
            if (e.kind() == ErrorKind::io_error) throw;
            err << "warning: final best genome cannot be meshed: " << e.what() << '\n';
        }
        out << "best genome " << format_genome(best) << '\n';
    } catch (const Error& e) {
        err << e.what() << '\n';
        return exit_code_for(e);
    }
    return kExitOk;
}

struct RenderArgs {
    std::string genome;
    std::string output;
    std::string obj;
    std::string checkpoint = "checkpoints.jsonl";
    std::string config_path;
    std::string grid = "1x1";
};

int with_genome(const RenderArgs& args, std::ostream& err,
                const std::function<void(const Genome&, const RunConfig&)>& action) {
    try {
        const RunConfig config = load_run_config(args.config_path, {});
        config.phenotype.render.validate();
        const Genome genome = resolve_genome(args.genome, args.checkpoint);
        genome.check_within(config.ga.gene_bounds);
        action(genome, config);
    } catch (const Error& e) {
        err << e.what() << '\n';
        return exit_code_for(e);
    }
    return kExitOk;
}

int cmd_render(const RenderArgs& args, std::ostream& err) {
    return with_genome(args, err, [&](const Genome& genome, const RunConfig& config) {
        const TriangleMesh mesh = genome_mesh(genome, config.phenotype);
        write_png(render(mesh, genome.view(), config.phenotype.render).image, args.output);
        if (!args.obj.empty()) write_obj_file(mesh, args.obj);
    });
}

int cmd_views(const RenderArgs& args, std::ostream& err) {
    static const std::regex grid_re(R"((\d+)x(\d+))");
    std::smatch m;
    if (!std::regex_match(args.grid, m, grid_re) || std::stoi(m[1].str()) < 1 || std::stoi(m[2].str()) < 1) {
        err << "grid must look like ROWSxCOLS with both >= 1, got '" << args.grid << "'\n";
        return kExitConfig;
    }
    const int rows = std::stoi(m[1].str()), cols = std::stoi(m[2].str());
    return with_genome(args, err, [&](const Genome& genome, const RunConfig& config) {
        write_png(view_sheet(genome, rows, cols, config.phenotype), args.output);
    });
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Evolve superformula surfaces and viewing angles against an image objective", "supershape"};
    app.require_subcommand(1);

    EvolveArgs evolve;
    auto* evolve_cmd = app.add_subcommand("evolve", "run the genetic algorithm");
    evolve_cmd->add_option("--config", evolve.config_path, "key = value config file");
    evolve_cmd->add_flag("--resume", evolve.resume, "continue from <out>/checkpoints.jsonl");
    add_config_flags(*evolve_cmd, evolve.values);

    RenderArgs render_args;
    auto* render_cmd = app.add_subcommand("render", "render one genome to PNG (and optionally OBJ)");
    render_cmd->add_option("--genome", render_args.genome, "15 comma-separated genes or genK:best")->required();
    render_cmd->add_option("--output,-o", render_args.output, "PNG path")->required();
    render_cmd->add_option("--obj", render_args.obj, "also write the mesh as OBJ");
    render_cmd->add_option("--checkpoint", render_args.checkpoint, "checkpoint file for genK references");
    render_cmd->add_option("--config", render_args.config_path, "config file (bounds, render settings)");

    RenderArgs views_args;
    auto* views_cmd = app.add_subcommand("views", "contact sheet over azimuth (columns) x elevation (rows)");
    views_cmd->add_option("--genome", views_args.genome, "15 comma-separated genes or genK:best")->required();
    views_cmd->add_option("--grid", views_args.grid, "ROWSxCOLS");
    views_cmd->add_option("--output,-o", views_args.output, "PNG path")->required();
    views_cmd->add_option("--checkpoint", views_args.checkpoint, "checkpoint file for genK references");
    views_cmd->add_option("--config", views_args.config_path, "config file (bounds, render settings)");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << e.what() << '\n';
        if (const auto* sub = app.get_subcommands().empty() ? nullptr : app.get_subcommands().front())
            err << sub->help();
        return kExitConfig;
    }

    if (evolve_cmd->parsed()) return cmd_evolve(*evolve_cmd, evolve, out, err);
    if (render_cmd->parsed()) return cmd_render(render_args, err);
    if (views_cmd->parsed()) return cmd_views(views_args, err);
    return kExitConfig;
}

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return run(args, std::cout, std::cerr);
}

}  // namespace supershape::cli
