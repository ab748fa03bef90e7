#include <doctest.h>

#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include "supershape/cli.hpp"
#include "supershape/genome.hpp"
#include "supershape/png.hpp"
#include "supershape/run_config.hpp"

// after Eigen: resolv.h defines _res
#include <httplib.h>

using namespace supershape;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    int code;
    std::string out, err;
};

Outcome invoke(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
    const auto dir = fs::temp_directory_path() / "supershape_cli_test" / name;
    fs::remove_all(dir);
    fs::create_directories(dir.parent_path());
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}

// Checkpoint stream with the echoed generation budget removed.
std::vector<nlohmann::json> records_of(const fs::path& p) {
    std::vector<nlohmann::json> out;
    std::istringstream in(slurp(p));
    std::string line;
    while (std::getline(in, line)) {
        auto j = nlohmann::json::parse(line);
        j["config"].erase("generations");
        out.push_back(std::move(j));
    }
    return out;
}

std::size_t line_count(const fs::path& p) {
    const auto text = slurp(p);
    return static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n'));
}

// Small, fast evolve settings.
std::vector<std::string> small_run(const fs::path& out, int generations) {
    return {"evolve",      "--out",        out.string(), "--generations", std::to_string(generations),
            "--population", "6",           "--width",    "48",            "--height",
            "48",          "--resolution", "12",         "--seed",        "4"};
}

std::string genes_with_view(double e, double a, double r) {
    Genome g({6, 1, 1.2, 0.6, 1.5, 1.5, 3, 1, 1, 0.8, 0.9, 1.2, e, a, r});
    return format_genome(g);
}

}  // namespace

TEST_CASE("evolve writes one checkpoint line per generation and the final artifacts") {
    const auto out = scratch("basic");
    const auto r = invoke(small_run(out, 30));
    REQUIRE_MESSAGE(r.code == 0, r.err);
    CHECK(line_count(out / "checkpoints.jsonl") == 30);
    CHECK(fs::exists(out / "gen_0_best.png"));
    CHECK(fs::exists(out / "gen_29_best.png"));
    CHECK(fs::exists(out / "final_best.obj"));
    CHECK(read_png(out / "final_best.png").width() == 48);
    CHECK(r.out.find("generation 29 best") != std::string::npos);
}

TEST_CASE("evolve is deterministic across runs") {
    const auto a = scratch("det_a"), b = scratch("det_b");
    REQUIRE(invoke(small_run(a, 5)).code == 0);
    REQUIRE(invoke(small_run(b, 5)).code == 0);
    CHECK(slurp(a / "checkpoints.jsonl") == slurp(b / "checkpoints.jsonl"));
    for (const char* f : {"gen_0_best.png", "gen_4_best.png", "final_best.png", "final_best.obj"})
        CHECK(slurp(a / f) == slurp(b / f));
}

TEST_CASE("export cadence") {
    const auto out = scratch("cadence");
    auto args = small_run(out, 5);
    args.insert(args.end(), {"--export_every", "2"});
    REQUIRE(invoke(args).code == 0);
    CHECK(fs::exists(out / "gen_0_best.png"));
    CHECK_FALSE(fs::exists(out / "gen_1_best.png"));
    CHECK(fs::exists(out / "gen_2_best.png"));
    CHECK(fs::exists(out / "gen_4_best.png"));
}

TEST_CASE("resume continues the same stream") {
    const auto full = scratch("full"), part = scratch("part");
    REQUIRE(invoke(small_run(full, 6)).code == 0);
    REQUIRE(invoke(small_run(part, 3)).code == 0);
    auto resumed = small_run(part, 6);
    resumed.push_back("--resume");
    REQUIRE(invoke(resumed).code == 0);
    CHECK(records_of(full / "checkpoints.jsonl") == records_of(part / "checkpoints.jsonl"));
    CHECK(line_count(part / "checkpoints.jsonl") == 6);
    CHECK(slurp(full / "final_best.png") == slurp(part / "final_best.png"));

    auto changed = small_run(part, 8);
    changed.insert(changed.end(), {"--resume", "--mutation_rate", "0.2"});
    CHECK(invoke(changed).code == cli::kExitConfig);
}

TEST_CASE("novelty objective through the CLI") {
    const auto out = scratch("novelty");
    auto args = small_run(out, 3);
    args.insert(args.end(), {"--objective", "novelty"});
    const auto r = invoke(args);
    REQUIRE_MESSAGE(r.code == 0, r.err);
    CHECK(r.out.find("archive size") != std::string::npos);
    CHECK(slurp(out / "checkpoints.jsonl").find("archive_added") != std::string::npos);
}

TEST_CASE("evolve exit codes") {
    SUBCASE("config errors exit 2") {
        CHECK(invoke({"evolve", "--out", scratch("bad").string(), "--population", "zero"}).code == cli::kExitConfig);
        CHECK(invoke({"evolve", "--out", scratch("bad").string(), "--mutation_rate", "2"}).code == cli::kExitConfig);
        CHECK(invoke({"evolve", "--config", "/nonexistent/run.cfg"}).code == cli::kExitConfig);
        const auto cfg = scratch("cfg");
        fs::create_directories(cfg);
        std::ofstream(cfg / "run.cfg") << "population = 6\nflavour = mint\n";
        const auto r = invoke({"evolve", "--config", (cfg / "run.cfg").string(), "--out", (cfg / "o").string()});
        CHECK(r.code == cli::kExitConfig);
        CHECK(r.err.find("flavour") != std::string::npos);
    }
    SUBCASE("remote objective with a dead endpoint exits 3 before any generation") {
        httplib::Server probe;
        const int port = probe.bind_to_any_port("127.0.0.1");
        probe.stop();
        const auto out = scratch("dead");
        const auto r = invoke({"evolve", "--out", out.string(), "--objective", "remote", "--endpoint",
                            "http://127.0.0.1:" + std::to_string(port), "--mode", "clip_text", "--target", "a vase",
                            "--timeout", "1"});
        CHECK(r.code == cli::kExitScorerUnreachable);
        CHECK_FALSE(fs::exists(out / "checkpoints.jsonl"));
    }
    SUBCASE("unwritable output exits 4") {
        const auto dir = scratch("file_as_out");
        fs::create_directories(dir);
        std::ofstream(dir / "taken") << "x";
        CHECK(invoke({"evolve", "--out", (dir / "taken").string()}).code == cli::kExitIo);
    }
    SUBCASE("unknown subcommand or flag") {
        CHECK(invoke({"paint"}).code != 0);
        CHECK(invoke({"evolve", "--colour", "red"}).code != 0);
    }
}

TEST_CASE("render draws the sphere as a centred disc") {
    const auto dir = scratch("render");
    fs::create_directories(dir);
    const auto png = dir / "sphere.png", obj = dir / "sphere.obj";
    const auto r = invoke({"render", "--genome", format_genome(sphere_genome()), "-o", png.string(), "--obj", obj.string()});
    REQUIRE_MESSAGE(r.code == 0, r.err);
    const auto image = read_png(png);
    CHECK(image.width() == 224);
    CHECK(image.at(112, 112) != Rgb{128, 128, 128});
    CHECK(image.at(2, 2) == Rgb{128, 128, 128});
    CHECK(slurp(obj).find("\nf ") != std::string::npos);
}

TEST_CASE("render resolves checkpoint references") {
    const auto out = scratch("refs");
    const auto cfg = out.parent_path() / "refs.cfg";
    std::ofstream(cfg) << "population = 6\ngenerations = 4\nwidth = 48\nheight = 48\nresolution = 12\nseed = 4\n";
    REQUIRE(invoke({"evolve", "--config", cfg.string(), "--out", out.string()}).code == 0);
    const auto png = out / "again.png";
    const auto ckpt = (out / "checkpoints.jsonl").string();
    REQUIRE(invoke({"render", "--genome", "gen2:best", "--checkpoint", ckpt, "--config", cfg.string(), "-o", png.string()})
                .code == 0);
    CHECK(slurp(png) == slurp(out / "gen_2_best.png"));
    CHECK(invoke({"render", "--genome", "gen3:5", "--checkpoint", ckpt, "--config", cfg.string(), "-o", png.string()})
              .code == 0);
    CHECK(invoke({"render", "--genome", "gen9:best", "--checkpoint", ckpt, "-o", png.string()}).code != 0);
    CHECK(invoke({"render", "--genome", "gen1:6", "--checkpoint", ckpt, "-o", png.string()}).code != 0);
}

TEST_CASE("render rejects bad genomes with exit 2") {
    const auto png = (scratch("badgenome").parent_path() / "never.png").string();
    fs::remove(png);
    auto fourteen = format_genome(sphere_genome());
    fourteen.erase(fourteen.rfind(','));
    const auto arity = invoke({"render", "--genome", fourteen, "-o", png});
    CHECK(arity.code == cli::kExitConfig);
    CHECK(arity.err.find("15") != std::string::npos);
    CHECK(arity.err.find("14") != std::string::npos);

    Genome oob = sphere_genome();
    oob[gene_index("r1_n1").value()] = 1000;
    const auto bounds = invoke({"render", "--genome", format_genome(oob), "-o", png});
    CHECK(bounds.code == cli::kExitConfig);
    CHECK(bounds.err.find("r1_n1") != std::string::npos);
    CHECK(invoke({"render", "--genome", "1,2,x", "-o", png}).code == cli::kExitConfig);
    CHECK_FALSE(fs::exists(png));
}

TEST_CASE("views sheet geometry") {
    const auto dir = scratch("views");
    fs::create_directories(dir);
    const auto sheet = dir / "sheet.png", single = dir / "single.png", one = dir / "one.png";

    REQUIRE(invoke({"views", "--genome", genes_with_view(0.4, 1.1, 0.3), "--grid", "2x4", "-o", sheet.string()}).code == 0);
    const auto img = read_png(sheet);
    CHECK(img.width() == 896);
    CHECK(img.height() == 448);

    // a 1x1 sheet is the genome rendered at the sweep's only view (0, 0, 0)
    REQUIRE(invoke({"views", "--genome", genes_with_view(0.4, 1.1, 0.3), "--grid", "1x1", "-o", one.string()}).code == 0);
    REQUIRE(invoke({"render", "--genome", genes_with_view(0, 0, 0), "-o", single.string()}).code == 0);
    CHECK(slurp(one) == slurp(single));

    CHECK(invoke({"views", "--genome", genes_with_view(0, 0, 0), "--grid", "0x3", "-o", sheet.string()}).code ==
          cli::kExitConfig);
    CHECK(invoke({"views", "--genome", genes_with_view(0, 0, 0), "--grid", "wide", "-o", sheet.string()}).code ==
          cli::kExitConfig);
}

TEST_CASE("sphere views at quarter turns are identical tiles") {
    const auto sheet = scratch("sphere_views").parent_path() / "sphere_views.png";
    REQUIRE(invoke({"views", "--genome", format_genome(sphere_genome()), "--grid", "1x4", "-o", sheet.string()}).code == 0);
    const auto img = read_png(sheet);
    REQUIRE(img.width() == 4 * 224);
    for (int tile = 1; tile < 4; ++tile)
        for (int y = 0; y < 224; ++y)
            for (int x = 0; x < 224; ++x) REQUIRE(img.at(tile * 224 + x, y) == img.at(x, y));
}

TEST_CASE("SIGINT stops after a flushed generation and the run resumes") {
    const auto full = scratch("sig_full"), cut = scratch("sig_cut");
    auto args = small_run(full, 40);
    REQUIRE(invoke(args).code == 0);

    auto child_args = small_run(cut, 40);
    std::vector<char*> argv;
    std::string program = SUPERSHAPE_CLI_PATH;
    argv.push_back(program.data());
    for (auto& a : child_args) argv.push_back(a.data());
    argv.push_back(nullptr);
    std::fflush(nullptr);
    const pid_t pid = fork();
    if (pid == 0) {
        freopen("/dev/null", "w", stdout);
        freopen("/dev/null", "w", stderr);
        execv(program.c_str(), argv.data());
        _exit(127);
    }
    const auto deadline = std::chrono::steady_clock::now() + std::chrono::seconds(30);
    while (!fs::exists(cut / "checkpoints.jsonl") || line_count(cut / "checkpoints.jsonl") < 2) {
        REQUIRE(std::chrono::steady_clock::now() < deadline);
        std::this_thread::sleep_for(std::chrono::milliseconds(5));
    }
    kill(pid, SIGINT);
    int status = 0;
    waitpid(pid, &status, 0);
    REQUIRE(WIFEXITED(status));
    const int code = WEXITSTATUS(status);
    // a run that happens to finish before the signal lands exits 0
    CHECK((code == cli::kExitInterrupted || code == 0));

    auto resumed = small_run(cut, 40);
    resumed.push_back("--resume");
    REQUIRE(invoke(resumed).code == 0);
    CHECK(slurp(full / "checkpoints.jsonl") == slurp(cut / "checkpoints.jsonl"));
}
