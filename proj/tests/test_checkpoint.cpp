#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <limits>

#include "supershape/checkpoint.hpp"
#include "supershape/error.hpp"
#include "supershape/run_config.hpp"

using namespace supershape;
namespace fs = std::filesystem;

namespace {

GenerationRecord sample_record() {
    GAConfig config;
    config.population_size = 5;
    config.rng_seed = 31;
    Rng rng(config.rng_seed);
    const auto population = init_population(config, rng);
    GenerationRecord record;
    record.index = 6;
    for (std::size_t i = 0; i < population.size(); ++i)
        record.scored.push_back({population[i], i == 2 ? Fitness::invalid() : Fitness::of(-0.1 / (i + 3))});
    record.best_index = best_index(record.scored);
    record.rng_state = rng.serialize();
    record.rng_state_digest = rng.digest();
    return record;
}

fs::path temp_file(const char* name) {
    auto dir = fs::temp_directory_path() / "supershape_checkpoint_test";
    fs::create_directories(dir);
    auto path = dir / name;
    fs::remove(path);
    return path;
}

}  // namespace

TEST_CASE("checkpoint lines round-trip bit-exactly") {
    const CheckpointEntry entry{RunConfig{}.to_json(), sample_record()};
    const std::string line = checkpoint_line(entry);
    CHECK(line.find('\n') == std::string::npos);
    const auto back = parse_checkpoint_line(line);
    CHECK(back.config == entry.config);
    CHECK_FALSE(back.novelty);
    CHECK(back.record.index == 6);
    CHECK(back.record.best_index == entry.record.best_index);
    CHECK(back.record.rng_state == entry.record.rng_state);
    CHECK(back.record.rng_state_digest == entry.record.rng_state_digest);
    REQUIRE(back.record.scored.size() == 5);
    for (std::size_t i = 0; i < 5; ++i) {
        CHECK(back.record.scored[i].genome == entry.record.scored[i].genome);
        CHECK(back.record.scored[i].fitness == entry.record.scored[i].fitness);
    }
    CHECK(checkpoint_line(back) == line);
    // the stored state resumes the same stream
    CHECK(Rng::deserialize(back.record.rng_state) == Rng::deserialize(entry.record.rng_state));
}

TEST_CASE("checkpoint JSON layout") {
    const auto record = sample_record();
    const auto j = nlohmann::json::parse(checkpoint_line({RunConfig{}.to_json(), record}));
    CHECK(j["generation"] == 6);
    CHECK(j["population"].size() == 5);
    CHECK(j["population"][0]["genes"].size() == kGeneCount);
    CHECK(j["population"][2]["raw"].is_null());
    CHECK(j["population"][2]["valid"] == false);
    CHECK(j["rng_digest"].get<std::string>().size() == 16);
    CHECK_FALSE(j.contains("archive_added"));
    CHECK(j["best_raw"].get<double>() == record.best().fitness.raw);
}

TEST_CASE("novelty entries carry archive additions") {
    CheckpointEntry entry{RunConfig{}.to_json(), sample_record(), true, {{0.25, 1.0 / 3}, {0.0, 1e-300}}};
    const auto back = parse_checkpoint_line(checkpoint_line(entry));
    CHECK(back.novelty);
    CHECK(back.archive_added == entry.archive_added);

    entry.archive_added.clear();
    const auto empty = parse_checkpoint_line(checkpoint_line(entry));
    CHECK(empty.novelty);
    CHECK(empty.archive_added.empty());
}

TEST_CASE("malformed lines are rejected") {
    const std::string good = checkpoint_line({RunConfig{}.to_json(), sample_record()});
    auto mutate_json = [&](auto edit) {
        auto j = nlohmann::json::parse(good);
        edit(j);
        return j.dump();
    };
    for (const std::string& bad :
         {std::string("not json"), std::string("[]"), good.substr(0, good.size() / 2),
          mutate_json([](auto& j) { j.erase("rng_state"); }),
          mutate_json([](auto& j) { j["population"][0]["genes"].erase(0); }),
          mutate_json([](auto& j) { j["best"] = 99; }),
          mutate_json([](auto& j) { j["rng_state"] = "1 2 3"; })}) {
        try {
            parse_checkpoint_line(bad);
            FAIL("accepted: " << bad.substr(0, 60));
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::invalid_config);
        }
    }
}

TEST_CASE("writer appends flushed lines that read back") {
    const auto path = temp_file("stream.jsonl");
    const CheckpointEntry entry{RunConfig{}.to_json(), sample_record()};
    {
        CheckpointWriter writer(path, false);
        writer.write(entry);
        // visible before the writer goes away
        CHECK(read_checkpoints(path).size() == 1);
    }
    {
        CheckpointWriter writer(path, true);
        writer.write(entry);
    }
    const auto all = read_checkpoints(path);
    REQUIRE(all.size() == 2);
    CHECK(checkpoint_line(all[1]) == checkpoint_line(entry));
    {
        CheckpointWriter truncating(path, false);
    }
    CHECK(read_checkpoints(path).empty());
    CHECK_THROWS_AS(read_checkpoints(path.parent_path() / "missing.jsonl"), Error);
    CHECK_THROWS_AS(CheckpointWriter(path.parent_path() / "no" / "such" / "dir.jsonl", false), Error);
}
