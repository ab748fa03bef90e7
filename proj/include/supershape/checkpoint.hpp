#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "supershape/evolve.hpp"

namespace supershape {

// One JSON object per generation, one line each:
//   {"config": <echo>, "generation": g,
//    "population": [{"genes": [15 numbers], "raw": x | null, "valid": bool}, ...],
//    "best": i, "best_raw": x | null,
//    "rng_state": "<std::mt19937_64 text state>", "rng_digest": "<16 hex>",
//    "archive_added": [[...], ...]}            (novelty runs only)
// Numbers are printed as shortest round-trip decimals, so genes, fitness and
// the RNG state reload bit-exactly.
struct CheckpointEntry {
    nlohmann::json config;
    GenerationRecord record;
    bool novelty = false;
    std::vector<Descriptor> archive_added;
};

std::string checkpoint_line(const CheckpointEntry& entry);
CheckpointEntry parse_checkpoint_line(const std::string& line);  // throws Error{invalid_config}
std::vector<CheckpointEntry> read_checkpoints(const std::filesystem::path& path);

// Appends lines and flushes after each; throws Error{io_error} on failure.
class CheckpointWriter {
public:
    CheckpointWriter(const std::filesystem::path& path, bool append);
    void write(const CheckpointEntry& entry);

private:
    std::filesystem::path path_;
    std::ofstream out_;
};

}  // namespace supershape
