#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "supershape/evolve.hpp"
#include "supershape/pipeline.hpp"
#include "supershape/remote_scorer.hpp"

namespace supershape {

enum class ObjectiveKind { coverage, silhouette, brightness, iou, remote, novelty };

const char* to_string(ObjectiveKind kind) noexcept;

struct ObjectiveSpec {
    ObjectiveKind kind = ObjectiveKind::coverage;
    double coverage_target = 0.5;
    std::filesystem::path mask;  // iou
    std::string endpoint;        // remote
    ScoreMode mode = ScoreMode::clip_text;
    std::string target;
    double timeout_seconds = 30.0;
    NoveltyConfig novelty;
};

inline constexpr const char* kEndpointEnv = "SUPERSHAPE_SCORER_ENDPOINT";

// Everything an `evolve` run needs. Text form is one `key = value` per line;
// `#` starts a comment. Every key is also a `--key` flag on the CLI.
struct RunConfig {
    GAConfig ga;
    PhenotypeConfig phenotype;
    ObjectiveSpec objective;
    std::filesystem::path out_dir = "out";
    int export_every = 1;  // best-of-generation PNG cadence; 0 disables
    int threads = 0;       // 0 = OpenMP default

    // Throws Error{invalid_config} for unknown keys or unparsable values.
    void set(const std::string& key, const std::string& value);
    void validate() const;

    // Echo stored in every checkpoint line; excludes out_dir and threads.
    nlohmann::json to_json() const;
};

const std::vector<std::string>& config_keys();

// key -> value pairs from the text format; throws Error{invalid_config} with the line number.
std::vector<std::pair<std::string, std::string>> parse_config_text(const std::string& text);

// defaults (endpoint from `env_endpoint` if given) < config file < overrides.
RunConfig resolve_config(const std::optional<std::string>& file_text,
                         const std::vector<std::pair<std::string, std::string>>& overrides,
                         const std::optional<std::string>& env_endpoint = std::nullopt);

std::string read_text_file(const std::filesystem::path& path);  // throws Error{io_error}

}  // namespace supershape
