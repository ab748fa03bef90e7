#include "supershape/run_config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "supershape/error.hpp"

namespace supershape {

namespace {

[[noreturn]] void bad_value(const std::string& key, const std::string& value, const std::string& why) {
    throw Error(ErrorKind::invalid_config, "bad value '" + value + "' for " + key + ": " + why);
}

std::string trim(std::string s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::stringstream in(s);
    std::string part;
    while (std::getline(in, part, sep)) parts.push_back(trim(part));
    if (!s.empty() && s.back() == sep) parts.emplace_back();
    return parts;
}

template <typename T>
T parse_number(const std::string& key, const std::string& value) {
    T out{};
    const std::string v = trim(value);
    const char* begin = v.data() + (!v.empty() && v.front() == '+' ? 1 : 0);
    const auto [end, ec] = std::from_chars(begin, v.data() + v.size(), out);
    if (v.empty() || ec != std::errc{} || end != v.data() + v.size()) bad_value(key, value, "not a number");
    if constexpr (std::is_floating_point_v<T>)
        if (!std::isfinite(out)) bad_value(key, value, "not finite");
    return out;
}

std::size_t parse_count(const std::string& key, const std::string& value) {
    const auto v = parse_number<long long>(key, value);
    if (v < 0) bad_value(key, value, "must be non-negative");
    return static_cast<std::size_t>(v);
}

Rgb parse_rgb(const std::string& key, const std::string& value) {
    const auto parts = split(value, ',');
    if (parts.size() != 3) bad_value(key, value, "expected r,g,b");
    std::uint8_t c[3];
    for (int i = 0; i < 3; ++i) {
        const int v = parse_number<int>(key, parts[i]);
        if (v < 0 || v > 255) bad_value(key, value, "channels must lie in [0, 255]");
        c[i] = static_cast<std::uint8_t>(v);
    }
    return {c[0], c[1], c[2]};
}

std::vector<std::string> build_keys() {
    std::vector<std::string> keys = {"population", "generations",    "seed",   "mutation_rate",
                                     "selection_rate", "elitism"};
    for (auto name : kGeneNames) keys.push_back("bounds_" + std::string(name));
    for (const char* k : {"width", "height", "background", "framing", "resolution", "objective",
                          "coverage_target", "mask", "endpoint", "mode", "target", "timeout", "novelty_k",
                          "novelty_threshold", "out", "export_every", "threads"})
        keys.emplace_back(k);
    return keys;
}

}  // namespace

const char* to_string(ObjectiveKind kind) noexcept {
    switch (kind) {
        case ObjectiveKind::coverage: return "coverage";
        case ObjectiveKind::silhouette: return "silhouette";
        case ObjectiveKind::brightness: return "brightness";
        case ObjectiveKind::iou: return "iou";
        case ObjectiveKind::remote: return "remote";
        case ObjectiveKind::novelty: return "novelty";
    }
    return "unknown";
}

const std::vector<std::string>& config_keys() {
    static const std::vector<std::string> keys = build_keys();
    return keys;
}

void RunConfig::set(const std::string& key, const std::string& raw_value) {
    const std::string value = trim(raw_value);
    auto& ga_ = ga;
    auto& render = phenotype.render;
    if (key == "population") ga_.population_size = parse_count(key, value);
    else if (key == "generations") ga_.generations = parse_count(key, value);
    else if (key == "seed") ga_.rng_seed = parse_number<std::uint64_t>(key, value);
    else if (key == "mutation_rate") ga_.mutation_rate = parse_number<double>(key, value);
    else if (key == "selection_rate") ga_.selection_rate = parse_number<double>(key, value);
    else if (key == "elitism") ga_.elitism = parse_count(key, value);
    else if (key.starts_with("bounds_")) {
        const auto gene = gene_index(key.substr(7));
        if (!gene) throw Error(ErrorKind::invalid_config, "unknown gene in key " + key);
        const auto parts = split(value, ',');
        if (parts.size() != 2) bad_value(key, value, "expected lo,hi");
        ga_.gene_bounds[*gene] = {parse_number<double>(key, parts[0]), parse_number<double>(key, parts[1])};
    } else if (key == "width") render.width = parse_number<int>(key, value);
    else if (key == "height") render.height = parse_number<int>(key, value);
    else if (key == "background") render.background = parse_rgb(key, value);
    else if (key == "framing") render.framing = parse_number<double>(key, value);
    else if (key == "resolution") {
        const auto x = value.find('x');
        const int t = parse_number<int>(key, value.substr(0, x));
        const int p = x == std::string::npos ? t : parse_number<int>(key, value.substr(x + 1));
        phenotype.grid = {t, p};
    } else if (key == "objective") {
        bool found = false;
        for (auto kind : {ObjectiveKind::coverage, ObjectiveKind::silhouette, ObjectiveKind::brightness,
                          ObjectiveKind::iou, ObjectiveKind::remote, ObjectiveKind::novelty})
            if (value == to_string(kind)) {
                objective.kind = kind;
                found = true;
            }
        if (!found) bad_value(key, value, "expected coverage|silhouette|brightness|iou|remote|novelty");
    } else if (key == "coverage_target") objective.coverage_target = parse_number<double>(key, value);
    else if (key == "mask") objective.mask = value;
    else if (key == "endpoint") objective.endpoint = value;
    else if (key == "mode") {
        const auto mode = parse_score_mode(value);
        if (!mode) bad_value(key, value, "expected imagenet_class|clip_text");
        objective.mode = *mode;
    } else if (key == "target") objective.target = raw_value;
    else if (key == "timeout") objective.timeout_seconds = parse_number<double>(key, value);
    else if (key == "novelty_k") objective.novelty.k = parse_count(key, value);
    else if (key == "novelty_threshold") objective.novelty.add_threshold = parse_number<double>(key, value);
    else if (key == "out") out_dir = value;
    else if (key == "export_every") export_every = parse_number<int>(key, value);
    else if (key == "threads") threads = parse_number<int>(key, value);
    else throw Error(ErrorKind::invalid_config, "unknown config key '" + key + "'");
}

void RunConfig::validate() const {
    ga.validate();
    phenotype.render.validate();
    if (phenotype.grid.theta < kMinResolution || phenotype.grid.phi < kMinResolution)
        throw Error(ErrorKind::invalid_config, "resolution must be at least 3x3");
    if (export_every < 0) throw Error(ErrorKind::invalid_config, "export_every must be >= 0");
    if (threads < 0) throw Error(ErrorKind::invalid_config, "threads must be >= 0");
    if (out_dir.empty()) throw Error(ErrorKind::invalid_config, "out must not be empty");
    switch (objective.kind) {
        case ObjectiveKind::coverage:
            if (!(objective.coverage_target >= 0.0 && objective.coverage_target <= 1.0))
                throw Error(ErrorKind::invalid_config, "coverage_target must lie in [0, 1]");
            break;
        case ObjectiveKind::iou:
            if (objective.mask.empty()) throw Error(ErrorKind::invalid_config, "objective iou needs mask");
            break;
        case ObjectiveKind::remote:
            if (objective.endpoint.empty())
                throw Error(ErrorKind::invalid_config,
                            std::string("objective remote needs endpoint (or ") + kEndpointEnv + ")");
            validate_target(objective.mode, objective.target);
            if (!(objective.timeout_seconds > 0.0)) throw Error(ErrorKind::invalid_config, "timeout must be > 0");
            break;
        case ObjectiveKind::novelty:
            if (objective.novelty.k == 0 || !(objective.novelty.add_threshold >= 0.0))
                throw Error(ErrorKind::invalid_config, "novelty needs novelty_k > 0 and novelty_threshold >= 0");
            break;
        case ObjectiveKind::silhouette:
        case ObjectiveKind::brightness: break;
    }
}

nlohmann::json RunConfig::to_json() const {
    nlohmann::json bounds = nlohmann::json::object();
    for (std::size_t i = 0; i < kGeneCount; ++i)
        bounds[std::string(kGeneNames[i])] = {ga.gene_bounds[i].lo, ga.gene_bounds[i].hi};
    const auto& r = phenotype.render;
    nlohmann::json objective_json = {{"kind", to_string(objective.kind)}};
    switch (objective.kind) {
        case ObjectiveKind::coverage: objective_json["coverage_target"] = objective.coverage_target; break;
        case ObjectiveKind::iou: objective_json["mask"] = objective.mask.string(); break;
        case ObjectiveKind::remote:
            objective_json["endpoint"] = objective.endpoint;
            objective_json["mode"] = to_string(objective.mode);
            objective_json["target"] = objective.target;
            objective_json["timeout"] = objective.timeout_seconds;
            break;
        case ObjectiveKind::novelty:
            objective_json["k"] = objective.novelty.k;
            objective_json["threshold"] = objective.novelty.add_threshold;
            break;
        default: break;
    }
    return {{"population", ga.population_size},
            {"generations", ga.generations},
            {"seed", ga.rng_seed},
            {"mutation_rate", ga.mutation_rate},
            {"selection_rate", ga.selection_rate},
            {"elitism", ga.elitism},
            {"bounds", bounds},
            {"render", {{"width", r.width}, {"height", r.height},
                        {"background", {r.background.r, r.background.g, r.background.b}},
                        {"framing", r.framing}}},
            {"resolution", {phenotype.grid.theta, phenotype.grid.phi}},
            {"objective", objective_json}};
}

std::vector<std::pair<std::string, std::string>> parse_config_text(const std::string& text) {
    std::vector<std::pair<std::string, std::string>> out;
    std::istringstream in(text);
    std::string line;
    int number = 0;
    while (std::getline(in, line)) {
        ++number;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw Error(ErrorKind::invalid_config, "line " + std::to_string(number) + ": expected key = value");
        std::string key = trim(line.substr(0, eq));
        if (key.empty()) throw Error(ErrorKind::invalid_config, "line " + std::to_string(number) + ": empty key");
        out.emplace_back(std::move(key), trim(line.substr(eq + 1)));
    }
    return out;
}

RunConfig resolve_config(const std::optional<std::string>& file_text,
                         const std::vector<std::pair<std::string, std::string>>& overrides,
                         const std::optional<std::string>& env_endpoint) {
    RunConfig config;
    if (env_endpoint && !env_endpoint->empty()) config.objective.endpoint = *env_endpoint;
    if (file_text)
        for (const auto& [k, v] : parse_config_text(*file_text)) config.set(k, v);
    for (const auto& [k, v] : overrides) config.set(k, v);
    return config;
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::io_error, "cannot read " + path.string());
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

}  // namespace supershape
