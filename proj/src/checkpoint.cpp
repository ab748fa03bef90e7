#include "supershape/checkpoint.hpp"

#include <cmath>

#include "supershape/error.hpp"

namespace supershape {

using nlohmann::json;

namespace {

json raw_or_null(const Fitness& f) { return f.valid ? json(f.raw) : json(nullptr); }

}  // namespace

std::string checkpoint_line(const CheckpointEntry& entry) {
    const auto& rec = entry.record;
    json population = json::array();
    for (const auto& s : rec.scored) {
        population.push_back({{"genes", std::vector<double>(s.genome.genes().begin(), s.genome.genes().end())},
                              {"raw", raw_or_null(s.fitness)},
                              {"valid", s.fitness.valid}});
    }
    json doc = {{"config", entry.config},
                {"generation", rec.index},
                {"population", std::move(population)},
                {"best", rec.best_index},
                {"best_raw", raw_or_null(rec.best().fitness)},
                {"rng_state", rec.rng_state},
                {"rng_digest", rec.rng_state_digest}};
    if (entry.novelty) doc["archive_added"] = entry.archive_added;
    return doc.dump();
}

CheckpointEntry parse_checkpoint_line(const std::string& line) {
    try {
        const json doc = json::parse(line);
        CheckpointEntry entry;
        entry.config = doc.at("config");
        entry.record.index = doc.at("generation").get<std::size_t>();
        for (const auto& p : doc.at("population")) {
            const auto genes = p.at("genes").get<std::vector<double>>();
            if (genes.size() != kGeneCount) throw Error(ErrorKind::invalid_config, "checkpoint genome arity");
            std::array<double, kGeneCount> g{};
            std::copy(genes.begin(), genes.end(), g.begin());
            const bool valid = p.at("valid").get<bool>();
            entry.record.scored.push_back({Genome(g), valid ? Fitness::of(p.at("raw").get<double>()) : Fitness::invalid()});
        }
        entry.record.best_index = doc.at("best").get<std::size_t>();
        if (entry.record.best_index >= entry.record.scored.size())
            throw Error(ErrorKind::invalid_config, "checkpoint best index out of range");
        entry.record.rng_state = doc.at("rng_state").get<std::string>();
        entry.record.rng_state_digest = doc.at("rng_digest").get<std::string>();
        if (Rng::deserialize(entry.record.rng_state).digest() != entry.record.rng_state_digest)
            throw Error(ErrorKind::invalid_config, "checkpoint RNG state does not match its digest");
        if (auto it = doc.find("archive_added"); it != doc.end()) {
            entry.novelty = true;
            entry.archive_added = it->get<std::vector<Descriptor>>();
        }
        return entry;
    } catch (const json::exception& e) {
        throw Error(ErrorKind::invalid_config, std::string("malformed checkpoint line: ") + e.what());
    }
}

std::vector<CheckpointEntry> read_checkpoints(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::io_error, "cannot open checkpoint file " + path.string());
    std::vector<CheckpointEntry> entries;
    std::string line;
    while (std::getline(in, line))
        if (!line.empty()) entries.push_back(parse_checkpoint_line(line));
    return entries;
}

CheckpointWriter::CheckpointWriter(const std::filesystem::path& path, bool append)
    : path_(path), out_(path, append ? std::ios::app : std::ios::trunc) {
    if (!out_) throw Error(ErrorKind::io_error, "cannot open " + path.string() + " for writing");
}

void CheckpointWriter::write(const CheckpointEntry& entry) {
    out_ << checkpoint_line(entry) << '\n';
    out_.flush();
    if (!out_) throw Error(ErrorKind::io_error, "failed writing " + path_.string());
}

}  // namespace supershape
