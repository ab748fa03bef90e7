#pragma once

#include <atomic>
#include <chrono>
#include <optional>
#include <string>

#include "supershape/image.hpp"
#include "supershape/scoring.hpp"

namespace supershape {

enum class ScoreMode { imagenet_class, clip_text };

const char* to_string(ScoreMode mode) noexcept;
std::optional<ScoreMode> parse_score_mode(const std::string& text);

// One image, one objective. imagenet_class targets are decimal class indices
// in [0, 999]; clip_text targets are non-empty captions.
struct ScoreRequest {
    std::string id;
    ImageBuffer image;
    ScoreMode mode = ScoreMode::clip_text;
    std::string target;

    void validate() const;  // throws Error{invalid_config}
    // {"id", "image_png_b64", "mode", "target"}
    std::string to_json() const;
};

void validate_target(ScoreMode mode, const std::string& target);

// e.g. "http://127.0.0.1:8000"
struct Endpoint {
    std::string base_url;
    std::chrono::milliseconds timeout{30000};
};

// POST {base_url}/score. Returns the reported score when the reply is HTTP
// 200 with a matching id and a finite numeric score. Transport failures and
// 5xx replies are retried once; 4xx replies and protocol violations are
// not. Every failure returns Fitness::invalid(); nothing throws.
Fitness remote_score(const Endpoint& endpoint, const ScoreRequest& request) noexcept;

// GET {base_url}/healthz == 200.
bool check_health(const Endpoint& endpoint) noexcept;

// Scorer adapter: every call gets a fresh request id.
class RemoteScorer final : public Scorer {
public:
    RemoteScorer(Endpoint endpoint, ScoreMode mode, std::string target);
    Fitness score(const ImageBuffer& image) const override;
    std::string name() const override { return "remote"; }

    const Endpoint& endpoint() const noexcept { return endpoint_; }

private:
    Endpoint endpoint_;
    ScoreMode mode_;
    std::string target_;
    mutable std::atomic<unsigned long long> next_id_{0};
};

}  // namespace supershape
