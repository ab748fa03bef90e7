#include "supershape/remote_scorer.hpp"

#include <httplib.h>

#include <charconv>
#include <cmath>
#include <json.hpp>

#include "supershape/error.hpp"
#include "supershape/png.hpp"

namespace supershape {

namespace {

using nlohmann::json;

httplib::Client make_client(const Endpoint& endpoint) {
    httplib::Client client(endpoint.base_url);
    const auto secs = std::chrono::duration_cast<std::chrono::seconds>(endpoint.timeout);
    const auto usecs = std::chrono::duration_cast<std::chrono::microseconds>(endpoint.timeout - secs);
    client.set_connection_timeout(secs.count(), usecs.count());
    client.set_read_timeout(secs.count(), usecs.count());
    client.set_write_timeout(secs.count(), usecs.count());
    return client;
}

enum class Attempt { ok, retry, fail };

Attempt parse_reply(const httplib::Result& res, const std::string& id, double& score) {
    if (!res) return Attempt::retry;
    if (res->status >= 500) return Attempt::retry;
    if (res->status != 200) return Attempt::fail;
    const json body = json::parse(res->body, nullptr, false);
    if (body.is_discarded() || !body.is_object()) return Attempt::fail;
    const auto rid = body.find("id");
    const auto rscore = body.find("score");
    if (rid == body.end() || !rid->is_string() || rid->get<std::string>() != id) return Attempt::fail;
    if (rscore == body.end() || !rscore->is_number()) return Attempt::fail;
    score = rscore->get<double>();
    return std::isfinite(score) ? Attempt::ok : Attempt::fail;
}

}  // namespace

const char* to_string(ScoreMode mode) noexcept {
    return mode == ScoreMode::imagenet_class ? "imagenet_class" : "clip_text";
}

std::optional<ScoreMode> parse_score_mode(const std::string& text) {
    if (text == "imagenet_class") return ScoreMode::imagenet_class;
    if (text == "clip_text") return ScoreMode::clip_text;
    return std::nullopt;
}

void validate_target(ScoreMode mode, const std::string& target) {
    if (mode == ScoreMode::clip_text) {
        if (target.empty()) throw Error(ErrorKind::invalid_config, "clip_text needs a non-empty caption");
        return;
    }
    int cls = -1;
    const auto [end, ec] = std::from_chars(target.data(), target.data() + target.size(), cls);
    if (target.empty() || ec != std::errc{} || end != target.data() + target.size() || cls < 0 || cls > 999)
        throw Error(ErrorKind::invalid_config,
                    "imagenet_class target must be an integer in [0, 999], got '" + target + "'");
}

void ScoreRequest::validate() const {
    if (id.empty()) throw Error(ErrorKind::invalid_config, "score request needs an id");
    validate_target(mode, target);
}

std::string ScoreRequest::to_json() const {
    const auto png = encode_png(image);
    const json body = {{"id", id}, {"image_png_b64", base64_encode(png)}, {"mode", to_string(mode)}, {"target", target}};
    return body.dump();
}

Fitness remote_score(const Endpoint& endpoint, const ScoreRequest& request) noexcept {
    try {
        request.validate();
        const std::string body = request.to_json();
        for (int attempt = 0; attempt < 2; ++attempt) {
            auto client = make_client(endpoint);
            double score = 0.0;
            switch (parse_reply(client.Post("/score", body, "application/json"), request.id, score)) {
                case Attempt::ok: return Fitness::of(score);
                case Attempt::fail: return Fitness::invalid();
                case Attempt::retry: break;
            }
        }
    } catch (...) {
    }
    return Fitness::invalid();
}

bool check_health(const Endpoint& endpoint) noexcept {
    try {
        auto client = make_client(endpoint);
        const auto res = client.Get("/healthz");
        return res && res->status == 200;
    } catch (...) {
        return false;
    }
}

RemoteScorer::RemoteScorer(Endpoint endpoint, ScoreMode mode, std::string target)
    : endpoint_(std::move(endpoint)), mode_(mode), target_(std::move(target)) {
    validate_target(mode_, target_);
}

Fitness RemoteScorer::score(const ImageBuffer& image) const {
    ScoreRequest request{std::to_string(next_id_.fetch_add(1)), image, mode_, target_};
    return remote_score(endpoint_, request);
}

}  // namespace supershape
