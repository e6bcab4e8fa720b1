#include "vrb/llm_http.hpp"

#include "vrb/errors.hpp"

#include <httplib.h>
#include <json.hpp>

#include <cstdlib>

namespace vrb {

namespace {

using nlohmann::json;

bool is_timeout(httplib::Error e) {
    return e == httplib::Error::ConnectionTimeout || e == httplib::Error::Read ||
           e == httplib::Error::Write;
}

// Pulls a JSON object out of a chat reply that may wrap it in prose or a
// code fence.
json parse_object_reply(const std::string& text) {
    const auto start = text.find('{');
    const auto end = text.rfind('}');
    if (start == std::string::npos || end == std::string::npos || end < start)
        throw ClientError("function reply holds no JSON object");
    const auto parsed = json::parse(text.substr(start, end - start + 1), nullptr, false);
    if (parsed.is_discarded() || !parsed.is_object())
        throw ClientError("function reply is not valid JSON");
    return parsed;
}

}  // namespace

HttpLlmClient::HttpLlmClient(HttpLlmConfig config) : config_(std::move(config)) {
    if (config_.base_url.empty()) throw InvalidArgumentError("LLM base_url must be set");
}

std::string HttpLlmClient::chat(const std::string& system, const std::string& user,
                                double temperature, int max_tokens) {
    httplib::Client cli(config_.base_url);
    cli.set_connection_timeout(config_.timeout_seconds, 0);
    cli.set_read_timeout(config_.timeout_seconds, 0);
    cli.set_write_timeout(config_.timeout_seconds, 0);

    httplib::Headers headers;
    if (const char* token = std::getenv(config_.token_env.c_str()); token && *token)
        headers.emplace("Authorization", std::string("Bearer ") + token);

    json body;
    body["model"] = config_.model;
    body["temperature"] = temperature;
    body["max_tokens"] = max_tokens;
    body["messages"] = json::array({json{{"role", "system"}, {"content", system}},
                                    json{{"role", "user"}, {"content", user}}});

    auto res = cli.Post("/v1/chat/completions", headers, body.dump(), "application/json");
    if (!res) {
        if (is_timeout(res.error())) throw ClientTimeoutError("LLM request timed out");
        throw ClientError("LLM request failed: " + httplib::to_string(res.error()));
    }
    if (res->status != 200)
        throw ClientError("LLM endpoint returned status " + std::to_string(res->status));

    const auto parsed = json::parse(res->body, nullptr, false);
    if (parsed.is_discarded()) throw ClientError("LLM reply is not valid JSON");
    try {
        return parsed.at("choices").at(0).at("message").at("content").get<std::string>();
    } catch (const json::exception&) {
        throw ClientError("LLM reply lacks choices[0].message.content");
    }
}

std::string HttpLlmClient::generate(const std::string& instruction, const std::string& input,
                                    const GenParams& params) {
    return chat(instruction, input, params.temperature, params.max_output_tokens);
}

std::map<std::string, std::string> HttpLlmClient::call_function(const FunctionSchema& schema,
                                                                const std::string& input) {
    std::string system = "Call the function " + schema.name +
                         " by answering with a single JSON object holding string fields";
    std::string sep = ": ";
    for (const auto& f : schema.fields) {
        system += sep + "\"" + f + "\"";
        sep = ", ";
    }
    system += ". No text outside the JSON object.";

    const GenParams defaults;
    const auto reply = chat(system, input, defaults.temperature, defaults.max_output_tokens);
    const auto parsed = parse_object_reply(reply);

    std::map<std::string, std::string> out;
    for (const auto& f : schema.fields)
        if (parsed.contains(f) && parsed[f].is_string()) out[f] = parsed[f].get<std::string>();
    return out;
}

}  // namespace vrb
