#pragma once

#include "vrb/ragflow.hpp"

#include <string>

namespace vrb {

/// Endpoint settings for a chat-completions-style server. The auth token
/// is read from the environment variable named by `token_env` when the
/// first request is made; requests go out without an Authorization header
/// when the variable is unset.
struct HttpLlmConfig {
    std::string base_url;  // scheme://host[:port]
    std::string model;
    std::string token_env = "VRB_LLM_TOKEN";
    int timeout_seconds = 60;
};

class HttpLlmClient : public LlmClient {
public:
    explicit HttpLlmClient(HttpLlmConfig config);

    std::string generate(const std::string& instruction, const std::string& input,
                         const GenParams& params) override;

    /// Function calling over the same chat endpoint: the system prompt
    /// requests a JSON object holding the schema fields, and the reply is
    /// parsed as such (a fenced or surrounded object is tolerated).
    std::map<std::string, std::string> call_function(const FunctionSchema& schema,
                                                     const std::string& input) override;

private:
    std::string chat(const std::string& system, const std::string& user, double temperature,
                     int max_tokens);

    HttpLlmConfig config_;
};

}  // namespace vrb
