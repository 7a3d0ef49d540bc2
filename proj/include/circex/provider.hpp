#pragma once

#include "circex/prompt.hpp"

#include <chrono>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace circex {

struct ProviderConfig {
    std::string provider_name = "mock";
    std::string model_name = "mock-model";
    double temperature = 0.3;
    int max_concurrency = 4;
    int max_retries = 3;
    std::chrono::milliseconds request_timeout{30000};
    std::optional<std::string> base_url;
    std::string api_key_source; // env var name; empty derives <PROVIDER>_API_KEY

    // Mock provider only.
    std::filesystem::path mock_script_path;
    std::string mock_default_response = "EVIDENCE: None found\nFINAL CODING: No";

    // Retry pacing (timing only, never affects verdict content).
    std::chrono::milliseconds retry_initial_backoff{250};
    std::chrono::milliseconds retry_max_backoff{4000};

    void validate() const; // throws UsageError
    std::string api_key_env() const;
};

// Single-turn request/response contract: one user message in, the
// assistant text out. Implementations throw ProviderError on failure.
class ChatProvider {
public:
    virtual ~ChatProvider() = default;
    virtual std::string complete(const RenderedPrompt& prompt, const ProviderConfig& config) = 0;
    virtual std::string name() const = 0;
};

// Offline provider scripted by a JSONL file of
//   {"match": {"narrative_id": ...} | {"prompt_sha256": ...}, "response": ...}
// rules; unmatched prompts get the configured default response.
class MockProvider final : public ChatProvider {
public:
    MockProvider() = default;
    explicit MockProvider(const ProviderConfig& config);

    std::string complete(const RenderedPrompt& prompt, const ProviderConfig& config) override;
    std::string name() const override { return "mock"; }

private:
    struct Rule {
        std::optional<std::string> narrative_id;
        std::optional<std::string> prompt_sha256;
        std::string response;
    };
    std::vector<Rule> rules_;
};

// OpenAI-style chat-completions transport over HTTP(S).
class HttpChatProvider final : public ChatProvider {
public:
    explicit HttpChatProvider(const ProviderConfig& config);

    std::string complete(const RenderedPrompt& prompt, const ProviderConfig& config) override;
    std::string name() const override { return name_; }

private:
    std::string name_;
    std::string scheme_host_;
    std::string path_prefix_;
    std::string api_key_;
};

// Dispatch on provider_name: "mock" or any live provider name.
std::unique_ptr<ChatProvider> make_provider(const ProviderConfig& config);

} // namespace circex
