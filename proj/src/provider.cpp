#include "circex/provider.hpp"

#include "circex/errors.hpp"
#include "circex/sha256.hpp"
#include "circex/text.hpp"

#include "httplib.h"
#include "json.hpp"

#include <cstdlib>
#include <fstream>

namespace circex {

using nlohmann::json;

void ProviderConfig::validate() const {
    if (provider_name.empty()) throw UsageError("provider name must not be empty");
    if (temperature < 0.0 || temperature > 2.0) {
        throw UsageError("temperature must lie in [0, 2]");
    }
    if (max_concurrency < 1) throw UsageError("max_concurrency must be at least 1");
    if (max_retries < 0) throw UsageError("max_retries must be nonnegative");
}

std::string ProviderConfig::api_key_env() const {
    if (!api_key_source.empty()) return api_key_source;
    std::string env;
    for (char c : provider_name) {
        env.push_back(text::is_alnum(c) ? static_cast<char>(std::toupper(static_cast<unsigned char>(c))) : '_');
    }
    return env + "_API_KEY";
}

MockProvider::MockProvider(const ProviderConfig& config) {
    if (config.mock_script_path.empty()) return;
    std::ifstream in(config.mock_script_path);
    if (!in) throw DataError("file-missing: cannot open mock script " + config.mock_script_path.string());
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (text::trim(line).empty()) continue;
        json obj;
        try {
            obj = json::parse(line);
        } catch (const json::parse_error& e) {
            throw DataError("mock script line " + std::to_string(line_no) + " is not valid JSON: " + e.what());
        }
        Rule rule;
        if (!obj.contains("match") || !obj["match"].is_object() || !obj.contains("response") ||
            !obj["response"].is_string()) {
            throw DataError("mock script line " + std::to_string(line_no) +
                            " must carry a \"match\" object and a \"response\" string");
        }
        const auto& match = obj["match"];
        if (match.contains("narrative_id") && match["narrative_id"].is_string()) {
            rule.narrative_id = match["narrative_id"].get<std::string>();
        }
        if (match.contains("prompt_sha256") && match["prompt_sha256"].is_string()) {
            rule.prompt_sha256 = match["prompt_sha256"].get<std::string>();
        }
        if (!rule.narrative_id && !rule.prompt_sha256) {
            throw DataError("mock script line " + std::to_string(line_no) +
                            " match needs narrative_id or prompt_sha256");
        }
        rule.response = obj["response"].get<std::string>();
        rules_.push_back(std::move(rule));
    }
}

std::string MockProvider::complete(const RenderedPrompt& prompt, const ProviderConfig& config) {
    std::optional<std::string> hash; // computed lazily, most scripts match by id
    for (const auto& rule : rules_) {
        if (rule.narrative_id && *rule.narrative_id == prompt.narrative_id) return rule.response;
        if (rule.prompt_sha256) {
            if (!hash) hash = sha256_hex(prompt.text);
            if (*rule.prompt_sha256 == *hash) return rule.response;
        }
    }
    return config.mock_default_response;
}

namespace {

struct ParsedUrl {
    std::string scheme_host; // e.g. "https://api.example.com:8443"
    std::string path_prefix; // e.g. "/v1"
};

ParsedUrl split_base_url(const std::string& url) {
    const auto scheme_end = url.find("://");
    if (scheme_end == std::string::npos) {
        throw UsageError("base_url must start with http:// or https://: " + url);
    }
    const auto path_start = url.find('/', scheme_end + 3);
    if (path_start == std::string::npos) return {url, ""};
    std::string prefix = url.substr(path_start);
    while (!prefix.empty() && prefix.back() == '/') prefix.pop_back();
    return {url.substr(0, path_start), prefix};
}

} // namespace

HttpChatProvider::HttpChatProvider(const ProviderConfig& config) : name_(config.provider_name) {
    if (!config.base_url) {
        throw UsageError("provider \"" + config.provider_name +
                         "\" needs a base_url (flag or " + [&] {
                             std::string env = config.api_key_env();
                             env.replace(env.rfind("_API_KEY"), 8, "_BASE_URL");
                             return env;
                         }() + ")");
    }
    const auto parsed = split_base_url(*config.base_url);
    scheme_host_ = parsed.scheme_host;
    path_prefix_ = parsed.path_prefix;

    const char* key = std::getenv(config.api_key_env().c_str());
    if (key == nullptr || *key == '\0') {
        throw ProviderError(ProviderFailure::Auth,
                            "auth-failure: environment variable " + config.api_key_env() + " is not set");
    }
    api_key_ = key;
}

std::string HttpChatProvider::complete(const RenderedPrompt& prompt, const ProviderConfig& config) {
    httplib::Client client(scheme_host_);
    const auto timeout = config.request_timeout;
    client.set_connection_timeout(std::chrono::duration_cast<std::chrono::seconds>(timeout).count(),
                                  (timeout % std::chrono::seconds(1)).count() * 1000);
    client.set_read_timeout(std::chrono::duration_cast<std::chrono::seconds>(timeout).count(),
                            (timeout % std::chrono::seconds(1)).count() * 1000);
    client.set_bearer_token_auth(api_key_);

    json body;
    body["model"] = config.model_name;
    body["temperature"] = config.temperature;
    body["messages"] = json::array({json{{"role", "user"}, {"content", prompt.text}}});

    const auto result = client.Post(path_prefix_ + "/chat/completions", body.dump(), "application/json");
    if (!result) {
        const auto err = result.error();
        if (err == httplib::Error::ConnectionTimeout || err == httplib::Error::Read ||
            err == httplib::Error::Write) {
            throw ProviderError(ProviderFailure::Timeout,
                                "timeout contacting " + scheme_host_ + ": " + httplib::to_string(err));
        }
        throw ProviderError(ProviderFailure::Transport,
                            "transport failure contacting " + scheme_host_ + ": " + httplib::to_string(err));
    }
    if (result->status == 401 || result->status == 403) {
        throw ProviderError(ProviderFailure::Auth,
                            "auth-failure: HTTP " + std::to_string(result->status) + " from " + scheme_host_);
    }
    if (result->status == 429 || result->status >= 500) {
        throw ProviderError(ProviderFailure::Transport,
                            "HTTP " + std::to_string(result->status) + " from " + scheme_host_);
    }
    if (result->status != 200) {
        throw ProviderError(ProviderFailure::Transport,
                            "unexpected HTTP " + std::to_string(result->status) + " from " + scheme_host_);
    }

    json doc;
    try {
        doc = json::parse(result->body);
    } catch (const json::parse_error& e) {
        throw ProviderError(ProviderFailure::Transport,
                            std::string("response body is not valid JSON: ") + e.what());
    }
    try {
        return doc.at("choices").at(0).at("message").at("content").get<std::string>();
    } catch (const json::exception&) {
        throw ProviderError(ProviderFailure::Transport,
                            "response carries no choices[0].message.content field");
    }
}

std::unique_ptr<ChatProvider> make_provider(const ProviderConfig& config) {
    config.validate();
    if (config.provider_name == "mock") return std::make_unique<MockProvider>(config);
    return std::make_unique<HttpChatProvider>(config);
}

} // namespace circex
