#include "circex/gateway.hpp"

#include "circex/errors.hpp"
#include "circex/sha256.hpp"
#include "circex/text.hpp"

#include "json.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <map>
#include <mutex>
#include <random>
#include <sstream>
#include <thread>

namespace circex {

using nlohmann::json;

RetrySleeper real_sleeper() {
    return [](std::chrono::milliseconds d) { std::this_thread::sleep_for(d); };
}

namespace {

std::chrono::milliseconds jittered_backoff(std::chrono::milliseconds base, std::chrono::milliseconds cap,
                                           int attempt) {
    auto delay = base * (1LL << std::min(attempt, 16));
    if (delay > cap) delay = cap;
    // +/-25% jitter; timing only, results are unaffected.
    thread_local std::mt19937 rng{std::random_device{}()};
    const auto low = delay.count() * 3 / 4;
    const auto high = delay.count() * 5 / 4;
    std::uniform_int_distribution<long long> dist(low, std::max(low, high));
    return std::chrono::milliseconds(dist(rng));
}

std::string format_temperature(double t) {
    std::ostringstream out;
    out.precision(6);
    out << t;
    return out.str();
}

} // namespace

Verdict classify(const RenderedPrompt& prompt, ChatProvider& provider, const ProviderConfig& config,
                 const RetrySleeper& sleep) {
    int attempts = 0;
    std::string last_error;
    while (true) {
        ++attempts;
        try {
            std::string raw = provider.complete(prompt, config);
            Verdict verdict = parse_verdict(raw);
            verdict.attempts = attempts;
            return verdict;
        } catch (const ProviderError& e) {
            if (!e.retryable()) throw;
            last_error = e.what();
            if (attempts > config.max_retries) {
                throw ProviderError(ProviderFailure::ExhaustedRetries,
                                    "exhausted-retries after " + std::to_string(attempts) +
                                        " attempts; last error: " + last_error);
            }
            sleep(jittered_backoff(config.retry_initial_backoff, config.retry_max_backoff, attempts - 1));
        }
    }
}

std::string checkpoint_key(const RenderedPrompt& prompt, const ProviderConfig& config) {
    std::string material = prompt.text;
    material.push_back('\0');
    material += config.model_name;
    material.push_back('\0');
    material += format_temperature(config.temperature);
    return sha256_hex(material);
}

namespace {

struct CheckpointEntry {
    Decision decision = Decision::Unparseable;
    std::optional<std::string> evidence;
    int attempts = 1;
    std::string raw_sha256;
};

std::map<std::string, CheckpointEntry> load_checkpoint(const std::filesystem::path& path) {
    std::map<std::string, CheckpointEntry> entries;
    std::ifstream in(path);
    if (!in) return entries; // absent checkpoint is a fresh run
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (text::trim(line).empty()) continue;
        json obj;
        try {
            obj = json::parse(line);
        } catch (const json::parse_error& e) {
            throw DataError("checkpoint-corrupt: " + path.string() + " line " + std::to_string(line_no) +
                            ": " + e.what());
        }
        if (!obj.contains("key") || !obj["key"].is_string() || !obj.contains("decision") ||
            !obj["decision"].is_string()) {
            throw DataError("checkpoint-corrupt: " + path.string() + " line " + std::to_string(line_no) +
                            ": rows need \"key\" and \"decision\" strings");
        }
        CheckpointEntry entry;
        const auto decision = decision_from_string(obj["decision"].get<std::string>());
        if (!decision) {
            throw DataError("checkpoint-corrupt: " + path.string() + " line " + std::to_string(line_no) +
                            ": unknown decision");
        }
        entry.decision = *decision;
        if (obj.contains("evidence") && obj["evidence"].is_string()) {
            entry.evidence = obj["evidence"].get<std::string>();
        }
        if (obj.contains("attempts") && obj["attempts"].is_number_integer()) {
            entry.attempts = obj["attempts"].get<int>();
        }
        if (obj.contains("raw_sha256") && obj["raw_sha256"].is_string()) {
            entry.raw_sha256 = obj["raw_sha256"].get<std::string>();
        }
        entries[obj["key"].get<std::string>()] = std::move(entry);
    }
    return entries;
}

void append_checkpoint(std::ofstream& out, const std::string& key, const BatchResult& result) {
    json obj;
    obj["key"] = key;
    obj["decision"] = std::string(to_string(result.verdict->decision));
    if (result.verdict->evidence) obj["evidence"] = *result.verdict->evidence;
    obj["attempts"] = result.verdict->attempts;
    obj["raw_sha256"] = result.raw_sha256;
    out << obj.dump() << '\n';
    out.flush();
}

} // namespace

BatchOutcome run_batch(const std::vector<RenderedPrompt>& prompts, ChatProvider& provider,
                       const ProviderConfig& config, const BatchOptions& options) {
    if (prompts.empty()) throw DataError("run_batch needs at least one prompt");
    config.validate();

    std::map<std::string, CheckpointEntry> checkpoint;
    std::ofstream checkpoint_out;
    const bool checkpointing = !options.checkpoint_path.empty();
    if (checkpointing) {
        checkpoint = load_checkpoint(options.checkpoint_path);
        checkpoint_out.open(options.checkpoint_path, std::ios::app);
        if (!checkpoint_out) {
            throw DataError("cannot open checkpoint for append: " + options.checkpoint_path.string());
        }
    }

    BatchOutcome outcome;
    outcome.results.resize(prompts.size());

    std::mutex sink_mutex; // guards the checkpoint writer
    std::atomic<std::size_t> next{0};
    std::atomic<std::size_t> failures{0};
    std::atomic<std::size_t> resumed{0};

    auto worker = [&] {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= prompts.size()) return;
            const RenderedPrompt& prompt = prompts[i];
            BatchResult result;
            result.circumstance_id = prompt.circumstance_id;
            result.narrative_id = prompt.narrative_id;
            result.strategy = prompt.strategy;

            const std::string key = checkpointing ? checkpoint_key(prompt, config) : std::string{};
            if (checkpointing) {
                if (auto it = checkpoint.find(key); it != checkpoint.end()) {
                    Verdict verdict;
                    verdict.decision = it->second.decision;
                    verdict.evidence = it->second.evidence;
                    verdict.attempts = it->second.attempts;
                    result.verdict = std::move(verdict);
                    result.raw_sha256 = it->second.raw_sha256;
                    result.from_checkpoint = true;
                    resumed.fetch_add(1);
                    outcome.results[i] = std::move(result);
                    continue;
                }
            }

            try {
                Verdict verdict = classify(prompt, provider, config, options.sleep);
                result.raw_sha256 = sha256_hex(verdict.raw_response);
                if (!options.archive_raw) verdict.raw_response.clear();
                result.verdict = std::move(verdict);
                if (checkpointing) {
                    std::lock_guard<std::mutex> lock(sink_mutex);
                    append_checkpoint(checkpoint_out, key, result);
                }
            } catch (const ProviderError& e) {
                result.error = e.what();
                failures.fetch_add(1);
            }
            outcome.results[i] = std::move(result);
        }
    };

    const std::size_t pool = std::min<std::size_t>(static_cast<std::size_t>(config.max_concurrency),
                                                   prompts.size());
    std::vector<std::thread> threads;
    threads.reserve(pool);
    for (std::size_t t = 0; t < pool; ++t) threads.emplace_back(worker);
    for (auto& t : threads) t.join();

    outcome.failed = failures.load();
    outcome.resumed = resumed.load();
    if (outcome.failed == prompts.size()) {
        throw ProviderError(ProviderFailure::AllItemsFailed,
                            "all-items-failed: every request in the batch failed; first error: " +
                                outcome.results.front().error);
    }

    std::sort(outcome.results.begin(), outcome.results.end(), [](const BatchResult& a, const BatchResult& b) {
        if (a.circumstance_id != b.circumstance_id) return a.circumstance_id < b.circumstance_id;
        return a.narrative_id < b.narrative_id;
    });
    return outcome;
}

void write_verdict_file(const std::filesystem::path& path, const std::vector<BatchResult>& results,
                        const std::string& config_hash) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write verdict file: " + path.string());
    out << json{{"config_hash", config_hash}}.dump() << '\n';
    for (const auto& result : results) {
        json obj;
        obj["circumstance_id"] = result.circumstance_id;
        obj["narrative_id"] = result.narrative_id;
        obj["strategy"] = std::string(to_string(result.strategy));
        if (result.verdict) {
            obj["decision"] = std::string(to_string(result.verdict->decision));
            obj["evidence"] = result.verdict->evidence ? json(*result.verdict->evidence) : json(nullptr);
            obj["attempts"] = result.verdict->attempts;
            obj["raw_sha256"] = result.raw_sha256;
        } else {
            obj["error"] = result.error;
        }
        out << obj.dump() << '\n';
    }
}

VerdictFile read_verdict_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("file-missing: cannot open verdict file " + path.string());
    VerdictFile file;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (text::trim(line).empty()) continue;
        json obj;
        try {
            obj = json::parse(line);
        } catch (const json::parse_error& e) {
            throw DataError("verdict file " + path.string() + " line " + std::to_string(line_no) +
                            " is not valid JSON: " + e.what());
        }
        if (line_no == 1 && obj.contains("config_hash")) {
            file.config_hash = obj["config_hash"].get<std::string>();
            continue;
        }
        VerdictFileRow row;
        row.circumstance_id = obj.value("circumstance_id", "");
        row.narrative_id = obj.value("narrative_id", "");
        row.strategy = obj.value("strategy", "");
        if (row.circumstance_id.empty() || row.narrative_id.empty()) {
            throw DataError("verdict file " + path.string() + " line " + std::to_string(line_no) +
                            " lacks circumstance_id/narrative_id");
        }
        if (obj.contains("decision")) {
            const auto decision = decision_from_string(obj["decision"].get<std::string>());
            if (!decision) {
                throw DataError("verdict file " + path.string() + " line " + std::to_string(line_no) +
                                " carries an unknown decision");
            }
            row.decision = decision;
            if (obj.contains("evidence") && obj["evidence"].is_string()) {
                row.evidence = obj["evidence"].get<std::string>();
            }
            row.attempts = obj.value("attempts", 0);
            row.raw_sha256 = obj.value("raw_sha256", "");
        } else {
            row.error = obj.value("error", "unrecorded failure");
        }
        file.rows.push_back(std::move(row));
    }
    return file;
}

} // namespace circex
