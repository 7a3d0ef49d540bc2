#pragma once

#include "circex/provider.hpp"
#include "circex/verdict.hpp"

#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace circex {

// Injectable so tests retry without real delays.
using RetrySleeper = std::function<void(std::chrono::milliseconds)>;
RetrySleeper real_sleeper();

// One single-turn request with retry on transient failures
// (exponential backoff with jitter). Auth failures are never retried.
// Throws ProviderError(ExhaustedRetries) once the budget is spent.
Verdict classify(const RenderedPrompt& prompt, ChatProvider& provider, const ProviderConfig& config,
                 const RetrySleeper& sleep = real_sleeper());

// Checkpoint key: content hash over (prompt text, model, temperature),
// so prompt or model edits invalidate stale checkpoint entries.
std::string checkpoint_key(const RenderedPrompt& prompt, const ProviderConfig& config);

struct BatchResult {
    std::string circumstance_id;
    std::string narrative_id;
    PromptStrategy strategy = PromptStrategy::Simple;
    std::optional<Verdict> verdict;  // nullopt on permanent failure
    std::string raw_sha256;          // hash of the raw response when present
    std::string error;               // failure description when verdict absent
    bool from_checkpoint = false;
};

struct BatchOptions {
    std::filesystem::path checkpoint_path; // empty disables checkpointing
    bool archive_raw = false;              // keep raw responses in memory/results
    RetrySleeper sleep = real_sleeper();
};

struct BatchOutcome {
    std::vector<BatchResult> results; // sorted by (circumstance_id, narrative_id)
    std::size_t failed = 0;
    std::size_t resumed = 0; // served from the checkpoint
};

// Issues requests with at most config.max_concurrency in flight. Output
// order is independent of completion order. Per-item failures are
// recorded, never aborting the batch; throws ProviderError(AllItemsFailed)
// when nothing succeeds.
BatchOutcome run_batch(const std::vector<RenderedPrompt>& prompts, ChatProvider& provider,
                       const ProviderConfig& config, const BatchOptions& options = {});

// Verdict JSONL rows: {circumstance_id, narrative_id, strategy, decision,
// evidence, attempts, raw_sha256} plus {error} rows for failures.
void write_verdict_file(const std::filesystem::path& path, const std::vector<BatchResult>& results,
                        const std::string& config_hash);

struct VerdictFileRow {
    std::string circumstance_id;
    std::string narrative_id;
    std::string strategy;
    std::optional<Decision> decision; // nullopt for failure rows
    std::optional<std::string> evidence;
    int attempts = 0;
    std::string raw_sha256;
    std::string error;
};

struct VerdictFile {
    std::string config_hash;
    std::vector<VerdictFileRow> rows;
};

VerdictFile read_verdict_file(const std::filesystem::path& path);

} // namespace circex
