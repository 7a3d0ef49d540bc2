#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace circex {

struct LabeledNarrative {
    std::string narrative_id;
    std::string text; // combined investigation narrative
    std::map<std::string, bool> labels;
};

enum class MalformedLinePolicy { Abort, Skip };

struct CorpusStats {
    std::size_t records = 0;
    std::size_t skipped = 0;
};

// Streams the JSONL corpus record by record; the whole file is never
// resident in memory. Malformed lines abort with the line number or are
// skipped and counted, per policy.
CorpusStats for_each_narrative(const std::filesystem::path& path, MalformedLinePolicy policy,
                               const std::function<void(LabeledNarrative&&)>& fn);

struct SampleEntry {
    std::string narrative_id;
    bool label;

    bool operator==(const SampleEntry&) const = default;
};

struct EvaluationSample {
    std::string circumstance_id;
    std::vector<SampleEntry> entries; // positives first, then negatives
    std::size_t requested_pos = 100;
    std::size_t requested_neg = 100;
    std::uint64_t seed = 0;
    bool under_sampled = false;
    std::string corpus_sha256;

    std::size_t positive_count() const;
    std::size_t negative_count() const;
};

inline constexpr std::size_t kDefaultSamplePerStratum = 100;

// Uniform without-replacement selection per stratum via reservoir
// sampling (Algorithm R) driven by std::mt19937_64 with a rejection-based
// bounded draw, so identical (corpus bytes, seed) give identical samples
// on every platform. A short positive stratum is taken whole and flagged
// under_sampled; zero positives is an error.
EvaluationSample balanced_sample(const std::filesystem::path& corpus_path,
                                 const std::string& circumstance_id,
                                 std::size_t n_pos = kDefaultSamplePerStratum,
                                 std::size_t n_neg = kDefaultSamplePerStratum,
                                 std::uint64_t seed = 0,
                                 MalformedLinePolicy policy = MalformedLinePolicy::Abort);

// In-memory variant used by property tests; corpus_sha256 is left empty.
EvaluationSample balanced_sample_records(std::span<const LabeledNarrative> records,
                                         const std::string& circumstance_id, std::size_t n_pos,
                                         std::size_t n_neg, std::uint64_t seed);

// Sample file: one JSON header line {circumstance_id, seed, corpus_sha256,
// requested_pos, requested_neg, under_sampled, config_hash} followed by
// one {narrative_id, label} line per entry.
void write_sample_file(const std::filesystem::path& path, const EvaluationSample& sample,
                       const std::string& config_hash);

struct SampleFile {
    EvaluationSample sample;
    std::string config_hash;
};

SampleFile read_sample_file(const std::filesystem::path& path);

} // namespace circex
