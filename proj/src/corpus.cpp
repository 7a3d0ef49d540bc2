#include "circex/corpus.hpp"

#include "circex/errors.hpp"
#include "circex/sha256.hpp"
#include "circex/text.hpp"

#include "json.hpp"

#include <fstream>
#include <limits>
#include <random>
#include <set>

namespace circex {

using nlohmann::json;

CorpusStats for_each_narrative(const std::filesystem::path& path, MalformedLinePolicy policy,
                               const std::function<void(LabeledNarrative&&)>& fn) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("file-missing: cannot open corpus file " + path.string());

    CorpusStats stats;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (text::trim(line).empty()) continue;

        auto fail = [&](const std::string& why) {
            if (policy == MalformedLinePolicy::Abort) {
                throw DataError("malformed-line: corpus " + path.string() + " line " +
                                std::to_string(line_no) + ": " + why);
            }
            ++stats.skipped;
        };

        json obj;
        try {
            obj = json::parse(line);
        } catch (const json::parse_error& e) {
            fail(e.what());
            continue;
        }
        if (!obj.is_object() || !obj.contains("narrative_id") || !obj["narrative_id"].is_string() ||
            !obj.contains("text") || !obj["text"].is_string() || !obj.contains("labels") ||
            !obj["labels"].is_object()) {
            fail("records need narrative_id, text, and a labels object");
            continue;
        }

        LabeledNarrative record;
        record.narrative_id = obj["narrative_id"].get<std::string>();
        record.text = obj["text"].get<std::string>();
        bool labels_ok = true;
        for (const auto& [key, value] : obj["labels"].items()) {
            if (!value.is_boolean()) {
                labels_ok = false;
                break;
            }
            record.labels[key] = value.get<bool>();
        }
        if (!labels_ok || record.narrative_id.empty()) {
            fail("labels must map circumstance ids to booleans and narrative_id must be nonempty");
            continue;
        }
        ++stats.records;
        fn(std::move(record));
    }
    return stats;
}

std::size_t EvaluationSample::positive_count() const {
    std::size_t n = 0;
    for (const auto& e : entries) n += e.label ? 1 : 0;
    return n;
}

std::size_t EvaluationSample::negative_count() const {
    return entries.size() - positive_count();
}

namespace {

// Unbiased bounded draw by rejection; mt19937_64's output sequence is
// fixed by the standard, so this is bit-identical everywhere.
std::uint64_t bounded_draw(std::mt19937_64& rng, std::uint64_t n) {
    const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
    const std::uint64_t limit = max - max % n;
    std::uint64_t x;
    do {
        x = rng();
    } while (x >= limit);
    return x % n;
}

class StratumReservoir {
public:
    explicit StratumReservoir(std::size_t capacity) : capacity_(capacity) {}

    void offer(const std::string& narrative_id, std::mt19937_64& rng) {
        if (capacity_ == 0) {
            ++seen_;
            return;
        }
        if (kept_.size() < capacity_) {
            kept_.push_back(narrative_id);
        } else {
            const std::uint64_t j = bounded_draw(rng, seen_ + 1);
            if (j < capacity_) kept_[static_cast<std::size_t>(j)] = narrative_id;
        }
        ++seen_;
    }

    std::size_t seen() const { return seen_; }
    const std::vector<std::string>& kept() const { return kept_; }

private:
    std::size_t capacity_;
    std::size_t seen_ = 0;
    std::vector<std::string> kept_;
};

struct SamplerCore {
    SamplerCore(const std::string& circumstance_id, std::size_t n_pos, std::size_t n_neg,
                std::uint64_t seed)
        : circumstance_id_(circumstance_id), positives_(n_pos), negatives_(n_neg), rng_(seed) {
        if (n_pos == 0 || n_neg == 0) {
            throw DataError("requested stratum sizes must be positive");
        }
    }

    void feed(const LabeledNarrative& record) {
        const auto it = record.labels.find(circumstance_id_);
        if (it == record.labels.end()) return;
        if (it->second) {
            positives_.offer(record.narrative_id, rng_);
        } else {
            negatives_.offer(record.narrative_id, rng_);
        }
    }

    EvaluationSample finalize(std::size_t n_pos, std::size_t n_neg, std::uint64_t seed) const {
        if (positives_.seen() == 0 && negatives_.seen() == 0) {
            throw DataError("unknown-circumstance: no corpus record labels \"" + circumstance_id_ + "\"");
        }
        if (positives_.seen() == 0) {
            throw DataError("zero-positives: circumstance \"" + circumstance_id_ +
                            "\" has no positive records; sample not produced");
        }

        EvaluationSample sample;
        sample.circumstance_id = circumstance_id_;
        sample.requested_pos = n_pos;
        sample.requested_neg = n_neg;
        sample.seed = seed;
        sample.under_sampled = positives_.kept().size() < n_pos || negatives_.kept().size() < n_neg;
        sample.entries.reserve(positives_.kept().size() + negatives_.kept().size());
        for (const auto& id : positives_.kept()) sample.entries.push_back({id, true});
        for (const auto& id : negatives_.kept()) sample.entries.push_back({id, false});

        std::set<std::string> seen_ids;
        for (const auto& entry : sample.entries) {
            if (!seen_ids.insert(entry.narrative_id).second) {
                throw DataError("duplicate narrative_id \"" + entry.narrative_id +
                                "\" sampled twice; corpus ids must be unique");
            }
        }
        return sample;
    }

    std::string circumstance_id_;
    StratumReservoir positives_;
    StratumReservoir negatives_;
    std::mt19937_64 rng_;
};

} // namespace

EvaluationSample balanced_sample(const std::filesystem::path& corpus_path,
                                 const std::string& circumstance_id, std::size_t n_pos,
                                 std::size_t n_neg, std::uint64_t seed, MalformedLinePolicy policy) {
    SamplerCore core(circumstance_id, n_pos, n_neg, seed);
    for_each_narrative(corpus_path, policy, [&](LabeledNarrative&& record) { core.feed(record); });
    EvaluationSample sample = core.finalize(n_pos, n_neg, seed);
    sample.corpus_sha256 = sha256_file_hex(corpus_path);
    return sample;
}

EvaluationSample balanced_sample_records(std::span<const LabeledNarrative> records,
                                         const std::string& circumstance_id, std::size_t n_pos,
                                         std::size_t n_neg, std::uint64_t seed) {
    SamplerCore core(circumstance_id, n_pos, n_neg, seed);
    for (const auto& record : records) core.feed(record);
    return core.finalize(n_pos, n_neg, seed);
}

void write_sample_file(const std::filesystem::path& path, const EvaluationSample& sample,
                       const std::string& config_hash) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write sample file: " + path.string());
    json header;
    header["circumstance_id"] = sample.circumstance_id;
    header["seed"] = sample.seed;
    header["corpus_sha256"] = sample.corpus_sha256;
    header["requested_pos"] = sample.requested_pos;
    header["requested_neg"] = sample.requested_neg;
    header["under_sampled"] = sample.under_sampled;
    header["config_hash"] = config_hash;
    out << header.dump() << '\n';
    for (const auto& entry : sample.entries) {
        out << json{{"narrative_id", entry.narrative_id}, {"label", entry.label}}.dump() << '\n';
    }
}

SampleFile read_sample_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("file-missing: cannot open sample file " + path.string());
    SampleFile file;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (text::trim(line).empty()) continue;
        json obj;
        try {
            obj = json::parse(line);
        } catch (const json::parse_error& e) {
            throw DataError("sample file " + path.string() + " line " + std::to_string(line_no) +
                            " is not valid JSON: " + e.what());
        }
        if (line_no == 1) {
            if (!obj.contains("circumstance_id")) {
                throw DataError("sample file " + path.string() + " lacks its header record");
            }
            file.sample.circumstance_id = obj.value("circumstance_id", "");
            file.sample.seed = obj.value("seed", std::uint64_t{0});
            file.sample.corpus_sha256 = obj.value("corpus_sha256", "");
            file.sample.requested_pos = obj.value("requested_pos", std::size_t{0});
            file.sample.requested_neg = obj.value("requested_neg", std::size_t{0});
            file.sample.under_sampled = obj.value("under_sampled", false);
            file.config_hash = obj.value("config_hash", "");
            continue;
        }
        if (!obj.contains("narrative_id") || !obj.contains("label") || !obj["label"].is_boolean()) {
            throw DataError("sample file " + path.string() + " line " + std::to_string(line_no) +
                            " needs narrative_id and a boolean label");
        }
        file.sample.entries.push_back({obj["narrative_id"].get<std::string>(), obj["label"].get<bool>()});
    }
    if (file.sample.circumstance_id.empty()) {
        throw DataError("sample file " + path.string() + " is empty or lacks a header");
    }
    return file;
}

} // namespace circex
