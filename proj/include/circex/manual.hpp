#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace circex {

// One coding-manual entry. Immutable after load; all fields arrive
// pre-structured from the manual file, never parsed out of prose.
struct Circumstance {
    std::string id;        // lowercase alphanumerics and hyphens, unique per manual
    std::string name;      // display name, e.g. "Household Substance Abuse"
    std::string definition;
    std::string guidance;  // inclusion/exclusion criteria
    std::vector<std::string> examples_yes;
    std::vector<std::string> examples_no;
    std::optional<long long> training_positive_count;

    bool operator==(const Circumstance&) const = default;
};

struct Manual {
    std::string source_label;
    std::vector<Circumstance> circumstances; // file order

    const Circumstance* find(std::string_view id) const;

    bool operator==(const Manual&) const = default;
};

// Strict mode rejects unknown keys; lenient tolerates them.
Manual parse_manual(std::string_view json_text, bool strict = true);
Manual load_manual(const std::filesystem::path& path, bool strict = true);

// Canonical re-serialization of the manual file contract.
std::string serialize_manual(const Manual& manual);

struct ManualWarning {
    std::string circumstance_id;
    std::string message;
};

// Non-fatal lint: empty examples_no, empty guidance, missing training count.
std::vector<ManualWarning> validate_manual(const Manual& manual);

} // namespace circex
