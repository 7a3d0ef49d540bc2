#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace circex {

enum class Decision { Yes, No, Unparseable };

std::string_view to_string(Decision decision);
std::optional<Decision> decision_from_string(std::string_view s);

struct Verdict {
    Decision decision = Decision::Unparseable;
    std::optional<std::string> evidence; // always a contiguous substring of raw_response
    std::string raw_response;
    int attempts = 1;
    std::optional<std::string> parse_failure; // set iff decision == Unparseable
};

// Total and deterministic. Scans for the last "FINAL CODING:" line
// (case-insensitive) and reads its trailing yes/no token, ignoring
// punctuation and brackets. Without a marker line, falls back to the
// last standalone yes/no token anywhere in the response. Evidence
// comes from the last "EVIDENCE:" line; "None found" means absent.
Verdict parse_verdict(std::string_view raw);

} // namespace circex
