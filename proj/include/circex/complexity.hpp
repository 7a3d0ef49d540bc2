#pragma once

#include "circex/manual.hpp"

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace circex {

enum class PromptStrategy { Simple, Complex };

std::string_view to_string(PromptStrategy strategy);

// The four lexical rules scored over a circumstance's CODE-NO examples.
enum class RuleId {
    PositiveAndBut,   // positive word together with "but", +3
    PositiveOnly,     // positive word alone, +2
    CategoryRedirect, // "use that" / "use other" phrase, +1
    SimpleAbsence,    // starts with "no", under five words, -1
};

std::string_view to_string(RuleId rule);
int rule_delta(RuleId rule) noexcept;

struct RuleHit {
    RuleId rule;
    int delta;
    std::size_t example_index;

    bool operator==(const RuleHit&) const = default;
};

struct ComplexityReport {
    std::string circumstance_id;
    int total_score = 0;
    std::vector<RuleHit> hits;               // file order of examples_no
    PromptStrategy strategy = PromptStrategy::Simple;
};

inline constexpr int kDefaultStrategyThreshold = 2;

// Rule evaluation for one CODE-NO example. Matching semantics:
// the text is ASCII-lowercased; positive words and "but" match whole
// alphanumeric tokens; "use that"/"use other" are substring checks;
// "starts with no" compares the first whitespace token; word length
// counts whitespace tokens. PositiveAndBut and PositiveOnly are
// mutually exclusive; the other two rules stack independently.
std::vector<RuleHit> score_example(std::string_view example_text);

// Sum of score_example over examples_no; examples_yes are ignored.
// The returned report carries no strategy decision (see select_strategy).
ComplexityReport complexity_score(const Circumstance& circumstance);

// Complex iff score > threshold, strictly.
PromptStrategy select_strategy(int score, int threshold = kDefaultStrategyThreshold);

// complexity_score with the strategy filled in at the given threshold.
ComplexityReport score_and_select(const Circumstance& circumstance,
                                  int threshold = kDefaultStrategyThreshold);

} // namespace circex
