#include "circex/complexity.hpp"

#include "circex/text.hpp"

#include <algorithm>
#include <array>

namespace circex {

namespace {

constexpr std::array<std::string_view, 11> kPositiveWords = {
    "used",     "had",      "was",     "moved", "argued", "problems",
    "history",  "mentioned", "occurred", "abuse", "stressor",
};

bool contains_token(const std::vector<std::string>& tokens, std::string_view wanted) {
    return std::any_of(tokens.begin(), tokens.end(),
                       [&](const std::string& t) { return t == wanted; });
}

std::vector<RuleHit> score_one(std::string_view example_text, std::size_t index) {
    std::vector<RuleHit> hits;
    const std::string lowered = text::to_lower(example_text);
    const auto tokens = text::alnum_tokens(lowered);

    const bool has_positive = std::any_of(kPositiveWords.begin(), kPositiveWords.end(),
                                          [&](std::string_view w) { return contains_token(tokens, w); });
    const bool has_but = contains_token(tokens, "but");

    if (has_positive && has_but) {
        hits.push_back({RuleId::PositiveAndBut, rule_delta(RuleId::PositiveAndBut), index});
    } else if (has_positive) {
        hits.push_back({RuleId::PositiveOnly, rule_delta(RuleId::PositiveOnly), index});
    }

    if (lowered.find("use that") != std::string::npos || lowered.find("use other") != std::string::npos) {
        hits.push_back({RuleId::CategoryRedirect, rule_delta(RuleId::CategoryRedirect), index});
    }

    const auto words = text::whitespace_tokens(lowered);
    if (!words.empty() && words.front() == "no" && words.size() < 5) {
        hits.push_back({RuleId::SimpleAbsence, rule_delta(RuleId::SimpleAbsence), index});
    }
    return hits;
}

} // namespace

std::string_view to_string(PromptStrategy strategy) {
    return strategy == PromptStrategy::Complex ? "complex" : "simple";
}

std::string_view to_string(RuleId rule) {
    switch (rule) {
        case RuleId::PositiveAndBut: return "POSITIVE_AND_BUT";
        case RuleId::PositiveOnly: return "POSITIVE_ONLY";
        case RuleId::CategoryRedirect: return "CATEGORY_REDIRECT";
        case RuleId::SimpleAbsence: return "SIMPLE_ABSENCE";
    }
    return "UNKNOWN";
}

int rule_delta(RuleId rule) noexcept {
    switch (rule) {
        case RuleId::PositiveAndBut: return 3;
        case RuleId::PositiveOnly: return 2;
        case RuleId::CategoryRedirect: return 1;
        case RuleId::SimpleAbsence: return -1;
    }
    return 0;
}

std::vector<RuleHit> score_example(std::string_view example_text) {
    return score_one(example_text, 0);
}

ComplexityReport complexity_score(const Circumstance& circumstance) {
    ComplexityReport report;
    report.circumstance_id = circumstance.id;
    for (std::size_t i = 0; i < circumstance.examples_no.size(); ++i) {
        auto hits = score_one(circumstance.examples_no[i], i);
        for (auto& hit : hits) {
            report.total_score += hit.delta;
            report.hits.push_back(hit);
        }
    }
    return report;
}

PromptStrategy select_strategy(int score, int threshold) {
    return score > threshold ? PromptStrategy::Complex : PromptStrategy::Simple;
}

ComplexityReport score_and_select(const Circumstance& circumstance, int threshold) {
    ComplexityReport report = complexity_score(circumstance);
    report.strategy = select_strategy(report.total_score, threshold);
    return report;
}

} // namespace circex
