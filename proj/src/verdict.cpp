#include "circex/verdict.hpp"

#include "circex/text.hpp"

#include <vector>

namespace circex {

namespace {

struct Line {
    std::string_view content; // without the trailing newline / carriage return
};

std::vector<Line> split_lines(std::string_view raw) {
    std::vector<Line> lines;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= raw.size(); ++i) {
        if (i == raw.size() || raw[i] == '\n') {
            std::string_view line = raw.substr(start, i - start);
            if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
            lines.push_back({line});
            start = i + 1;
        }
    }
    return lines;
}

// Content after "<marker> :" if the line carries the marker, else nullopt.
std::optional<std::string_view> after_marker(std::string_view line, std::string_view marker_lower) {
    const std::string lowered = text::to_lower(line);
    const std::size_t pos = lowered.find(marker_lower);
    if (pos == std::string::npos) return std::nullopt;
    std::size_t i = pos + marker_lower.size();
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    if (i >= line.size() || line[i] != ':') return std::nullopt;
    return line.substr(i + 1);
}

std::optional<Decision> token_decision(std::string_view token) {
    if (token == "yes") return Decision::Yes;
    if (token == "no") return Decision::No;
    return std::nullopt;
}

// Strip one layer of matching brackets/quotes from both ends, repeatedly.
std::string_view strip_wrapping(std::string_view s) {
    for (;;) {
        s = text::trim(s);
        if (s.size() < 2) return s;
        const char a = s.front();
        const char b = s.back();
        const bool wrapped = (a == '[' && b == ']') || (a == '(' && b == ')') ||
                             (a == '"' && b == '"') || (a == '\'' && b == '\'');
        if (!wrapped) return s;
        s = s.substr(1, s.size() - 2);
    }
}

} // namespace

std::string_view to_string(Decision decision) {
    switch (decision) {
        case Decision::Yes: return "yes";
        case Decision::No: return "no";
        case Decision::Unparseable: return "unparseable";
    }
    return "unparseable";
}

std::optional<Decision> decision_from_string(std::string_view s) {
    if (s == "yes") return Decision::Yes;
    if (s == "no") return Decision::No;
    if (s == "unparseable") return Decision::Unparseable;
    return std::nullopt;
}

Verdict parse_verdict(std::string_view raw) {
    Verdict verdict;
    verdict.raw_response = std::string(raw);

    const auto lines = split_lines(raw);

    // Decision: last FINAL CODING line wins; its last alnum token must be yes/no.
    std::optional<std::string_view> coding_content;
    for (const auto& line : lines) {
        if (auto content = after_marker(line.content, "final coding")) coding_content = *content;
    }
    if (coding_content) {
        const auto tokens = text::alnum_tokens(*coding_content);
        std::optional<Decision> decision;
        if (!tokens.empty()) decision = token_decision(tokens.back());
        if (decision) {
            verdict.decision = *decision;
        } else {
            verdict.decision = Decision::Unparseable;
            verdict.parse_failure = "FINAL CODING line carries no yes/no token";
        }
    } else {
        // No marker: the last standalone yes/no token anywhere decides.
        std::optional<Decision> decision;
        for (const auto& token : text::alnum_tokens(raw)) {
            if (auto d = token_decision(token)) decision = d;
        }
        if (decision) {
            verdict.decision = *decision;
        } else {
            verdict.decision = Decision::Unparseable;
            verdict.parse_failure = "no FINAL CODING marker and no standalone yes/no token";
        }
    }

    // Evidence: last EVIDENCE line, unwrapped; "None found" maps to absent.
    std::optional<std::string_view> evidence_content;
    for (const auto& line : lines) {
        if (auto content = after_marker(line.content, "evidence")) evidence_content = *content;
    }
    if (evidence_content) {
        const std::string_view quoted = strip_wrapping(*evidence_content);
        if (!quoted.empty() && text::to_lower(quoted) != "none found") {
            verdict.evidence = std::string(quoted);
        }
    }
    return verdict;
}

} // namespace circex
