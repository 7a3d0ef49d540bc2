#include "circex/prompt.hpp"

#include "circex/errors.hpp"
#include "circex/text.hpp"

namespace circex {

namespace {

constexpr std::string_view kPreamble =
    "You are classifying death investigation narratives for the presence of specific circumstances.\n"
    "\n"
    "Code \"Yes\" if the circumstance is mentioned, implied, or can be reasonably inferred from the narrative.\n"
    "Code \"No\" if there is no mention or indication of the circumstance.\n"
    "\n"
    "When in doubt, code \"Yes\".\n"
    "\n"
    "---\n"
    "\n";

constexpr std::string_view kFooter =
    "---\n"
    "\n"
    "EVIDENCE: [Quote relevant text, or \"None found\"]\n"
    "FINAL CODING: [Yes or No]";

std::string question_line(std::string_view name) {
    std::string out = "Is there any mention of \"";
    out += name;
    out += "\" in this narrative?\n";
    return out;
}

std::string section_text(std::string_view value) {
    return value.empty() ? std::string(" None provided") : " " + std::string(value);
}

std::string example_block(const std::vector<std::string>& examples) {
    if (examples.empty()) return " None provided";
    std::string out;
    for (const auto& example : examples) {
        out += "\n- ";
        out += example;
    }
    return out;
}

} // namespace

std::string truncate_narrative(std::string_view narrative, std::size_t limit) {
    if (limit < 1) throw DataError("truncation limit must be at least 1");
    return std::string(text::utf8_prefix(narrative, limit));
}

RenderedPrompt build_simple_prompt(std::string_view circumstance_name,
                                   std::string_view narrative,
                                   std::string_view circumstance_id,
                                   std::string_view narrative_id,
                                   std::size_t truncation_limit) {
    if (circumstance_name.empty()) throw DataError("circumstance name must not be empty");

    RenderedPrompt prompt;
    prompt.circumstance_id = circumstance_id;
    prompt.narrative_id = narrative_id;
    prompt.strategy = PromptStrategy::Simple;
    prompt.truncated = text::utf8_scalar_count(narrative) > truncation_limit;

    std::string body(kPreamble);
    body += question_line(circumstance_name);
    body += "\n";
    body += "---\n";
    body += "NARRATIVE: ";
    body += truncate_narrative(narrative, truncation_limit);
    body += "\n";
    body += kFooter;
    prompt.text = std::move(body);
    return prompt;
}

RenderedPrompt build_complex_prompt(const Circumstance& circumstance,
                                    std::string_view narrative,
                                    std::string_view narrative_id,
                                    std::size_t truncation_limit) {
    if (circumstance.name.empty()) throw DataError("circumstance name must not be empty");

    RenderedPrompt prompt;
    prompt.circumstance_id = circumstance.id;
    prompt.narrative_id = narrative_id;
    prompt.strategy = PromptStrategy::Complex;
    prompt.truncated = text::utf8_scalar_count(narrative) > truncation_limit;

    std::string body(kPreamble);
    body += question_line(circumstance.name);
    body += "\n";
    body += "DEFINITION:" + section_text(circumstance.definition) + "\n";
    body += "CODING GUIDANCE:" + section_text(circumstance.guidance) + "\n";
    body += "EXAMPLES - CODE \"YES\":" + example_block(circumstance.examples_yes) + "\n";
    body += "EXAMPLES - CODE \"NO\":" + example_block(circumstance.examples_no) + "\n";
    body += "\n";
    body += "NARRATIVE: ";
    body += truncate_narrative(narrative, truncation_limit);
    body += "\n";
    body += kFooter;
    prompt.text = std::move(body);
    return prompt;
}

} // namespace circex
