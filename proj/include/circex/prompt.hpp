#pragma once

#include "circex/complexity.hpp"
#include "circex/manual.hpp"

#include <cstddef>
#include <string>
#include <string_view>

namespace circex {

inline constexpr std::size_t kDefaultTruncationLimit = 3500;

struct RenderedPrompt {
    std::string circumstance_id;
    std::string narrative_id;
    PromptStrategy strategy = PromptStrategy::Simple;
    std::string text;
    bool truncated = false;
};

// First `limit` Unicode scalars of `narrative`; never splits a scalar.
std::string truncate_narrative(std::string_view narrative,
                               std::size_t limit = kDefaultTruncationLimit);

// Name-only prompt. Throws DataError on an empty circumstance name.
RenderedPrompt build_simple_prompt(std::string_view circumstance_name,
                                   std::string_view narrative,
                                   std::string_view circumstance_id = {},
                                   std::string_view narrative_id = {},
                                   std::size_t truncation_limit = kDefaultTruncationLimit);

// Full-guideline prompt: shares the simple prompt's preamble and footer,
// with a DEFINITION / CODING GUIDANCE / EXAMPLES block after the question.
// Empty sections render as "None provided".
RenderedPrompt build_complex_prompt(const Circumstance& circumstance,
                                    std::string_view narrative,
                                    std::string_view narrative_id = {},
                                    std::size_t truncation_limit = kDefaultTruncationLimit);

} // namespace circex
