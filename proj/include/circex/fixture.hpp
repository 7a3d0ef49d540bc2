#pragma once

#include "circex/eval.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace circex {

// One row of the reference analysis CSV:
//   circumstance_id,score,training_count,f1_roberta,f1_simple,f1_complex,f1_gemini,f1_llama
// Empty cells mark values that were never measured (e.g. a baseline that
// could not be evaluated).
struct FixtureRow {
    std::string circumstance_id;
    int score = 0;
    std::optional<long long> training_count;
    std::optional<double> f1_roberta;
    double f1_simple = 0.0;
    double f1_complex = 0.0;
    std::optional<double> f1_gemini;
    std::optional<double> f1_llama;
};

// Plain comma-separated values, no quoting; '#' lines are comments.
std::vector<FixtureRow> load_fixture_csv(const std::filesystem::path& path);

std::vector<StrategyInput> to_strategy_inputs(const std::vector<FixtureRow>& rows);

// hybrid_f1 per row is the strategy-selected F1 at the given threshold.
std::vector<BracketInput> to_bracket_inputs(const std::vector<FixtureRow>& rows,
                                            int threshold = kDefaultStrategyThreshold);

} // namespace circex
