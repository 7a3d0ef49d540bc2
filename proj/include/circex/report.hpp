#pragma once

#include "circex/eval.hpp"
#include "circex/fixture.hpp"

#include <string>
#include <vector>

namespace circex {

// Markdown tables. All numbers are fixed 3-decimal, so report bytes are
// reproducible across runs and platforms.

// Macro F1 per approach: fine-tuned baseline, single strategies, hybrid, oracle.
std::string render_overall_report(const std::vector<FixtureRow>& rows,
                                  int threshold = kDefaultStrategyThreshold);

std::string render_strategy_report(const StrategyAnalysis& analysis,
                                   double tie_epsilon = kDefaultTieEpsilon);

std::string render_bracket_report(const BracketAnalysis& analysis);

// Per-circumstance metrics with intervals from a live evaluation run.
std::string render_metrics_report(const std::vector<CircumstanceMetrics>& rows);

std::string render_disagreement_report(const std::string& circumstance_id,
                                       const std::vector<DisagreementRow>& rows);

} // namespace circex
