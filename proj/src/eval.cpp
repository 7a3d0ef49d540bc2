#include "circex/eval.hpp"

#include "circex/errors.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <limits>
#include <sstream>

namespace circex {

namespace {

// Unparseable coerced per policy; nullopt means "drop the entry".
std::optional<bool> predicted_positive(Decision decision, UnparseablePolicy policy) {
    switch (decision) {
        case Decision::Yes: return true;
        case Decision::No: return false;
        case Decision::Unparseable:
            switch (policy) {
                case UnparseablePolicy::TreatAsNo: return false;
                case UnparseablePolicy::TreatAsYes: return true;
                case UnparseablePolicy::Drop: return std::nullopt;
            }
    }
    return std::nullopt;
}

} // namespace

ConfusionMatrix confusion(const EvaluationSample& sample,
                          const std::map<std::string, VerdictEntry>& verdicts,
                          UnparseablePolicy policy) {
    std::vector<std::string> missing;
    ConfusionMatrix matrix;
    for (const auto& entry : sample.entries) {
        const auto it = verdicts.find(entry.narrative_id);
        if (it == verdicts.end()) {
            missing.push_back(entry.narrative_id);
            continue;
        }
        const Decision decision = it->second.decision;
        if (decision == Decision::Unparseable) ++matrix.unparseable;
        const auto predicted = predicted_positive(decision, policy);
        if (!predicted) continue; // dropped
        if (*predicted) {
            entry.label ? ++matrix.tp : ++matrix.fp;
        } else {
            entry.label ? ++matrix.fn : ++matrix.tn;
        }
    }
    if (!missing.empty()) {
        std::ostringstream out;
        out << "missing-verdict: no verdict for " << missing.size() << " sample entr"
            << (missing.size() == 1 ? "y" : "ies") << ":";
        for (const auto& id : missing) out << ' ' << id;
        throw DataError(out.str());
    }
    return matrix;
}

WilsonInterval wilson_interval(double successes, double n, double z) {
    if (!(n > 0.0)) throw DataError("wilson_interval needs n > 0");
    if (successes < 0.0 || successes > n) {
        throw DataError("wilson_interval needs 0 <= successes <= n");
    }
    const double p_hat = successes / n;
    const double z2 = z * z;
    const double denominator = 1.0 + z2 / n;
    const double center = (p_hat + z2 / (2.0 * n)) / denominator;
    const double half_width =
        z * std::sqrt(p_hat * (1.0 - p_hat) / n + z2 / (4.0 * n * n)) / denominator;
    WilsonInterval interval;
    interval.lower = std::max(0.0, center - half_width);
    interval.upper = std::min(1.0, center + half_width);
    return interval;
}

namespace {

std::optional<MetricWithCI> proportion_metric(double successes, double n, double z) {
    if (!(n > 0.0)) return std::nullopt;
    const auto interval = wilson_interval(successes, n, z);
    MetricWithCI metric;
    metric.point = successes / n;
    metric.lower = interval.lower;
    metric.upper = interval.upper;
    return metric;
}

} // namespace

CircumstanceMetrics metrics(const ConfusionMatrix& matrix, std::string circumstance_id, double z) {
    CircumstanceMetrics out;
    out.circumstance_id = std::move(circumstance_id);
    out.matrix = matrix;

    const auto tp = static_cast<double>(matrix.tp);
    const auto fp = static_cast<double>(matrix.fp);
    const auto fn = static_cast<double>(matrix.fn);

    out.precision = proportion_metric(tp, tp + fp, z);
    out.recall = proportion_metric(tp, tp + fn, z);
    // F1 as a proportion: tp successes out of tp + (fp+fn)/2 effective trials.
    out.f1 = proportion_metric(tp, tp + (fp + fn) / 2.0, z);
    return out;
}

double macro_f1(const std::vector<CircumstanceMetrics>& rows) {
    double sum = 0.0;
    std::size_t defined = 0;
    for (const auto& row : rows) {
        if (row.f1) {
            sum += row.f1->point;
            ++defined;
        }
    }
    if (defined == 0) throw DataError("macro_f1 needs at least one defined F1");
    return sum / static_cast<double>(defined);
}

StrategyAnalysis strategy_analysis(const std::vector<StrategyInput>& inputs, double tie_epsilon,
                                   int threshold) {
    if (inputs.empty()) throw DataError("strategy_analysis needs at least one row");
    StrategyAnalysis analysis;
    analysis.rows.reserve(inputs.size());
    for (const auto& input : inputs) {
        StrategyAnalysisRow row;
        row.circumstance_id = input.circumstance_id;
        row.score = input.score;
        row.f1_simple = input.f1_simple;
        row.f1_complex = input.f1_complex;
        row.predicted = select_strategy(input.score, threshold);
        row.oracle =
            input.f1_complex > input.f1_simple ? PromptStrategy::Complex : PromptStrategy::Simple;
        row.correct = row.predicted == row.oracle;
        row.tie = std::abs(input.f1_complex - input.f1_simple) <= tie_epsilon;
        if (row.correct) ++analysis.correct_all;
        if (!row.tie) {
            ++analysis.non_tie_count;
            if (row.correct) ++analysis.correct_non_tie;
        }
        analysis.rows.push_back(std::move(row));
    }
    analysis.accuracy_all = static_cast<double>(analysis.correct_all) / static_cast<double>(inputs.size());
    analysis.accuracy_non_tie =
        analysis.non_tie_count == 0
            ? 0.0
            : static_cast<double>(analysis.correct_non_tie) / static_cast<double>(analysis.non_tie_count);
    return analysis;
}

double hybrid_macro_f1(const std::vector<StrategyInput>& inputs, int threshold) {
    if (inputs.empty()) throw DataError("hybrid_macro_f1 needs at least one row");
    double sum = 0.0;
    for (const auto& input : inputs) {
        sum += select_strategy(input.score, threshold) == PromptStrategy::Complex ? input.f1_complex
                                                                                  : input.f1_simple;
    }
    return sum / static_cast<double>(inputs.size());
}

double oracle_macro_f1(const std::vector<StrategyInput>& inputs) {
    if (inputs.empty()) throw DataError("oracle_macro_f1 needs at least one row");
    double sum = 0.0;
    for (const auto& input : inputs) sum += std::max(input.f1_simple, input.f1_complex);
    return sum / static_cast<double>(inputs.size());
}

namespace {

struct BracketEdge {
    const char* label;
    long long upper_inclusive; // bracket covers (previous upper, this upper]
};

constexpr BracketEdge kBrackets[] = {
    {"<500", 500},
    {"500–2,000", 2000},
    {"2,000–5,000", 5000},
    {"5,000–15,000", 15000},
    {">15,000", std::numeric_limits<long long>::max()},
};

std::size_t bracket_index(long long training_count) {
    long long lower = std::numeric_limits<long long>::min();
    for (std::size_t i = 0; i < std::size(kBrackets); ++i) {
        if (training_count > lower && training_count <= kBrackets[i].upper_inclusive) return i;
        lower = kBrackets[i].upper_inclusive;
    }
    return std::size(kBrackets) - 1;
}

} // namespace

BracketAnalysis bracket_analysis(const std::vector<BracketInput>& inputs) {
    BracketAnalysis analysis;
    for (const auto& edge : kBrackets) analysis.rows.push_back({edge.label, 0, 0, 0});

    for (const auto& input : inputs) {
        if (!input.training_count) {
            analysis.skipped.push_back(input.circumstance_id);
            continue;
        }
        auto& row = analysis.rows[bracket_index(*input.training_count)];
        ++row.n;
        ++analysis.total_n;
        // Missing baseline counts for hybrid; exact equality goes to the baseline.
        const bool hybrid_win = !input.baseline_f1 || input.hybrid_f1 > *input.baseline_f1;
        if (hybrid_win) {
            ++row.hybrid_wins;
            ++analysis.total_hybrid;
        } else {
            ++row.baseline_wins;
            ++analysis.total_baseline;
        }
    }
    return analysis;
}

std::vector<DisagreementRow> disagreement_report(
    const EvaluationSample& sample, const std::vector<std::map<std::string, VerdictEntry>>& runs,
    UnparseablePolicy policy) {
    std::vector<DisagreementRow> rows;
    for (const auto& entry : sample.entries) {
        DisagreementRow row;
        row.narrative_id = entry.narrative_id;
        row.label = entry.label;
        bool any_disagrees = false;
        bool all_disagree = !runs.empty();
        for (const auto& run : runs) {
            const auto it = run.find(entry.narrative_id);
            if (it == run.end()) {
                all_disagree = false;
                continue;
            }
            row.runs.push_back(it->second);
            const auto predicted = predicted_positive(it->second.decision, policy);
            const bool disagrees = predicted.has_value() && *predicted != entry.label;
            any_disagrees |= disagrees;
            all_disagree &= disagrees;
        }
        if (any_disagrees) {
            row.unanimous = all_disagree && runs.size() > 1;
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

} // namespace circex
