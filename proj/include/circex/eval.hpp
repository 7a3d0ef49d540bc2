#pragma once

#include "circex/complexity.hpp"
#include "circex/corpus.hpp"
#include "circex/verdict.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace circex {

struct ConfusionMatrix {
    long long tp = 0;
    long long fp = 0;
    long long fn = 0;
    long long tn = 0;
    long long unparseable = 0;

    long long total() const noexcept { return tp + fp + fn + tn; }

    bool operator==(const ConfusionMatrix&) const = default;
};

// How Unparseable verdicts enter the confusion matrix. The default is
// the conservative one: it can lower recall but never precision.
enum class UnparseablePolicy { TreatAsNo, TreatAsYes, Drop };

struct VerdictEntry {
    Decision decision = Decision::Unparseable;
    std::optional<std::string> evidence;
};

// Requires exactly one verdict per sample entry; lists missing ids.
ConfusionMatrix confusion(const EvaluationSample& sample,
                          const std::map<std::string, VerdictEntry>& verdicts,
                          UnparseablePolicy policy = UnparseablePolicy::TreatAsNo);

inline constexpr double kDefaultZ = 1.959964; // two-sided 95%
inline constexpr double kConfidenceLevel = 0.95;

struct WilsonInterval {
    double lower = 0.0;
    double upper = 0.0;
};

// Wilson score interval for `successes` out of `n` trials, clamped to
// [0, 1]. `n` may be fractional: the F1 interval runs on an effective
// sample size. Throws DataError for n <= 0.
WilsonInterval wilson_interval(double successes, double n, double z = kDefaultZ);

struct MetricWithCI {
    double point = 0.0;
    double lower = 0.0;
    double upper = 0.0;
    double level = kConfidenceLevel;
};

struct CircumstanceMetrics {
    std::string circumstance_id;
    ConfusionMatrix matrix;
    // nullopt marks an undefined metric (zero denominator); such rows
    // are excluded from macro averages.
    std::optional<MetricWithCI> precision;
    std::optional<MetricWithCI> recall;
    std::optional<MetricWithCI> f1;
};

// Precision/recall with Wilson intervals over their own denominators;
// the F1 interval applies Wilson to the effective proportion
// p = tp / (tp + (fp+fn)/2) with n = tp + (fp+fn)/2.
CircumstanceMetrics metrics(const ConfusionMatrix& matrix, std::string circumstance_id = {},
                            double z = kDefaultZ);

// Unweighted mean of the defined F1 points. Throws when all are undefined.
double macro_f1(const std::vector<CircumstanceMetrics>& rows);

inline constexpr double kDefaultTieEpsilon = 0.02;

struct StrategyInput {
    std::string circumstance_id;
    int score = 0;
    double f1_simple = 0.0;
    double f1_complex = 0.0;
};

struct StrategyAnalysisRow {
    std::string circumstance_id;
    int score = 0;
    double f1_simple = 0.0;
    double f1_complex = 0.0;
    PromptStrategy oracle = PromptStrategy::Simple;    // exact F1 comparison, ties to Simple
    PromptStrategy predicted = PromptStrategy::Simple; // score > threshold
    bool correct = false;
    bool tie = false; // |f1_complex - f1_simple| <= tie_epsilon
};

struct StrategyAnalysis {
    std::vector<StrategyAnalysisRow> rows;
    int correct_all = 0;
    int non_tie_count = 0;
    int correct_non_tie = 0;
    double accuracy_all = 0.0;
    double accuracy_non_tie = 0.0;
};

StrategyAnalysis strategy_analysis(const std::vector<StrategyInput>& inputs,
                                   double tie_epsilon = kDefaultTieEpsilon,
                                   int threshold = kDefaultStrategyThreshold);

// Macro F1 with the per-row strategy chosen by the score threshold.
double hybrid_macro_f1(const std::vector<StrategyInput>& inputs,
                       int threshold = kDefaultStrategyThreshold);

// Hindsight upper bound: the better strategy per row.
double oracle_macro_f1(const std::vector<StrategyInput>& inputs);

struct BracketInput {
    std::string circumstance_id;
    std::optional<long long> training_count;
    double hybrid_f1 = 0.0;
    std::optional<double> baseline_f1;
};

struct BracketRow {
    std::string label;
    int n = 0;
    int hybrid_wins = 0;
    int baseline_wins = 0;
};

struct BracketAnalysis {
    std::vector<BracketRow> rows; // fixed bracket order, low prevalence first
    int total_n = 0;
    int total_hybrid = 0;
    int total_baseline = 0;
    std::vector<std::string> skipped; // rows without a training count
};

// Brackets over training prevalence with edges {500, 2000, 5000, 15000},
// lower-exclusive/upper-inclusive. A missing baseline is a hybrid win;
// exact F1 equality goes to the baseline.
BracketAnalysis bracket_analysis(const std::vector<BracketInput>& inputs);

struct DisagreementRow {
    std::string narrative_id;
    bool label = false;
    std::vector<VerdictEntry> runs; // one per model run, input order
    bool unanimous = false;         // every run contradicts the label
};

// All false positives / false negatives with model evidence, for human
// review. With several runs, rows where every run contradicts the label
// are flagged unanimous.
std::vector<DisagreementRow> disagreement_report(
    const EvaluationSample& sample, const std::vector<std::map<std::string, VerdictEntry>>& runs,
    UnparseablePolicy policy = UnparseablePolicy::TreatAsNo);

} // namespace circex
