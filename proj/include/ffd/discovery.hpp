// Metafeature discovery: the statistics used to turn raw columns into
// yes/no questions and to rank those questions against a binary outcome.
//
// Entropies are in bits (log base 2).
#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ffd/dataset.hpp"
#include "ffd/question_template.hpp"

namespace ffd {

using Bits = std::vector<std::uint8_t>;

// ---- entropy and information gain ---------------------------------------

// Throws InvalidDistribution for negative entries or a sum off 1 by > 1e-9.
double entropy(std::span<const double> p);
double information_gain(std::span<const std::uint8_t> feature,
                        std::span<const std::uint8_t> outcome);

// ---- threshold stumps and shallow trees ---------------------------------

struct LabeledColumn {
  std::vector<std::optional<double>> values;
  Bits outcome;
};

enum class StumpDirection { kGt, kLe };

struct StumpResult {
  double threshold = 0.0;
  double gain = 0.0;
  // Side of the threshold where outcome 1 is at least as frequent.
  StumpDirection direction = StumpDirection::kGt;
};

// Best midpoint between consecutive distinct non-missing values; ties go to
// the smallest threshold. Throws DegenerateColumn (< 2 distinct values) or
// LengthMismatch.
StumpResult best_threshold(const LabeledColumn& col);

struct NamedColumn {
  std::string name;
  std::vector<std::optional<double>> values;
};

struct TreeNode {
  std::array<std::size_t, 2> class_counts{};  // [outcome 0, outcome 1]
  bool leaf = true;
  // Internal nodes only: rows with `field > threshold` go to `yes`, others
  // (missing included) to `no`.
  std::string field;
  double threshold = 0.0;
  double gain = 0.0;
  std::size_t yes = 0;
  std::size_t no = 0;
};

struct DecisionTree {
  std::vector<TreeNode> nodes;  // nodes[0] is the root
  int depth() const;
  // The split rule of an internal node as a template question.
  QuestionSpec rule(std::size_t node) const;
  std::string render() const;
};

inline constexpr int kMaxTreeDepth = 3;

DecisionTree build_tree(const std::vector<NamedColumn>& columns,
                        std::span<const std::uint8_t> outcome, int max_depth);

// ---- regression and distribution diagnostics ----------------------------

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double pearson_r = 0.0;  // 0 when y has no variance
};

// Throws LengthMismatch, DegenerateInput (n < 2 or constant x).
LinearFit linear_fit(std::span<const double> x, std::span<const double> y);

double normal_cdf(double x);
// Inverse standard normal CDF for p in (0, 1).
double normal_quantile(double p);

struct QQData {
  // (theoretical quantile, sample value), ascending by sample value.
  std::vector<std::pair<double, double>> pairs;
};

QQData qq_points(std::span<const double> sample);

// ---- logistic GLM -------------------------------------------------------

struct GlmCoefficient {
  std::string name;
  double estimate = 0.0;
  double std_error = 0.0;
  double z_value = 0.0;
  double p_value = 1.0;
};

struct GlmReport {
  std::vector<GlmCoefficient> coefficients;  // "(Intercept)" first
  bool converged = false;
  bool separation_flag = false;
  int iterations = 0;
  double deviance = 0.0;
};

struct BitColumn {
  std::string name;
  Bits values;
};

inline constexpr double kSeparationBound = 15.0;
inline constexpr int kGlmMaxIterations = 25;
inline constexpr double kGlmTolerance = 1e-8;

// Binomial GLM, logit link, fit by IRLS. Throws SingularDesign naming the
// columns that are linear combinations of earlier ones.
GlmReport logistic_glm(const std::vector<BitColumn>& features,
                       std::span<const std::uint8_t> outcome);
// Indices of features that are linear combinations of the intercept and the
// features before them.
std::vector<std::size_t> collinear_features(const std::vector<BitColumn>& features);
std::string format_glm_report(const GlmReport& report);

// ---- Bayes ---------------------------------------------------------------

// P(A|B) = P(B|A) P(A) / P(B). Throws InvalidProbability.
double bayes_posterior(double p_b_given_a, double p_a, double p_b);

// ---- plotting data -------------------------------------------------------

struct ScatterRow {
  double x = 0.0;
  double y = 0.0;
  Value group;
};

struct ScatterTable {
  std::string x_name = "x";
  std::string y_name = "y";
  std::optional<std::string> group_name;
  std::vector<ScatterRow> rows;
  std::size_t dropped = 0;
};

// Rows where x or y is not a number, or the group cell is missing, are
// dropped and counted. Throws LengthMismatch.
ScatterTable scatter_export(std::span<const Value> x, std::span<const Value> y,
                            std::optional<std::span<const Value>> group = std::nullopt);
std::string scatter_csv(const ScatterTable& table);
std::string qq_csv(const QQData& qq);

// ---- question ranking ---------------------------------------------------

struct RankOptions {
  std::size_t k = kQuestionCount;
  std::size_t text_cardinality_cap = 12;
  std::vector<std::string> exclude;  // fields never used as questions
};

struct RankedCandidate {
  QuestionSpec question;  // position unset
  double gain = 0.0;
};

struct RankedTemplate {
  QuestionTemplate questions;
  std::vector<RankedCandidate> ranking;  // every candidate, best first
  std::size_t padding = 0;
  double outcome_entropy = 0.0;
};

// Accepts 0/1 numbers and yes/no, y/n, true/false text (any case).
// Throws OutcomeNotBinary.
Bits binarize_outcome(std::span<const Value> column);

// Throws UnknownField, OutcomeNotBinary, TooFewRows.
RankedTemplate rank_questions(const Dataset& data, const std::string& outcome_field,
                              const RankOptions& options = {});

std::string format_ranking(const RankedTemplate& ranked);

}  // namespace ffd
