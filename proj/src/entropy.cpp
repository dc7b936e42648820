#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "ffd/discovery.hpp"
#include "ffd/errors.hpp"

namespace ffd {
namespace {

// Entropy of a two-class count split, in bits.
double split_entropy(std::size_t ones, std::size_t total) {
  if (total == 0 || ones == 0 || ones == total) return 0.0;
  const double p = static_cast<double>(ones) / static_cast<double>(total);
  return -(p * std::log2(p) + (1.0 - p) * std::log2(1.0 - p));
}

// Gain of splitting (ones, total) into a "yes" part and the remainder.
double split_gain(std::size_t ones, std::size_t total, std::size_t yes_ones,
                  std::size_t yes_total) {
  const std::size_t no_ones = ones - yes_ones;
  const std::size_t no_total = total - yes_total;
  const double n = static_cast<double>(total);
  const double gain = split_entropy(ones, total) -
                      (static_cast<double>(yes_total) / n) * split_entropy(yes_ones, yes_total) -
                      (static_cast<double>(no_total) / n) * split_entropy(no_ones, no_total);
  return std::max(gain, 0.0);
}

void check_bits(std::span<const std::uint8_t> bits, const char* what) {
  for (auto b : bits) {
    if (b > 1) throw ContractError(std::string(what) + " must contain only 0/1");
  }
}

constexpr double kTieTolerance = 1e-12;

}  // namespace

double entropy(std::span<const double> p) {
  if (p.empty()) throw InvalidDistribution("empty distribution");
  double sum = 0.0;
  for (double v : p) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw InvalidDistribution("probabilities must be finite and non-negative");
    }
    sum += v;
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    throw InvalidDistribution("probabilities sum to " + std::to_string(sum));
  }
  double h = 0.0;
  for (double v : p) {
    if (v > 0.0) h -= v * std::log2(v);
  }
  return std::clamp(h, 0.0, std::log2(static_cast<double>(p.size())));
}

double information_gain(std::span<const std::uint8_t> feature,
                        std::span<const std::uint8_t> outcome) {
  if (feature.size() != outcome.size()) {
    throw LengthMismatch("feature has " + std::to_string(feature.size()) +
                         " rows, outcome " + std::to_string(outcome.size()));
  }
  if (feature.empty()) throw EmptyInput("information gain of zero rows");
  check_bits(feature, "feature");
  check_bits(outcome, "outcome");
  std::size_t ones = 0, yes = 0, yes_ones = 0;
  for (std::size_t i = 0; i < feature.size(); ++i) {
    ones += outcome[i];
    yes += feature[i];
    yes_ones += feature[i] & outcome[i];
  }
  return split_gain(ones, feature.size(), yes_ones, yes);
}

StumpResult best_threshold(const LabeledColumn& col) {
  if (col.values.size() != col.outcome.size()) {
    throw LengthMismatch("column has " + std::to_string(col.values.size()) +
                         " values, outcome " + std::to_string(col.outcome.size()));
  }
  check_bits(col.outcome, "outcome");
  std::vector<std::pair<double, std::uint8_t>> rows;
  rows.reserve(col.values.size());
  for (std::size_t i = 0; i < col.values.size(); ++i) {
    if (col.values[i]) rows.emplace_back(*col.values[i], col.outcome[i]);
  }
  std::sort(rows.begin(), rows.end());
  if (rows.empty() || rows.front().first == rows.back().first) {
    throw DegenerateColumn("fewer than 2 distinct non-missing values");
  }

  const std::size_t total = rows.size();
  std::size_t ones = 0;
  for (const auto& r : rows) ones += r.second;

  // Sweep: after consuming every row with value <= v, the "le" side holds
  // those rows and the "gt" side the rest.
  StumpResult best;
  bool have = false;
  std::size_t best_le_ones = 0, best_le_total = 0;
  std::size_t le_ones = 0;
  for (std::size_t i = 0; i + 1 < total; ++i) {
    le_ones += rows[i].second;
    if (rows[i].first == rows[i + 1].first) continue;
    const std::size_t le_total = i + 1;
    const double gain = split_gain(ones, total, le_ones, le_total);
    if (!have || gain > best.gain + kTieTolerance) {
      have = true;
      best.gain = gain;
      best.threshold = rows[i].first + (rows[i + 1].first - rows[i].first) / 2.0;
      best_le_ones = le_ones;
      best_le_total = le_total;
    }
  }
  const double rate_le = static_cast<double>(best_le_ones) / static_cast<double>(best_le_total);
  const double rate_gt = static_cast<double>(ones - best_le_ones) /
                         static_cast<double>(total - best_le_total);
  best.direction = rate_gt >= rate_le ? StumpDirection::kGt : StumpDirection::kLe;
  return best;
}

// ---- trees ---------------------------------------------------------------

namespace {

struct TreeBuilder {
  const std::vector<NamedColumn>& columns;
  std::span<const std::uint8_t> outcome;
  int max_depth;
  DecisionTree tree;

  std::size_t grow(const std::vector<std::size_t>& rows, int depth) {
    const std::size_t id = tree.nodes.size();
    tree.nodes.emplace_back();
    for (std::size_t r : rows) ++tree.nodes[id].class_counts[outcome[r]];
    const auto counts = tree.nodes[id].class_counts;
    if (depth >= max_depth || counts[0] == 0 || counts[1] == 0) return id;

    const std::size_t ones = counts[1];
    const NamedColumn* best_col = nullptr;
    double best_gain = 0.0;
    double best_threshold_value = 0.0;
    for (const NamedColumn& c : columns) {
      LabeledColumn sub;
      sub.values.reserve(rows.size());
      sub.outcome.reserve(rows.size());
      for (std::size_t r : rows) {
        sub.values.push_back(c.values[r]);
        sub.outcome.push_back(outcome[r]);
      }
      StumpResult stump;
      try {
        stump = best_threshold(sub);
      } catch (const DegenerateColumn&) {
        continue;
      }
      // Score the split over the whole node; missing answers "no".
      std::size_t yes = 0, yes_ones = 0;
      for (std::size_t r : rows) {
        if (c.values[r] && *c.values[r] > stump.threshold) {
          ++yes;
          yes_ones += outcome[r];
        }
      }
      const double gain = split_gain(ones, rows.size(), yes_ones, yes);
      const bool better =
          best_col == nullptr || gain > best_gain + kTieTolerance ||
          (gain >= best_gain - kTieTolerance &&
           (c.name < best_col->name ||
            (c.name == best_col->name && stump.threshold < best_threshold_value)));
      if (better) {
        best_col = &c;
        best_gain = gain;
        best_threshold_value = stump.threshold;
      }
    }
    if (best_col == nullptr || best_gain < 1e-12) return id;

    std::vector<std::size_t> yes_rows, no_rows;
    for (std::size_t r : rows) {
      const auto& v = best_col->values[r];
      (v && *v > best_threshold_value ? yes_rows : no_rows).push_back(r);
    }
    tree.nodes[id].leaf = false;
    tree.nodes[id].field = best_col->name;
    tree.nodes[id].threshold = best_threshold_value;
    tree.nodes[id].gain = best_gain;
    const std::size_t yes_id = grow(yes_rows, depth + 1);
    const std::size_t no_id = grow(no_rows, depth + 1);
    tree.nodes[id].yes = yes_id;
    tree.nodes[id].no = no_id;
    return id;
  }
};

int subtree_depth(const DecisionTree& t, std::size_t node) {
  const TreeNode& n = t.nodes[node];
  if (n.leaf) return 0;
  return 1 + std::max(subtree_depth(t, n.yes), subtree_depth(t, n.no));
}

void render_node(const DecisionTree& t, std::size_t node, int indent, std::ostream& out) {
  const TreeNode& n = t.nodes[node];
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  if (n.leaf) {
    out << pad << "leaf [0:" << n.class_counts[0] << " 1:" << n.class_counts[1] << "]\n";
    return;
  }
  out << pad << describe(t.rule(node)) << "  (gain " << n.gain << ")\n";
  out << pad << "yes:\n";
  render_node(t, n.yes, indent + 1, out);
  out << pad << "no:\n";
  render_node(t, n.no, indent + 1, out);
}

}  // namespace

int DecisionTree::depth() const { return nodes.empty() ? 0 : subtree_depth(*this, 0); }

QuestionSpec DecisionTree::rule(std::size_t node) const {
  const TreeNode& n = nodes.at(node);
  if (n.leaf) throw ContractError("leaf nodes carry no rule");
  QuestionSpec q;
  q.field = n.field;
  q.op = QuestionOp::kGt;
  q.threshold = n.threshold;
  return q;
}

std::string DecisionTree::render() const {
  std::ostringstream out;
  if (!nodes.empty()) render_node(*this, 0, 0, out);
  return out.str();
}

DecisionTree build_tree(const std::vector<NamedColumn>& columns,
                        std::span<const std::uint8_t> outcome, int max_depth) {
  if (max_depth < 0 || max_depth > kMaxTreeDepth) {
    throw OutOfRange("tree depth must be in 0..3");
  }
  check_bits(outcome, "outcome");
  bool any_splittable = false;
  for (const NamedColumn& c : columns) {
    if (c.values.size() != outcome.size()) {
      throw LengthMismatch("column '" + c.name + "' has " + std::to_string(c.values.size()) +
                           " rows, outcome " + std::to_string(outcome.size()));
    }
    std::optional<double> first;
    for (const auto& v : c.values) {
      if (!v) continue;
      if (!first) first = v;
      else if (*v != *first) { any_splittable = true; break; }
    }
  }
  if (!any_splittable) throw DegenerateColumn("no column has 2 distinct values");

  TreeBuilder builder{columns, outcome, max_depth, {}};
  std::vector<std::size_t> rows(outcome.size());
  std::iota(rows.begin(), rows.end(), std::size_t{0});
  builder.grow(rows, 0);
  return std::move(builder.tree);
}

}  // namespace ffd
