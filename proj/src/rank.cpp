#include <algorithm>
#include <cctype>
#include <cstdio>
#include <set>

#include "ffd/discovery.hpp"
#include "ffd/errors.hpp"

namespace ffd {
namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

Bits answers(const QuestionSpec& q, const Dataset& data) {
  Bits out;
  out.reserve(data.rows.size());
  for (const Record& r : data.rows) out.push_back(evaluate_question(q, r) ? 1 : 0);
  return out;
}

bool ranks_before(const RankedCandidate& a, const RankedCandidate& b) {
  if (a.gain != b.gain) return a.gain > b.gain;
  if (a.question.field != b.question.field) return a.question.field < b.question.field;
  if (a.question.threshold != b.question.threshold) {
    return a.question.threshold < b.question.threshold;
  }
  return a.question.members < b.question.members;
}

}  // namespace

Bits binarize_outcome(std::span<const Value> column) {
  Bits out;
  out.reserve(column.size());
  for (std::size_t i = 0; i < column.size(); ++i) {
    const Value& v = column[i];
    if (const auto d = as_number(v)) {
      if (*d == 0.0 || *d == 1.0) {
        out.push_back(*d == 1.0 ? 1 : 0);
        continue;
      }
    } else if (const auto* t = as_text(v)) {
      const std::string s = lower(*t);
      if (s == "yes" || s == "y" || s == "true") {
        out.push_back(1);
        continue;
      }
      if (s == "no" || s == "n" || s == "false") {
        out.push_back(0);
        continue;
      }
    }
    throw OutcomeNotBinary("row " + std::to_string(i) + " has a non-binary outcome");
  }
  return out;
}

RankedTemplate rank_questions(const Dataset& data, const std::string& outcome_field,
                              const RankOptions& options) {
  if (!data.has_field(outcome_field)) {
    throw UnknownField("outcome field '" + outcome_field + "' is not in the header");
  }
  if (options.k == 0 || options.k > static_cast<std::size_t>(kQuestionCount)) {
    throw OutOfRange("k must be in 1..23");
  }
  const auto outcome_column = data.column(outcome_field);
  const Bits outcome = binarize_outcome(outcome_column);
  const auto ones = static_cast<std::size_t>(std::count(outcome.begin(), outcome.end(), 1));
  if (ones < 2 || outcome.size() - ones < 2) {
    throw TooFewRows("need at least 2 rows of each outcome class, have " +
                     std::to_string(outcome.size() - ones) + " and " + std::to_string(ones));
  }

  std::vector<std::string> features;
  for (const auto& name : data.header) {
    if (name == outcome_field) continue;
    if (std::find(options.exclude.begin(), options.exclude.end(), name) != options.exclude.end()) {
      continue;
    }
    features.push_back(name);
  }
  if (features.empty()) throw DegenerateInput("no feature fields besides the outcome");

  std::vector<RankedCandidate> candidates;
  for (const auto& name : features) {
    const auto column = data.column(name);
    LabeledColumn numeric;
    numeric.outcome = outcome;
    std::set<std::string> texts;
    bool any_number = false;
    for (const Value& v : column) {
      const auto d = as_number(v);
      any_number |= d.has_value();
      numeric.values.push_back(d);
      if (const auto* t = as_text(v)) texts.insert(*t);
    }

    if (any_number) {
      StumpResult stump;
      try {
        stump = best_threshold(numeric);
      } catch (const DegenerateColumn&) {
        continue;
      }
      QuestionSpec q;
      q.field = name;
      q.op = stump.direction == StumpDirection::kGt ? QuestionOp::kGt : QuestionOp::kLe;
      q.threshold = stump.threshold;
      candidates.push_back({q, information_gain(answers(q, data), outcome)});
    } else if (!texts.empty() && texts.size() <= options.text_cardinality_cap) {
      for (const auto& t : texts) {
        QuestionSpec q;
        q.field = name;
        q.op = QuestionOp::kIn;
        q.members = {t};
        candidates.push_back({q, information_gain(answers(q, data), outcome)});
      }
    }
  }
  std::sort(candidates.begin(), candidates.end(), ranks_before);

  std::vector<QuestionSpec> chosen;
  std::set<std::string> used;
  for (std::size_t i = 0; i < candidates.size() && chosen.size() < options.k; ++i) {
    chosen.push_back(candidates[i].question);
    used.insert(candidates[i].question.field);
  }
  const std::size_t selected = chosen.size();

  // Pad with presence checks: unused fields first, then cycle over all.
  std::vector<std::string> pad_order;
  for (const auto& f : features) {
    if (!used.count(f)) pad_order.push_back(f);
  }
  for (const auto& f : features) pad_order.push_back(f);
  for (std::size_t i = 0; chosen.size() < static_cast<std::size_t>(kQuestionCount); ++i) {
    QuestionSpec q;
    q.field = pad_order[i % pad_order.size()];
    q.op = QuestionOp::kPresent;
    chosen.push_back(q);
  }
  for (std::size_t i = 0; i < chosen.size(); ++i) chosen[i].position = static_cast<int>(i + 1);

  const double p1 = static_cast<double>(ones) / static_cast<double>(outcome.size());
  const std::array<double, 2> dist{1.0 - p1, p1};
  return RankedTemplate{QuestionTemplate(std::move(chosen)), std::move(candidates),
                        static_cast<std::size_t>(kQuestionCount) - selected, entropy(dist)};
}

std::string format_ranking(const RankedTemplate& ranked) {
  std::string out;
  char buf[512];
  std::snprintf(buf, sizeof buf, "outcome entropy %.6f bits\n%-5s %-10s %s\n",
                ranked.outcome_entropy, "rank", "gain", "question");
  out += buf;
  for (std::size_t i = 0; i < ranked.ranking.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%-5zu %-10.6f %s\n", i + 1, ranked.ranking[i].gain,
                  describe(ranked.ranking[i].question).c_str());
    out += buf;
  }
  std::snprintf(buf, sizeof buf, "padding %zu\n", ranked.padding);
  out += buf;
  return out;
}

}  // namespace ffd
