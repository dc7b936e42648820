// 23-question templates: each question is a yes/no predicate over one record
// field, and the answers form the record's 23-bit key (Q1 = MSB).
//
// File format, one question per line:
//
//   Q<pos>: <field> <op> <operand> [missing=<0|1>]
//
// with op in {gt, ge, lt, le, eq, in, present}. `in` takes a comma-separated
// text set without spaces, `present` takes no operand. `#` starts a comment.
#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "ffd/golay.hpp"
#include "ffd/record.hpp"

namespace ffd {

inline constexpr int kQuestionCount = kCodeLength;

enum class QuestionOp { kGt, kGe, kLt, kLe, kEq, kIn, kPresent };

std::string_view op_name(QuestionOp op);
bool is_numeric_op(QuestionOp op);

struct QuestionSpec {
  int position = 1;  // 1..23
  std::string field;
  QuestionOp op = QuestionOp::kPresent;
  double threshold = 0.0;             // gt/ge/lt/le/eq
  std::vector<std::string> members;   // in
  bool missing_default = false;

  friend bool operator==(const QuestionSpec&, const QuestionSpec&) = default;
};

// `field op operand [missing=1]` without the position prefix.
std::string describe(const QuestionSpec& q);

// Total: missing fields, and text where a number is expected, answer with
// the question's missing_default.
bool evaluate_question(const QuestionSpec& q, const Record& r);

class QuestionTemplate {
 public:
  // Throws TemplateError unless positions 1..23 each appear exactly once.
  explicit QuestionTemplate(std::vector<QuestionSpec> questions);

  // Ordered by position.
  const std::array<QuestionSpec, kQuestionCount>& questions() const noexcept {
    return questions_;
  }
  const QuestionSpec& at(int position) const { return questions_.at(position - 1); }

  friend bool operator==(const QuestionTemplate&, const QuestionTemplate&) = default;

 private:
  std::array<QuestionSpec, kQuestionCount> questions_;
};

QuestionTemplate parse_template(std::string_view text);
QuestionTemplate load_template_file(const std::string& path);
// Canonical text: positions ascending, no comments.
std::string format_template(const QuestionTemplate& t);

BitVector23 encode_record(const QuestionTemplate& t, const Record& r);

// Movie-domain template shipped with the toolkit (data/movie_default.tmpl).
std::string_view default_movie_template_text();
const QuestionTemplate& default_movie_template();

// Shortest text that parses back to the same double.
std::string format_number(double v);

}  // namespace ffd
