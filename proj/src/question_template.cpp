#include "ffd/question_template.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "ffd/errors.hpp"

namespace ffd {

// ---- Record -------------------------------------------------------------

void Record::set(std::string name, Value value) {
  if (name.empty()) throw ContractError("record field name must be non-empty");
  if (has(name)) throw ContractError("duplicate record field '" + name + "'");
  if (auto d = as_number(value); d && !std::isfinite(*d)) {
    throw ContractError("record field '" + name + "' holds a non-finite number");
  }
  fields_.emplace_back(std::move(name), std::move(value));
}

const Value& Record::get(std::string_view name) const {
  static const Value kMissing{Missing{}};
  for (const auto& [k, v] : fields_) {
    if (k == name) return v;
  }
  return kMissing;
}

bool Record::has(std::string_view name) const {
  return std::any_of(fields_.begin(), fields_.end(),
                     [&](const auto& f) { return f.first == name; });
}

// ---- questions ----------------------------------------------------------

namespace {

struct OpEntry {
  QuestionOp op;
  std::string_view name;
};
constexpr std::array<OpEntry, 7> kOps{{{QuestionOp::kGt, "gt"},
                                        {QuestionOp::kGe, "ge"},
                                        {QuestionOp::kLt, "lt"},
                                        {QuestionOp::kLe, "le"},
                                        {QuestionOp::kEq, "eq"},
                                        {QuestionOp::kIn, "in"},
                                        {QuestionOp::kPresent, "present"}}};

std::vector<std::string> split_ws(std::string_view line) {
  std::vector<std::string> out;
  std::istringstream in{std::string(line)};
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

bool parse_double(std::string_view text, double& out) {
  const char* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), last, out);
  return !text.empty() && ec == std::errc() && ptr == last && std::isfinite(out);
}

}  // namespace

std::string_view op_name(QuestionOp op) {
  for (const auto& e : kOps) {
    if (e.op == op) return e.name;
  }
  return "?";
}

bool is_numeric_op(QuestionOp op) {
  return op != QuestionOp::kIn && op != QuestionOp::kPresent;
}

std::string format_number(double v) {
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), ptr);
}

std::string describe(const QuestionSpec& q) {
  std::string out = q.field;
  out += ' ';
  out += op_name(q.op);
  if (is_numeric_op(q.op)) {
    out += ' ';
    out += format_number(q.threshold);
  } else if (q.op == QuestionOp::kIn) {
    out += ' ';
    for (std::size_t i = 0; i < q.members.size(); ++i) {
      if (i) out += ',';
      out += q.members[i];
    }
  }
  if (q.missing_default) out += " missing=1";
  return out;
}

bool evaluate_question(const QuestionSpec& q, const Record& r) {
  const Value& v = r.get(q.field);
  if (q.op == QuestionOp::kPresent) return !is_missing(v);
  if (q.op == QuestionOp::kIn) {
    const std::string* text = as_text(v);
    if (text == nullptr) return q.missing_default;
    return std::find(q.members.begin(), q.members.end(), *text) != q.members.end();
  }
  const auto x = as_number(v);
  if (!x) return q.missing_default;
  switch (q.op) {
    case QuestionOp::kGt: return *x > q.threshold;
    case QuestionOp::kGe: return *x >= q.threshold;
    case QuestionOp::kLt: return *x < q.threshold;
    case QuestionOp::kLe: return *x <= q.threshold;
    case QuestionOp::kEq: return *x == q.threshold;
    default: return q.missing_default;
  }
}

// ---- template -----------------------------------------------------------

QuestionTemplate::QuestionTemplate(std::vector<QuestionSpec> questions) {
  if (questions.size() != static_cast<std::size_t>(kQuestionCount)) {
    throw TemplateError("expected 23, found " + std::to_string(questions.size()));
  }
  std::array<bool, kQuestionCount> seen{};
  for (auto& q : questions) {
    if (q.position < 1 || q.position > kQuestionCount) {
      throw TemplateError("question position " + std::to_string(q.position) +
                          " outside 1..23");
    }
    if (seen[q.position - 1]) {
      throw TemplateError("duplicate question position Q" + std::to_string(q.position));
    }
    seen[q.position - 1] = true;
    questions_[q.position - 1] = std::move(q);
  }
}

QuestionTemplate parse_template(std::string_view text) {
  std::vector<QuestionSpec> questions;
  std::map<int, std::size_t> first_line;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? text.npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    auto tokens = split_ws(line);
    if (tokens.empty()) continue;

    const std::string& head = tokens[0];
    if (head.size() < 3 || head[0] != 'Q' || head.back() != ':') {
      throw TemplateError(line_no, "expected 'Q<pos>:' at start of line");
    }
    QuestionSpec q;
    {
      std::string_view digits(head.data() + 1, head.size() - 2);
      auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), q.position);
      if (ec != std::errc() || ptr != digits.data() + digits.size()) {
        throw TemplateError(line_no, "bad question position '" + head + "'");
      }
    }
    if (q.position < 1 || q.position > kQuestionCount) {
      throw TemplateError(line_no, "question position " + std::to_string(q.position) +
                                       " outside 1..23");
    }
    if (auto it = first_line.find(q.position); it != first_line.end()) {
      throw TemplateError(line_no, "duplicate Q" + std::to_string(q.position) +
                                       " (first defined on line " +
                                       std::to_string(it->second) + ")");
    }
    first_line.emplace(q.position, line_no);

    if (tokens.size() < 3) throw TemplateError(line_no, "expected '<field> <op> ...'");
    q.field = tokens[1];
    const auto op = std::find_if(kOps.begin(), kOps.end(),
                                 [&](const OpEntry& e) { return e.name == tokens[2]; });
    if (op == kOps.end()) throw TemplateError(line_no, "unknown op '" + tokens[2] + "'");
    q.op = op->op;

    std::size_t next = 3;
    if (is_numeric_op(q.op)) {
      if (tokens.size() <= next || !parse_double(tokens[next], q.threshold)) {
        throw TemplateError(line_no, "op '" + tokens[2] + "' needs a numeric operand");
      }
      ++next;
    } else if (q.op == QuestionOp::kIn) {
      if (tokens.size() <= next || tokens[next].rfind("missing=", 0) == 0) {
        throw TemplateError(line_no, "op 'in' needs a comma-separated set");
      }
      std::string_view set = tokens[next];
      std::size_t start = 0;
      while (start <= set.size()) {
        const auto comma = set.find(',', start);
        auto member = set.substr(start, comma == set.npos ? set.npos : comma - start);
        if (member.empty()) throw TemplateError(line_no, "empty member in 'in' set");
        q.members.emplace_back(member);
        if (comma == set.npos) break;
        start = comma + 1;
      }
      ++next;
    }
    if (next < tokens.size()) {
      if (tokens[next] == "missing=0") {
        q.missing_default = false;
      } else if (tokens[next] == "missing=1") {
        q.missing_default = true;
      } else {
        throw TemplateError(line_no, "unexpected operand '" + tokens[next] + "'");
      }
      ++next;
    }
    if (next < tokens.size()) {
      throw TemplateError(line_no, "trailing text '" + tokens[next] + "'");
    }
    questions.push_back(std::move(q));
  }
  if (questions.size() != static_cast<std::size_t>(kQuestionCount)) {
    throw TemplateError("expected 23, found " + std::to_string(questions.size()));
  }
  return QuestionTemplate(std::move(questions));
}

QuestionTemplate load_template_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw TemplateError("cannot open template '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_template(buf.str());
}

std::string format_template(const QuestionTemplate& t) {
  std::string out;
  for (const auto& q : t.questions()) {
    out += 'Q';
    out += std::to_string(q.position);
    out += ": ";
    out += describe(q);
    out += '\n';
  }
  return out;
}

BitVector23 encode_record(const QuestionTemplate& t, const Record& r) {
  std::uint32_t bits = 0;
  for (const auto& q : t.questions()) {
    bits = (bits << 1) | (evaluate_question(q, r) ? 1u : 0u);
  }
  return BitVector23(bits);
}

}  // namespace ffd
