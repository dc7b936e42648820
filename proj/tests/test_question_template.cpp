#include <doctest.h>

#include <string>

#include "ffd/question_template.hpp"
#include "test_util.hpp"

using namespace ffd;

namespace {

std::string present_template(int count) {
  std::string text;
  for (int q = 1; q <= count; ++q) text += "Q" + std::to_string(q) + ": f" + std::to_string(q) + " present\n";
  return text;
}

// Record whose fields f1..f23 exist exactly where `bits` has a 1 (Q1 = MSB).
Record presence_record(std::uint32_t bits) {
  Record r;
  for (int q = 1; q <= kQuestionCount; ++q) {
    if ((bits >> (kQuestionCount - q)) & 1u) r.set("f" + std::to_string(q), 1.0);
  }
  return r;
}

QuestionSpec numeric(const std::string& field, QuestionOp op, double t, bool missing = false) {
  QuestionSpec q;
  q.field = field;
  q.op = op;
  q.threshold = t;
  q.missing_default = missing;
  return q;
}

}  // namespace

TEST_CASE("shipped movie template") {
  const std::string path = std::string(FFD_SOURCE_DIR) + "/data/movie_default.tmpl";
  const QuestionTemplate t = load_template_file(path);
  CHECK(t == default_movie_template());
  CHECK(describe(t.at(23)) == "audience_score gt 55");
  CHECK(describe(t.at(22)) == "wins gt 4");
  CHECK(describe(t.at(1)) == "num_oscars gt 0");
  CHECK(describe(t.at(2)) == "nominations gt 0");
  CHECK(describe(t.at(3)) == "nominations gt 20");
  CHECK(describe(t.at(7)) == "imdb_rating ge 7.5");
}

TEST_CASE("template errors") {
  try {
    parse_template(present_template(22));
    FAIL("accepted 22 questions");
  } catch (const TemplateError& e) {
    CHECK(std::string(e.what()).find("expected 23, found 22") != std::string::npos);
  }

  std::string dup = present_template(23) + "Q5: other present\n";
  try {
    parse_template(dup);
    FAIL("accepted duplicate Q5");
  } catch (const TemplateError& e) {
    CHECK(e.line() == 24);
    CHECK(std::string(e.what()).find("line 5") != std::string::npos);
  }

  auto bad_line = [](const std::string& line) {
    std::string text = present_template(22) + line + "\n";
    try {
      parse_template(text);
    } catch (const TemplateError& e) {
      CHECK(e.line() == 23);
      return;
    }
    FAIL("accepted: " << line);
  };
  bad_line("Q23: wins bigger 4");
  bad_line("Q23: wins gt");
  bad_line("Q23: wins gt many");
  bad_line("Q23: genre in");
  bad_line("Q23: genre in A,,B");
  bad_line("Q23: wins present 4");
  bad_line("Q23: wins gt 4 missing=2");
  bad_line("Q24: wins gt 4");
  bad_line("Q0: wins gt 4");
  bad_line("23: wins gt 4");
}

TEST_CASE("comments, blank lines and CRLF are ignored") {
  std::string text = "# header\n\n";
  for (int q = 1; q <= 23; ++q) text += "  Q" + std::to_string(q) + ":  f  gt  1.5   # note\r\n";
  const auto t = parse_template(text);
  CHECK(t.at(12).threshold == 1.5);
}

TEST_CASE("evaluate_question") {
  Record r;
  r.set("audience_score", 60.0);
  r.set("wins", 4.0);
  r.set("genre", std::string("Drama"));
  r.set("rating", std::string("n/a"));

  CHECK(evaluate_question(numeric("audience_score", QuestionOp::kGt, 55), r));
  CHECK_FALSE(evaluate_question(numeric("wins", QuestionOp::kGt, 4), r));
  CHECK(evaluate_question(numeric("wins", QuestionOp::kGe, 4), r));
  CHECK(evaluate_question(numeric("wins", QuestionOp::kEq, 4), r));
  CHECK(evaluate_question(numeric("wins", QuestionOp::kLe, 4), r));
  CHECK_FALSE(evaluate_question(numeric("wins", QuestionOp::kLt, 4), r));

  CHECK_FALSE(evaluate_question(numeric("oscars", QuestionOp::kGt, 4), r));
  CHECK(evaluate_question(numeric("oscars", QuestionOp::kGt, 4, true), r));
  // Text where a number is expected counts as missing.
  CHECK_FALSE(evaluate_question(numeric("rating", QuestionOp::kLt, 100), r));
  CHECK(evaluate_question(numeric("rating", QuestionOp::kLt, 100, true), r));

  QuestionSpec in;
  in.field = "genre";
  in.op = QuestionOp::kIn;
  in.members = {"Comedy", "Drama"};
  CHECK(evaluate_question(in, r));
  in.members = {"Comedy"};
  CHECK_FALSE(evaluate_question(in, r));
  in.field = "wins";  // number where text is expected
  CHECK_FALSE(evaluate_question(in, r));

  QuestionSpec present;
  present.field = "genre";
  present.op = QuestionOp::kPresent;
  CHECK(evaluate_question(present, r));
  present.field = "budget";
  CHECK_FALSE(evaluate_question(present, r));
}

TEST_CASE("encode_record bit order") {
  const QuestionTemplate t = parse_template(present_template(23));
  CHECK(encode_record(t, Record{}).value() == 0u);
  CHECK(encode_record(t, presence_record(0x400000)).value() == 0x400000u);
  Record q1_only;
  q1_only.set("f1", 1.0);
  CHECK(encode_record(t, q1_only).value() == 0x400000u);

  // Answers 1,0,1,...,0,0,1 for Q1..Q23.
  std::string answers = "10100000000000000000001";
  Record r;
  for (int q = 1; q <= 23; ++q) {
    if (answers[q - 1] == '1') r.set("f" + std::to_string(q), 1.0);
  }
  CHECK(format_bits(encode_record(t, r)) == answers);
}

TEST_CASE("answer disagreements equal key distance") {
  const QuestionTemplate t = parse_template(present_template(23));
  std::mt19937_64 rng(31);
  for (int i = 0; i < 2000; ++i) {
    const std::uint32_t a = static_cast<std::uint32_t>(rng() & BitVector23::kMask);
    const std::uint32_t b = static_cast<std::uint32_t>(rng() & BitVector23::kMask);
    const BitVector23 ka = encode_record(t, presence_record(a));
    const BitVector23 kb = encode_record(t, presence_record(b));
    CHECK(ka.value() == a);
    int disagreements = 0;
    for (const auto& q : t.questions()) {
      disagreements += evaluate_question(q, presence_record(a)) != evaluate_question(q, presence_record(b));
    }
    CHECK(hamming(ka, kb) == disagreements);
  }
}

TEST_CASE("format_template round-trips canonical templates") {
  std::mt19937_64 rng(32);
  const char* fields[] = {"wins", "genre", "imdb_rating", "box_office"};
  for (int round = 0; round < 50; ++round) {
    std::vector<QuestionSpec> qs;
    for (int p = 23; p >= 1; --p) {
      QuestionSpec q;
      q.position = p;
      q.field = fields[rng() % 4];
      q.op = static_cast<QuestionOp>(rng() % 7);
      q.missing_default = rng() % 2;
      if (is_numeric_op(q.op)) {
        q.threshold = static_cast<double>(static_cast<std::int64_t>(rng() % 20001) - 10000) / 7.0;
      } else if (q.op == QuestionOp::kIn) {
        q.members = {"A", "PG-13"};
        if (rng() % 2) q.members.push_back("x_y");
      }
      qs.push_back(q);
    }
    const QuestionTemplate t(qs);
    const std::string text = format_template(t);
    CHECK(parse_template(text) == t);
    CHECK(format_template(parse_template(text)) == text);
  }
}
