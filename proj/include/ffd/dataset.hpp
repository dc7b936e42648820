#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "ffd/fuzzy_index.hpp"
#include "ffd/question_template.hpp"
#include "ffd/record.hpp"

namespace ffd {

struct Dataset {
  std::vector<std::string> header;
  std::vector<Record> rows;

  // One value per row; Missing where a row lacks the field.
  std::vector<Value> column(const std::string& name) const;
  bool has_field(const std::string& name) const;
};

// Header row required, RFC-4180 quoting, LF or CRLF. Cells that parse fully
// as a finite decimal number become numbers, empty cells missing, anything
// else text. Throws CsvError naming the row and column.
Dataset ingest_csv(std::istream& in);
Dataset ingest_csv_file(const std::string& path);

void write_csv(const Dataset& data, std::ostream& out);
std::string csv_escape(const std::string& cell);

// Vectors TSV: `<record_id>\t<23 bits>` per line; record_id is the row index.
std::vector<IndexEntry> encode_dataset(const QuestionTemplate& t, const Dataset& data);
void write_vectors(const std::vector<IndexEntry>& entries, std::ostream& out);
// Throws FormatError naming the line.
std::vector<IndexEntry> read_vectors(std::istream& in);
std::vector<IndexEntry> read_vectors_file(const std::string& path);

// ---- synthetic movie data -----------------------------------------------

struct PlantedRule {
  QuestionSpec question;
  double effect = 1.0;  // P(outcome = 1 | question answers yes)
};

struct SynthSpec {
  std::uint64_t seed = 42;
  std::size_t rows = 10000;
  std::vector<PlantedRule> planted_rules;
  std::size_t duplicate_pairs = 0;
};

struct SynthResult {
  Dataset data;
  // Row indices of planted near-duplicates (original, twin).
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
};

inline constexpr const char* kSynthOutcomeField = "oscar";

// `wins gt 4` with effect 1.0.
PlantedRule default_planted_rule();
// Parses "<field> <op> <operand>[:<effect>]". Throws TemplateError.
PlantedRule parse_planted_rule(const std::string& text);

// Deterministic for a fixed spec. Throws ContractError when rows is too small
// to hold the requested pairs.
SynthResult synthesize_movies(const SynthSpec& spec);

}  // namespace ffd
