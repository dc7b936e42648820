#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <iterator>
#include <ostream>
#include <unordered_set>

#include "ffd/dataset.hpp"
#include "ffd/errors.hpp"

namespace ffd {

std::vector<Value> Dataset::column(const std::string& name) const {
  std::vector<Value> out;
  out.reserve(rows.size());
  for (const Record& r : rows) out.push_back(r.get(name));
  return out;
}

bool Dataset::has_field(const std::string& name) const {
  return std::find(header.begin(), header.end(), name) != header.end();
}

namespace {

Value classify_cell(const std::string& cell) {
  if (cell.empty()) return Missing{};
  double d = 0.0;
  const char* last = cell.data() + cell.size();
  // from_chars is locale-independent and rejects leading whitespace.
  auto [ptr, ec] = std::from_chars(cell.data(), last, d, std::chars_format::general);
  if (ec == std::errc() && ptr == last && std::isfinite(d)) return d;
  return cell;
}

// Splits the whole input into rows of cells. `row` in errors is the data-row
// index (-1 for the header).
std::vector<std::vector<std::string>> tokenize(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string cell;
  bool quoted = false;      // inside a quoted cell
  bool was_quoted = false;  // current cell started with a quote
  std::size_t i = 0;
  auto here = [&] { return static_cast<long>(rows.size()) - 1; };
  auto end_row = [&] {
    row.push_back(std::move(cell));
    cell.clear();
    was_quoted = false;
    rows.push_back(std::move(row));
    row.clear();
  };
  while (i < text.size()) {
    const char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          cell.push_back('"');
          i += 2;
          continue;
        }
        quoted = false;
        ++i;
        if (i < text.size() && text[i] != ',' && text[i] != '\n' && text[i] != '\r') {
          throw CsvError(here(), static_cast<long>(row.size()),
                         "unexpected character after closing quote");
        }
        continue;
      }
      cell.push_back(c);
      ++i;
      continue;
    }
    switch (c) {
      case '"':
        if (!cell.empty() || was_quoted) {
          throw CsvError(here(), static_cast<long>(row.size()), "quote inside unquoted cell");
        }
        quoted = true;
        was_quoted = true;
        ++i;
        break;
      case ',':
        row.push_back(std::move(cell));
        cell.clear();
        was_quoted = false;
        ++i;
        break;
      case '\r':
        if (i + 1 < text.size() && text[i + 1] == '\n') {
          ++i;
          break;
        }
        throw CsvError(here(), static_cast<long>(row.size()), "bare carriage return");
      case '\n':
        end_row();
        ++i;
        break;
      default:
        cell.push_back(c);
        ++i;
    }
  }
  if (quoted) throw CsvError(here(), static_cast<long>(row.size()), "unterminated quoted cell");
  if (!cell.empty() || was_quoted || !row.empty()) end_row();
  return rows;
}

}  // namespace

Dataset ingest_csv(std::istream& in) {
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (text.size() >= 3 && text.compare(0, 3, "\xEF\xBB\xBF") == 0) text.erase(0, 3);
  auto rows = tokenize(text);
  // A lone empty line is not a record.
  rows.erase(std::remove_if(rows.begin(), rows.end(),
                            [](const auto& r) { return r.size() == 1 && r[0].empty(); }),
             rows.end());
  if (rows.empty()) throw CsvError(-1, 0, "missing header row");

  Dataset data;
  data.header = std::move(rows[0]);
  std::unordered_set<std::string> names;
  for (std::size_t c = 0; c < data.header.size(); ++c) {
    if (data.header[c].empty()) throw CsvError(-1, static_cast<long>(c), "empty field name");
    if (!names.insert(data.header[c]).second) {
      throw CsvError(-1, static_cast<long>(c), "duplicate field name '" + data.header[c] + "'");
    }
  }
  data.rows.reserve(rows.size() - 1);
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& cells = rows[r];
    if (cells.size() != data.header.size()) {
      throw CsvError(static_cast<long>(r - 1), static_cast<long>(std::min(cells.size(), data.header.size())),
                     "ragged row: " + std::to_string(cells.size()) + " cells, header has " +
                         std::to_string(data.header.size()));
    }
    Record rec;
    for (std::size_t c = 0; c < cells.size(); ++c) rec.set(data.header[c], classify_cell(cells[c]));
    data.rows.push_back(std::move(rec));
  }
  return data;
}

Dataset ingest_csv_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open '" + path + "'");
  return ingest_csv(in);
}

std::string csv_escape(const std::string& cell) {
  if (cell.find_first_of(",\"\r\n") == std::string::npos) return cell;
  std::string out = "\"";
  for (char c : cell) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

void write_csv(const Dataset& data, std::ostream& out) {
  for (std::size_t c = 0; c < data.header.size(); ++c) {
    if (c) out << ',';
    out << csv_escape(data.header[c]);
  }
  out << '\n';
  for (const Record& r : data.rows) {
    for (std::size_t c = 0; c < data.header.size(); ++c) {
      if (c) out << ',';
      const Value& v = r.get(data.header[c]);
      if (const auto d = as_number(v)) {
        out << format_number(*d);
      } else if (const auto* t = as_text(v)) {
        out << csv_escape(*t);
      }
    }
    out << '\n';
  }
}

// ---- vectors TSV ----------------------------------------------------------

std::vector<IndexEntry> encode_dataset(const QuestionTemplate& t, const Dataset& data) {
  std::vector<IndexEntry> out;
  out.reserve(data.rows.size());
  for (std::size_t i = 0; i < data.rows.size(); ++i) {
    out.push_back({static_cast<std::uint64_t>(i), encode_record(t, data.rows[i])});
  }
  return out;
}

void write_vectors(const std::vector<IndexEntry>& entries, std::ostream& out) {
  for (const IndexEntry& e : entries) out << e.record_id << '\t' << format_bits(e.key) << '\n';
}

std::vector<IndexEntry> read_vectors(std::istream& in) {
  std::vector<IndexEntry> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos) throw FormatError(line_no, "expected '<record_id><TAB><23 bits>'");
    IndexEntry e;
    const char* last = line.data() + tab;
    auto [ptr, ec] = std::from_chars(line.data(), last, e.record_id);
    if (tab == 0 || ec != std::errc() || ptr != last) {
      throw FormatError(line_no, "bad record id '" + line.substr(0, tab) + "'");
    }
    try {
      e.key = parse_bits(std::string_view(line).substr(tab + 1));
    } catch (const FormatError& err) {
      throw FormatError(line_no, err.what());
    }
    out.push_back(e);
  }
  return out;
}

std::vector<IndexEntry> read_vectors_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open '" + path + "'");
  return read_vectors(in);
}

}  // namespace ffd
