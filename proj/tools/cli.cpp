#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <memory>
#include <ostream>
#include <sstream>

#include "ffd/dataset.hpp"
#include "ffd/discovery.hpp"
#include "ffd/errors.hpp"
#include "ffd/fuzzy_index.hpp"
#include "ffd/golay.hpp"
#include "ffd/question_template.hpp"

namespace ffd::cli {
namespace {

// Writes to `path`, or to `fallback` when path is empty or "-".
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) {
    if (path.empty() || path == "-") {
      stream_ = &fallback;
      return;
    }
    file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
    if (!*file_) throw FormatError("cannot open '" + path + "' for writing");
    stream_ = file_.get();
  }
  std::ostream& operator*() { return *stream_; }
  void close() {
    stream_->flush();
    if (!*stream_) throw FormatError("write failed");
  }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_ = nullptr;
};

struct Options {
  std::string info, word;
  std::string csv, out, outcome, template_path, vectors, index, key;
  std::vector<std::string> exclude;
  std::size_t k = kQuestionCount;
  std::size_t cap = 12;
  bool glm = false;
  int tree_depth = -1;
  long long record = -1;
  int radius = 2;
  std::string x, y, group, qq, out_scatter, out_qq;
  std::uint64_t seed = 42;
  std::size_t rows = 10000;
  std::size_t duplicate_pairs = 5;
  std::vector<std::string> rules;
  std::string pairs_out;
};

void cmd_golay_encode(const Options& o, std::ostream& out) {
  const InfoWord12 info = parse_info_word(o.info);
  const BitVector23 c = encode(info);
  out << format_bits(c) << '\t' << format_hex(c) << '\n';
}

void cmd_golay_decode(const Options& o, std::ostream& out) {
  const BitVector23 w = parse_bitvector(o.word);
  const Decoded d = decode(w);
  out << "codeword\t" << format_bits(d.codeword) << '\t' << format_hex(d.codeword) << '\n'
      << "error\t" << format_bits(d.error) << '\t' << d.error.weight() << '\n'
      << "info\t" << format_hex(info_part(d.codeword)) << '\n'
      << "syndrome\t" << syndrome(w).value() << '\n';
}

void cmd_derive(const Options& o, std::ostream& out) {
  const Dataset data = ingest_csv_file(o.csv);
  RankOptions ro;
  ro.k = o.k;
  ro.text_cardinality_cap = o.cap;
  ro.exclude = o.exclude;
  const RankedTemplate ranked = rank_questions(data, o.outcome, ro);

  Sink sink(o.out, out);
  *sink << "# derived from " << data.rows.size() << " rows, outcome " << o.outcome << ", padding "
        << ranked.padding << '\n'
        << format_template(ranked.questions);
  sink.close();
  out << format_ranking(ranked);

  const Bits outcome = binarize_outcome(data.column(o.outcome));
  if (o.glm) {
    std::vector<BitColumn> cols;
    const std::size_t chosen = kQuestionCount - ranked.padding;
    for (int p = 1; p <= static_cast<int>(chosen); ++p) {
      const QuestionSpec& q = ranked.questions.at(p);
      BitColumn c{"Q" + std::to_string(p) + " " + describe(q), {}};
      for (const Record& r : data.rows) c.values.push_back(evaluate_question(q, r));
      cols.push_back(std::move(c));
    }
    const auto dependent = collinear_features(cols);
    for (auto it = dependent.rbegin(); it != dependent.rend(); ++it) {
      out << "# GLM skips collinear " << cols[*it].name << '\n';
      cols.erase(cols.begin() + static_cast<std::ptrdiff_t>(*it));
    }
    out << "\nlogistic GLM on the selected questions\n"
        << format_glm_report(logistic_glm(cols, outcome));
  }
  if (o.tree_depth >= 0) {
    std::vector<NamedColumn> cols;
    for (const auto& name : data.header) {
      if (name == o.outcome ||
          std::find(o.exclude.begin(), o.exclude.end(), name) != o.exclude.end()) {
        continue;
      }
      NamedColumn c{name, {}};
      bool numeric = false;
      for (const Value& v : data.column(name)) {
        c.values.push_back(as_number(v));
        numeric |= c.values.back().has_value();
      }
      if (numeric) cols.push_back(std::move(c));
    }
    out << "\ndecision tree (depth <= " << o.tree_depth << ")\n"
        << build_tree(cols, outcome, o.tree_depth).render();
  }
}

void cmd_encode(const Options& o, std::ostream& out) {
  const Dataset data = ingest_csv_file(o.csv);
  const QuestionTemplate t = load_template_file(o.template_path);
  Sink sink(o.out, out);
  write_vectors(encode_dataset(t, data), *sink);
  sink.close();
}

void cmd_index_build(const Options& o, std::ostream& out) {
  FuzzyIndex index;
  for (const IndexEntry& e : read_vectors_file(o.vectors)) index.insert(e.record_id, e.key);
  index.freeze();
  Sink sink(o.out, out);
  index.save(*sink);
  sink.close();
  if (!o.out.empty() && o.out != "-") {
    out << "indexed " << index.size() << " records, " << index.posting_count()
        << " postings\n";
  }
}

void cmd_index_query(const Options& o, std::ostream& out) {
  const FuzzyIndex index = FuzzyIndex::load_file(o.index);
  BitVector23 probe;
  if (!o.key.empty()) {
    probe = parse_bitvector(o.key);
  } else {
    probe = index.key_of(static_cast<std::uint64_t>(o.record));
  }
  auto matches = index.query(probe, o.radius);
  std::stable_sort(matches.begin(), matches.end(), [](const Match& a, const Match& b) {
    return a.distance < b.distance;
  });
  for (const Match& m : matches) {
    out << m.record_id << '\t' << m.distance << '\t' << format_bits(index.key_of(m.record_id))
        << '\n';
  }
}

void cmd_cluster(const Options& o, std::ostream& out) {
  const auto entries = read_vectors_file(o.vectors);
  const auto assignments = cluster_all(entries);
  std::map<std::uint32_t, std::size_t> sizes;
  Sink sink(o.out, out);
  for (const ClusterAssignment& a : assignments) {
    *sink << a.record_id << '\t' << format_hex(a.cluster) << '\n';
    ++sizes[a.cluster.value()];
  }
  sink.close();
  std::map<std::size_t, std::size_t> histogram;
  for (const auto& [cluster, size] : sizes) ++histogram[size];
  out << "# " << assignments.size() << " records in " << sizes.size() << " clusters\n"
      << "# cluster_size\tclusters\n";
  for (const auto& [size, count] : histogram) out << "# " << size << '\t' << count << '\n';
}

std::vector<double> numbers_only(const std::vector<Value>& column) {
  std::vector<double> out;
  for (const Value& v : column) {
    if (const auto d = as_number(v)) out.push_back(*d);
  }
  return out;
}

void cmd_stats(const Options& o, std::ostream& out) {
  const Dataset data = ingest_csv_file(o.csv);
  for (const std::string* f : {&o.x, &o.y, &o.group, &o.qq}) {
    if (!f->empty() && !data.has_field(*f)) throw UnknownField("no field '" + *f + "'");
  }
  if (!o.x.empty() && !o.y.empty()) {
    const auto xs = data.column(o.x);
    const auto ys = data.column(o.y);
    std::optional<std::vector<Value>> gs;
    if (!o.group.empty()) gs = data.column(o.group);
    ScatterTable table = gs ? scatter_export(xs, ys, std::span<const Value>(*gs))
                            : scatter_export(xs, ys);
    table.x_name = o.x;
    table.y_name = o.y;
    if (gs) table.group_name = o.group;
    Sink sink(o.out_scatter, out);
    *sink << scatter_csv(table);
    sink.close();

    std::vector<double> fx, fy;
    for (const ScatterRow& r : table.rows) {
      fx.push_back(r.x);
      fy.push_back(r.y);
    }
    const LinearFit fit = linear_fit(fx, fy);
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "# fit %s = %.6g * %s + %.6g, r = %.6f, n = %zu, dropped = %zu\n",
                  o.y.c_str(), fit.slope, o.x.c_str(), fit.intercept, fit.pearson_r,
                  table.rows.size(), table.dropped);
    out << buf;
  }
  if (!o.qq.empty()) {
    Sink sink(o.out_qq, out);
    *sink << qq_csv(qq_points(numbers_only(data.column(o.qq))));
    sink.close();
  }
}

void cmd_synth(const Options& o, std::ostream& out) {
  SynthSpec spec;
  spec.seed = o.seed;
  spec.rows = o.rows;
  spec.duplicate_pairs = o.duplicate_pairs;
  if (o.rules.empty()) {
    spec.planted_rules.push_back(default_planted_rule());
  } else {
    for (const auto& r : o.rules) spec.planted_rules.push_back(parse_planted_rule(r));
  }
  const SynthResult result = synthesize_movies(spec);
  Sink sink(o.out, out);
  write_csv(result.data, *sink);
  sink.close();
  if (!o.pairs_out.empty()) {
    Sink pairs(o.pairs_out, out);
    for (const auto& [a, b] : result.pairs) *pairs << a << '\t' << b << '\n';
    pairs.close();
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"ffd: 23-bit metafeature templates and Golay FuzzyFind indexing"};
  app.require_subcommand(1);
  Options o;
  std::function<void()> action;

  auto* golay = app.add_subcommand("golay", "Golay [23,12,7] codec primitives");
  golay->require_subcommand(1);
  auto* genc = golay->add_subcommand("encode", "encode a 12-bit information word");
  genc->add_option("info", o.info, "0x-prefixed hex or decimal")->required();
  genc->callback([&] { action = [&] { cmd_golay_encode(o, out); }; });
  auto* gdec = golay->add_subcommand("decode", "decode a 23-bit word");
  gdec->add_option("word", o.word, "23-char bit string or 0x hex")->required();
  gdec->callback([&] { action = [&] { cmd_golay_decode(o, out); }; });

  auto* derive = app.add_subcommand("derive", "rank candidate questions into a template");
  derive->add_option("--csv", o.csv)->required();
  derive->add_option("--outcome", o.outcome, "binary outcome field")->required();
  derive->add_option("--out", o.out, "template file (default stdout)");
  derive->add_option("--exclude", o.exclude, "fields never used as questions")->delimiter(',');
  derive->add_option("--k", o.k, "number of ranked questions")->check(CLI::Range(1, kQuestionCount));
  derive->add_option("--text-cap", o.cap, "max distinct values of a text field");
  derive->add_flag("--glm", o.glm, "fit a logistic GLM on the selected questions");
  derive->add_option("--tree", o.tree_depth, "grow a decision tree of this depth")
      ->check(CLI::Range(0, kMaxTreeDepth));
  derive->callback([&] { action = [&] { cmd_derive(o, out); }; });

  auto* enc = app.add_subcommand("encode", "binarize CSV rows into 23-bit vectors");
  enc->add_option("--csv", o.csv)->required();
  enc->add_option("--template", o.template_path)->required();
  enc->add_option("--out", o.out, "vectors TSV (default stdout)");
  enc->callback([&] { action = [&] { cmd_encode(o, out); }; });

  auto* index = app.add_subcommand("index", "FuzzyFind index");
  index->require_subcommand(1);
  auto* build = index->add_subcommand("build", "build an index file from vectors");
  build->add_option("--vectors", o.vectors)->required();
  build->add_option("--out", o.out, "index file (default stdout)");
  build->callback([&] { action = [&] { cmd_index_build(o, out); }; });
  auto* query = index->add_subcommand("query", "records within a radius of a key");
  query->add_option("--index", o.index)->required();
  auto* key_opt = query->add_option("--key", o.key, "23-char bit string or 0x hex");
  auto* rec_opt = query->add_option("--record", o.record, "probe with a stored record's key");
  key_opt->excludes(rec_opt);
  query->add_option("--radius", o.radius, "0, 1 or 2");
  query->callback([&] {
    if (o.key.empty() && o.record < 0) throw CLI::ValidationError("--key or --record is required");
    action = [&] { cmd_index_query(o, out); };
  });

  auto* cluster = app.add_subcommand("cluster", "assign vectors to Golay clusters");
  cluster->add_option("--vectors", o.vectors)->required();
  cluster->add_option("--out", o.out, "assignments TSV (default stdout)");
  cluster->callback([&] { action = [&] { cmd_cluster(o, out); }; });

  auto* stats = app.add_subcommand("stats", "scatter, Q-Q and regression data");
  stats->add_option("--csv", o.csv)->required();
  stats->add_option("--x", o.x);
  stats->add_option("--y", o.y);
  stats->add_option("--group", o.group);
  stats->add_option("--qq", o.qq, "field for Q-Q data");
  stats->add_option("--out-scatter", o.out_scatter);
  stats->add_option("--out-qq", o.out_qq);
  stats->callback([&] {
    if (o.x.empty() != o.y.empty()) throw CLI::ValidationError("--x and --y go together");
    if (o.x.empty() && o.qq.empty()) throw CLI::ValidationError("nothing to do");
    action = [&] { cmd_stats(o, out); };
  });

  auto* synth = app.add_subcommand("synth", "generate a synthetic movie dataset");
  synth->add_option("--seed", o.seed);
  synth->add_option("--rows", o.rows);
  synth->add_option("--duplicate-pairs", o.duplicate_pairs);
  synth->add_option("--rule", o.rules, "planted rule '<field> <op> <operand>[:effect]'");
  synth->add_option("--out", o.out, "CSV file (default stdout)");
  synth->add_option("--pairs-out", o.pairs_out, "planted near-duplicate row pairs");
  synth->callback([&] { action = [&] { cmd_synth(o, out); }; });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    action();
    return kOk;
  } catch (const Error& e) {
    err << "ffd: " << e.what() << '\n';
    switch (e.family()) {
      case ErrorFamily::kFormat: return kFormat;
      case ErrorFamily::kContract: return kContract;
      case ErrorFamily::kInternal: return kInternal;
    }
  } catch (const std::exception& e) {
    err << "ffd: internal error: " << e.what() << '\n';
  }
  return kInternal;
}

}  // namespace ffd::cli
