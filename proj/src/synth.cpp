// Seeded generator for movie-like records. Stands in for a real movie
// extract: a latent "quality" drives ratings, scores and award counts, and
// the binary outcome `oscar` is set by planted rules.
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>

#include "ffd/dataset.hpp"
#include "ffd/errors.hpp"

namespace ffd {
namespace {

// Distribution transforms are written out so the output depends only on the
// mt19937_64 sequence, which the standard pins down exactly.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform() {  // [0, 1)
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(uniform() * n); }
  double normal() {
    const double u1 = 1.0 - uniform();  // (0, 1]
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }
  int poisson(double mean) {
    const double limit = std::exp(-mean);
    int k = 0;
    double prod = uniform();
    while (prod > limit) {
      ++k;
      prod *= uniform();
    }
    return k;
  }

 private:
  std::mt19937_64 engine_;
};

// `per_unit` steps per unit; dividing last keeps results like 7.6 exact.
double round_to(double v, double per_unit) { return std::round(v * per_unit) / per_unit; }

constexpr std::array<const char*, 8> kGenres{"Drama",       "Comedy",    "Action", "Adventure",
                                             "Documentary", "Animation", "Horror", "Thriller"};
constexpr std::array<const char*, 5> kRatings{"G", "PG", "PG-13", "R", "NC-17"};

const std::vector<std::string> kHeader{
    "title",         "year",        "genre", "mpaa_rating", "imdb_rating",
    "critics_score", "audience_score", "nominations", "wins", "box_office",
    "num_oscars",    "francis_fisher", "david_o_russell", kSynthOutcomeField};

struct Movie {
  std::string title;
  double year, imdb_rating, critics_score, audience_score, nominations, wins;
  std::optional<double> box_office;
  std::string genre, mpaa_rating;
  double francis_fisher, david_o_russell;
  double num_oscars = 0, oscar = 0;

  Record to_record() const {
    Record r;
    r.set("title", title);
    r.set("year", year);
    r.set("genre", genre);
    r.set("mpaa_rating", mpaa_rating);
    r.set("imdb_rating", imdb_rating);
    r.set("critics_score", critics_score);
    r.set("audience_score", audience_score);
    r.set("nominations", nominations);
    r.set("wins", wins);
    r.set("box_office", box_office ? Value{*box_office} : Value{Missing{}});
    r.set("num_oscars", num_oscars);
    r.set("francis_fisher", francis_fisher);
    r.set("david_o_russell", david_o_russell);
    r.set(kSynthOutcomeField, oscar);
    return r;
  }
};

Movie draw_movie(Rng& rng, std::size_t index) {
  Movie m;
  char title[32];
  std::snprintf(title, sizeof title, "Movie %06zu", index);
  m.title = title;
  const double quality = rng.normal();
  m.year = 1970 + static_cast<double>(rng.below(46));
  m.genre = kGenres[rng.below(kGenres.size())];
  m.mpaa_rating = kRatings[rng.below(kRatings.size())];
  m.imdb_rating = std::clamp(round_to(7.3 + 0.65 * quality + 0.3 * rng.normal(), 10.0), 1.0, 10.0);
  m.critics_score = std::clamp(std::round(62 + 20 * quality + 8 * rng.normal()), 0.0, 100.0);
  m.audience_score = std::clamp(std::round(65 + 15 * quality + 8 * rng.normal()), 0.0, 100.0);
  m.wins = rng.poisson(std::exp(0.9 * quality + 0.6));
  m.nominations = m.wins + rng.poisson(std::exp(0.5 * quality + 1.5));
  const double box = round_to(std::exp(3.5 + 0.3 * quality + 0.8 * rng.normal()), 10.0);
  if (rng.uniform() >= 0.1) m.box_office = box;
  m.francis_fisher = rng.uniform() < 0.002 ? 1 : 0;
  m.david_o_russell = rng.uniform() < 0.002 ? 1 : 0;
  return m;
}

}  // namespace

PlantedRule default_planted_rule() {
  PlantedRule rule;
  rule.question.field = "wins";
  rule.question.op = QuestionOp::kGt;
  rule.question.threshold = 4;
  rule.effect = 1.0;
  return rule;
}

PlantedRule parse_planted_rule(const std::string& text) {
  std::string body = text;
  PlantedRule rule;
  if (const auto colon = text.rfind(':'); colon != std::string::npos) {
    body = text.substr(0, colon);
    const std::string effect = text.substr(colon + 1);
    try {
      std::size_t used = 0;
      rule.effect = std::stod(effect, &used);
      if (used != effect.size()) throw std::invalid_argument(effect);
    } catch (const std::exception&) {
      throw TemplateError("bad rule effect '" + effect + "'");
    }
    if (!(rule.effect >= 0.0 && rule.effect <= 1.0)) {
      throw TemplateError("rule effect must lie in [0, 1]");
    }
  }
  // Reuse the template grammar for the predicate.
  std::string tmpl;
  for (int q = 1; q <= kQuestionCount; ++q) {
    tmpl += "Q" + std::to_string(q) + ": " + (q == 1 ? body : std::string("x present")) + "\n";
  }
  try {
    rule.question = parse_template(tmpl).at(1);
  } catch (const TemplateError& e) {
    throw TemplateError("bad rule '" + text + "': " + e.what());
  }
  return rule;
}

SynthResult synthesize_movies(const SynthSpec& spec) {
  if (spec.rows < 2 * spec.duplicate_pairs) {
    throw ContractError("rows (" + std::to_string(spec.rows) + ") too small for " +
                        std::to_string(spec.duplicate_pairs) + " duplicate pairs");
  }
  Rng rng(spec.seed);
  const std::size_t originals = spec.rows - spec.duplicate_pairs;
  std::vector<Movie> movies;
  movies.reserve(spec.rows);
  for (std::size_t i = 0; i < originals; ++i) movies.push_back(draw_movie(rng, i));

  for (Movie& m : movies) {
    const Record r = m.to_record();
    bool fired = false;
    if (spec.planted_rules.empty()) {
      fired = rng.uniform() < 1.0 / (1.0 + std::exp(-(2.0 * (m.imdb_rating - 7.3) - 1.5)));
    }
    for (const PlantedRule& rule : spec.planted_rules) {
      // Draw unconditionally so the stream does not depend on earlier rules.
      const double u = rng.uniform();
      if (evaluate_question(rule.question, r) && u < rule.effect) fired = true;
    }
    m.oscar = fired ? 1 : 0;
    m.num_oscars = fired ? 1 + rng.poisson(0.6) : 0;
  }

  // Near-duplicates: copies whose critics and audience scores move by a few
  // points. Each score feeds at most one question of any template with one
  // cut per numeric field, and the shipped template's cuts on each score are
  // further apart than the nudge, so a pair differs on at most 2 answers.
  SynthResult result;
  std::vector<std::size_t> order(originals);
  for (std::size_t i = 0; i < originals; ++i) order[i] = i;
  for (std::size_t k = 0; k < spec.duplicate_pairs; ++k) {
    const std::size_t pick = k + rng.below(originals - k);
    std::swap(order[k], order[pick]);
    const std::size_t base = order[k];
    Movie twin = movies[base];
    twin.title += " (Director's Cut)";
    const double dc = (rng.uniform() < 0.5 ? -1.0 : 1.0) * static_cast<double>(1 + rng.below(3));
    const double da = (rng.uniform() < 0.5 ? -1.0 : 1.0) * static_cast<double>(1 + rng.below(2));
    twin.critics_score = std::clamp(twin.critics_score + dc, 0.0, 100.0);
    twin.audience_score = std::clamp(twin.audience_score + da, 0.0, 100.0);
    result.pairs.emplace_back(base, movies.size());
    movies.push_back(std::move(twin));
  }

  result.data.header = kHeader;
  result.data.rows.reserve(movies.size());
  for (const Movie& m : movies) result.data.rows.push_back(m.to_record());

  const QuestionTemplate& shipped = default_movie_template();
  for (const auto& [a, b] : result.pairs) {
    const int d = hamming(encode_record(shipped, result.data.rows[a]),
                          encode_record(shipped, result.data.rows[b]));
    if (d > 2) throw InvariantBreach("planted pair differs on " + std::to_string(d) + " questions");
  }
  return result;
}

}  // namespace ffd
