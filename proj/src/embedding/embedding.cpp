#include "tsteval/embedding.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "tsteval/error.hpp"
#include "tsteval/transport.hpp"

namespace tsteval {
namespace {

double norm(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

double euclidean(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return std::sqrt(s);
}

void check_pair(const EmbeddedSentence& a, const EmbeddedSentence& b) {
  if (a.size() == 0 || b.size() == 0) throw DataError("empty embedded sentence");
  if (a.dim() != b.dim())
    throw DataError("embedding dimension mismatch: " + std::to_string(a.dim()) + " vs " + std::to_string(b.dim()));
  if (a.weights.size() != a.size() || b.weights.size() != b.size())
    throw DataError("transport weights length differs from token count");
}

std::vector<double> normalized_idf(const EmbeddedSentence& s) {
  if (!s.idf) throw DataError("IDF weights requested but not supplied");
  double total = 0.0;
  for (double v : *s.idf) total += v;
  if (!(total > 0.0)) throw DataError("all-zero IDF weights");
  std::vector<double> w(*s.idf);
  for (auto& v : w) v /= total;
  return w;
}

}  // namespace

EmbeddedSentence EmbeddedSentence::uniform(Matrix vectors) {
  EmbeddedSentence s;
  const std::size_t n = vectors.rows();
  s.vectors = std::move(vectors);
  s.weights.assign(n, n > 0 ? 1.0 / static_cast<double>(n) : 0.0);
  return s;
}

EmbeddedSentence EmbeddedSentence::from_annotation(const TokenAnnotation& annotation) {
  if (!annotation.embeddings) throw DataError("no token embeddings for " + annotation.ref.instance_id);
  auto s = uniform(*annotation.embeddings);
  s.tokens = annotation.tokens;
  s.idf = annotation.idf;
  s.sentence_vector = annotation.sentence_embedding;
  return s;
}

double sentence_cosine(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size())
    throw DataError("embedding dimension mismatch: " + std::to_string(a.size()) + " vs " + std::to_string(b.size()));
  const double na = norm(a);
  const double nb = norm(b);
  if (na == 0.0 || nb == 0.0) throw DataError("zero vector in cosine");
  double dot = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) dot += a[i] * b[i];
  return std::clamp(dot / (na * nb), -1.0, 1.0);
}

double relaxed_wmd(const EmbeddedSentence& a, const EmbeddedSentence& b) {
  check_pair(a, b);
  Matrix d(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) d(i, j) = euclidean(a.vectors.row(i), b.vectors.row(j));
  double rows = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < b.size(); ++j) best = std::min(best, d(i, j));
    rows += a.weights[i] * best;
  }
  double cols = 0.0;
  for (std::size_t j = 0; j < b.size(); ++j) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < a.size(); ++i) best = std::min(best, d(i, j));
    cols += b.weights[j] * best;
  }
  return std::max(rows, cols);
}

WmdResult wmd(const EmbeddedSentence& a, const EmbeddedSentence& b, std::size_t cell_cap) {
  check_pair(a, b);
  if (a.size() * b.size() > cell_cap) return {relaxed_wmd(a, b), true};
  Matrix d(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) d(i, j) = euclidean(a.vectors.row(i), b.vectors.row(j));
  const auto plan = solve_transport(a.weights, b.weights, d);
  return {std::max(0.0, plan.cost), false};
}

BertScoreResult bert_score(const EmbeddedSentence& candidate, const EmbeddedSentence& reference, bool use_idf) {
  if (candidate.size() == 0 || reference.size() == 0) throw DataError("empty embedded sentence");
  if (candidate.dim() != reference.dim())
    throw DataError("embedding dimension mismatch: " + std::to_string(candidate.dim()) + " vs " +
                    std::to_string(reference.dim()));
  const std::size_t m = candidate.size();
  const std::size_t n = reference.size();
  Matrix sim(m, n);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) sim(i, j) = sentence_cosine(candidate.vectors.row(i), reference.vectors.row(j));

  const auto wc = use_idf ? normalized_idf(candidate) : std::vector<double>(m, 1.0 / static_cast<double>(m));
  const auto wr = use_idf ? normalized_idf(reference) : std::vector<double>(n, 1.0 / static_cast<double>(n));

  BertScoreResult r;
  for (std::size_t j = 0; j < n; ++j) {
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < m; ++i) best = std::max(best, sim(i, j));
    r.recall += wr[j] * best;
  }
  for (std::size_t i = 0; i < m; ++i) {
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < n; ++j) best = std::max(best, sim(i, j));
    r.precision += wc[i] * best;
  }
  const double s = r.precision + r.recall;
  r.f1 = s != 0.0 ? 2.0 * r.precision * r.recall / s : 0.0;
  return r;
}

}  // namespace tsteval
