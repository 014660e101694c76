#include "tsteval/style.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <spdlog/spdlog.h>

#include "tsteval/error.hpp"

namespace tsteval {
namespace {

void check_pair(Probs p, Probs q) {
  if (p.size() != q.size())
    throw DataError("distribution size mismatch: " + std::to_string(p.size()) + " vs " + std::to_string(q.size()));
  if (p.empty()) throw DataError("empty distribution");
}

void check_pair(const StyleDistribution& p, const StyleDistribution& q) {
  check_pair(p.probs, q.probs);
  if (p.class_labels != q.class_labels) throw DataError("distributions disagree on class labels");
}

void check_target(Probs q, std::size_t target) {
  if (target >= q.size())
    throw DataError("target class " + std::to_string(target) + " out of range for " + std::to_string(q.size()) +
                    " classes");
}

}  // namespace

int sentence_accuracy(Probs q, std::size_t target) {
  check_target(q, target);
  std::size_t best = 0;
  bool tie = false;
  for (std::size_t i = 1; i < q.size(); ++i) {
    if (q[i] > q[best]) {
      best = i;
      tie = false;
    } else if (q[i] == q[best]) {
      tie = true;
    }
  }
  if (tie) spdlog::debug("sentence_accuracy: tied argmax, choosing class {}", best);
  return best == target ? 1 : 0;
}

int sentence_accuracy(const StyleDistribution& q, std::size_t target) { return sentence_accuracy(q.probs, target); }

double classifier_confidence(Probs q, std::size_t target) {
  check_target(q, target);
  return q[target];
}

double classifier_confidence(const StyleDistribution& q, std::size_t target) {
  return classifier_confidence(q.probs, target);
}

double emd(Probs p, Probs q) {
  check_pair(p, q);
  double cp = 0.0;
  double cq = 0.0;
  double total = 0.0;
  for (std::size_t k = 0; k + 1 < p.size(); ++k) {
    cp += p[k];
    cq += q[k];
    total += std::abs(cp - cq);
  }
  return total;
}

double emd(const StyleDistribution& p, const StyleDistribution& q) {
  check_pair(p, q);
  return emd(p.probs, q.probs);
}

double kl_divergence(Probs p, Probs q, double eps) {
  check_pair(p, q);
  double sp = 0.0;
  double sq = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    sp += p[i] + eps;
    sq += q[i] + eps;
  }
  double kl = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double pi = (p[i] + eps) / sp;
    const double qi = (q[i] + eps) / sq;
    kl += pi * std::log(pi / qi);
  }
  // Rounding can leave a tiny negative residue near p == q.
  return kl < 0.0 ? 0.0 : kl;
}

double kl_divergence(const StyleDistribution& p, const StyleDistribution& q, double eps) {
  check_pair(p, q);
  return kl_divergence(p.probs, q.probs, eps);
}

double js_divergence(Probs p, Probs q) {
  check_pair(p, q);
  double js = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double m = 0.5 * (p[i] + q[i]);
    const double a = p[i] > 0.0 ? 0.5 * p[i] * std::log(p[i] / m) : 0.0;
    const double b = q[i] > 0.0 ? 0.5 * q[i] * std::log(q[i] / m) : 0.0;
    js += a + b;  // one commutative add per class keeps js(p, q) == js(q, p)
  }
  return std::clamp(js, 0.0, std::numbers::ln2);
}

double js_divergence(const StyleDistribution& p, const StyleDistribution& q) {
  check_pair(p, q);
  return js_divergence(p.probs, q.probs);
}

double js_divergence_normalized(Probs p, Probs q) { return js_divergence(p, q) / std::numbers::ln2; }

double dist_cosine(Probs p, Probs q) {
  check_pair(p, q);
  double dot = 0.0;
  double np = 0.0;
  double nq = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    dot += p[i] * q[i];
    np += p[i] * p[i];
    nq += q[i] * q[i];
  }
  if (np == 0.0 || nq == 0.0) throw DataError("zero vector in distribution cosine");
  return dot / (std::sqrt(np) * std::sqrt(nq));
}

double dist_cosine(const StyleDistribution& p, const StyleDistribution& q) {
  check_pair(p, q);
  return dist_cosine(p.probs, q.probs);
}

}  // namespace tsteval
