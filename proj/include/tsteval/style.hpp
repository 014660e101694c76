#pragma once

#include <cstddef>
#include <span>

#include "tsteval/types.hpp"

namespace tsteval {

using Probs = std::span<const double>;

/// 1 when argmax(q) == target, ties resolved toward the lowest class index.
int sentence_accuracy(Probs q, std::size_t target);
int sentence_accuracy(const StyleDistribution& q, std::size_t target);

/// Probability mass the classifier puts on the target class.
double classifier_confidence(Probs q, std::size_t target);
double classifier_confidence(const StyleDistribution& q, std::size_t target);

/// 1-D earth mover's distance over ordered classes with ground distance |i-j|,
/// via the cumulative-distribution closed form.
double emd(Probs p, Probs q);
double emd(const StyleDistribution& p, const StyleDistribution& q);

inline constexpr double kKlEpsilon = 1e-10;

/// KL(p || q) in nats after eps-smoothing and renormalising both vectors.
double kl_divergence(Probs p, Probs q, double eps = kKlEpsilon);
double kl_divergence(const StyleDistribution& p, const StyleDistribution& q, double eps = kKlEpsilon);

/// Jensen-Shannon divergence in nats, bounded by ln 2.
double js_divergence(Probs p, Probs q);
double js_divergence(const StyleDistribution& p, const StyleDistribution& q);
/// js_divergence / ln 2, in [0, 1].
double js_divergence_normalized(Probs p, Probs q);

double dist_cosine(Probs p, Probs q);
double dist_cosine(const StyleDistribution& p, const StyleDistribution& q);

enum class KlDirection { source_to_generated, generated_to_source };

}  // namespace tsteval
