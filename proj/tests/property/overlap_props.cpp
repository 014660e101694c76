#include <gtest/gtest.h>

#include "oracles.hpp"
#include "trials.hpp"
#include "tsteval/overlap.hpp"

namespace tsteval {
namespace {

using testing::for_trials;

Tokens tokens(Rng& rng, std::size_t min_len = 1) {
  return oracle::random_tokens(rng, min_len + uniform_index(rng, 10), 6);
}

TEST(OverlapProps, ScoresWithinBounds) {
  for_trials(201, [](Rng& rng, int) {
    const auto c = tokens(rng);
    const auto r = tokens(rng);
    for (double v : {bleu(c, r), rouge_2(c, r), rouge_l(c, r), meteor(c, r), pinc(r, c)}) {
      EXPECT_GE(v, 0.0);
      EXPECT_LE(v, 1.0);
    }
    EXPECT_GE(ter(c, r), 0.0);
    EXPECT_GE(ter(c, r, false), 0.0);
  });
}

TEST(OverlapProps, IdentityCases) {
  for_trials(202, [](Rng& rng, int) {
    const auto x = tokens(rng);
    EXPECT_DOUBLE_EQ(bleu(x, x), 1.0);
    if (x.size() >= 2) EXPECT_DOUBLE_EQ(rouge_2(x, x), 1.0);
    EXPECT_DOUBLE_EQ(rouge_l(x, x), 1.0);
    EXPECT_EQ(ter(x, x), 0.0);
    EXPECT_EQ(pinc(x, x), 0.0);
  });
}

TEST(OverlapProps, RougeLSymmetric) {
  for_trials(203, [](Rng& rng, int) {
    const auto a = tokens(rng);
    const auto b = tokens(rng);
    EXPECT_EQ(rouge_l(a, b), rouge_l(b, a));
  });
}

TEST(OverlapProps, ShiftsNeverIncreaseEdits) {
  for_trials(204, [](Rng& rng, int) {
    const auto c = tokens(rng);
    const auto r = tokens(rng);
    const auto with = ter_detailed(c, r, {true, 10});
    const auto without = ter_detailed(c, r, {false, 10});
    EXPECT_LE(with.edits, without.edits);
    EXPECT_EQ(without.shifts, 0);
  });
}

TEST(OverlapProps, MaskPreservesLengthAndIsIdempotent) {
  const StyleLexicon lex = {"w0", "w3"};
  for_trials(205, [&](Rng& rng, int) {
    const auto x = tokens(rng);
    std::optional<std::vector<bool>> flags;
    if (uniform_index(rng, 2)) {
      flags.emplace(x.size());
      for (std::size_t i = 0; i < x.size(); ++i) (*flags)[i] = uniform_index(rng, 4) == 0;
    }
    const auto once = mask_tokens(x, lex, flags);
    EXPECT_EQ(once.size(), x.size());
    EXPECT_EQ(mask_tokens(once, lex, flags), once);
  });
}

TEST(OverlapProps, MaskedBleuIsCompositional) {
  const StyleLexicon lex = {"w1", "w4"};
  for_trials(206, [&](Rng& rng, int) {
    const auto c = tokens(rng);
    const auto r = tokens(rng);
    EXPECT_EQ(masked_bleu(c, r, lex), bleu(mask_tokens(c, lex), mask_tokens(r, lex)));
  });
}

}  // namespace
}  // namespace tsteval
