#include <gtest/gtest.h>

#include <sstream>

#include "oracles.hpp"
#include "trials.hpp"
#include "tsteval/corpus.hpp"

namespace tsteval {
namespace {

using testing::for_trials;

const char* kWords[] = {"the", "movie", "was", "awful", "great", "खाना", "बहुत", "ভালো", "\"quoted\"", "tab\there",
                        "a\\b", "ünï", "।", "."};

std::string random_text(Rng& rng) {
  std::string s;
  const std::size_t n = 1 + uniform_index(rng, 8);
  for (std::size_t i = 0; i < n; ++i) {
    if (i) s += ' ';
    s += kWords[uniform_index(rng, std::size(kWords))];
  }
  return s;
}

Dataset random_dataset(Rng& rng) {
  std::map<Dimension, RatingScale> scales = {{Dimension::style_accuracy, {1, 5}},
                                             {Dimension::content_preservation, {0, 1}},
                                             {Dimension::fluency, {1, 7}}};
  const char* langs[] = {"en", "hi", "bn", "de"};
  const char* tasks[] = {"sentiment_transfer", "detoxification"};
  std::vector<EvaluationInstance> v;
  const std::size_t n = 1 + uniform_index(rng, 12);
  for (std::size_t i = 0; i < n; ++i) {
    EvaluationInstance e;
    e.instance_id = "id-" + std::to_string(uniform_index(rng, 1000)) + "-" + std::to_string(i);
    e.language = Language::parse(langs[uniform_index(rng, 4)]);
    e.task = Task::parse(tasks[uniform_index(rng, 2)]);
    e.direction = uniform_index(rng, 2) ? "neg→pos" : "pos→neg";
    e.system_id = "sys" + std::to_string(uniform_index(rng, 3));
    e.source_text = random_text(rng);
    e.generated_text = random_text(rng);
    if (uniform_index(rng, 3)) e.reference_text = random_text(rng);
    e.target_style_label = static_cast<int>(uniform_index(rng, 2));
    for (const auto& [d, sc] : scales)
      if (uniform_index(rng, 4)) e.human_ratings[d] = uniform_real(rng, sc.min, sc.max);
    v.push_back(std::move(e));
  }
  return Dataset(scales, std::move(v));
}

TEST(CorpusProps, DatasetRoundTrip) {
  for_trials(101, [](Rng& rng, int) {
    const Dataset d = random_dataset(rng);
    std::stringstream a;
    write_dataset(a, d);
    const Dataset back = parse_dataset(a);
    EXPECT_TRUE(back == d);
    std::stringstream b;
    write_dataset(b, back);
    EXPECT_EQ(a.str(), b.str());
  });
}

TEST(CorpusProps, LoadingIsDeterministicAndOrderPreserving) {
  for_trials(102, [](Rng& rng, int) {
    const Dataset d = random_dataset(rng);
    std::stringstream s;
    write_dataset(s, d);
    std::istringstream in1(s.str());
    std::istringstream in2(s.str());
    const Dataset a = parse_dataset(in1);
    const Dataset b = parse_dataset(in2);
    EXPECT_TRUE(a == b);
    ASSERT_EQ(a.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) EXPECT_EQ(a.instances()[i].instance_id, d.instances()[i].instance_id);
  });
}

TEST(CorpusProps, SideArtifactRoundTrip) {
  for_trials(103, [](Rng& rng, int) {
    const Slot slots[] = {Slot::source, Slot::generated, Slot::reference, Slot::generated_masked};
    std::vector<StyleDistribution> dists;
    std::vector<TokenAnnotation> toks;
    std::vector<ExternalScore> ext;
    const std::size_t n = 1 + uniform_index(rng, 5);
    const std::size_t k = 2 + uniform_index(rng, 3);
    const std::size_t dim = 1 + uniform_index(rng, 4);
    for (std::size_t i = 0; i < n; ++i) {
      const SentenceRef ref{"i" + std::to_string(i), slots[uniform_index(rng, 4)]};
      StyleDistribution sd{ref, {}, oracle::random_distribution(rng, k)};
      for (std::size_t c = 0; c < k; ++c) sd.class_labels.push_back("c" + std::to_string(c));
      dists.push_back(sd);

      TokenAnnotation ta;
      ta.ref = ref;
      ta.tokens = oracle::random_tokens(rng, 1 + uniform_index(rng, 5), 6);
      if (uniform_index(rng, 2)) {
        Matrix m(ta.tokens.size(), dim);
        for (std::size_t r = 0; r < m.rows(); ++r)
          for (std::size_t c = 0; c < dim; ++c) m(r, c) = uniform_real(rng, -3, 3);
        ta.embeddings = m;
      }
      if (uniform_index(rng, 2)) {
        std::vector<double> s(dim);
        for (auto& x : s) x = uniform_real(rng, -1, 1);
        ta.sentence_embedding = s;
      }
      if (uniform_index(rng, 2)) {
        std::vector<double> idf(ta.tokens.size());
        for (auto& x : idf) x = uniform_real(rng, 0.1, 4);
        ta.idf = idf;
      }
      if (uniform_index(rng, 2)) {
        std::vector<bool> f(ta.tokens.size());
        for (std::size_t j = 0; j < f.size(); ++j) f[j] = uniform_index(rng, 2) != 0;
        ta.mask_flags = f;
      }
      toks.push_back(ta);
      ext.push_back({ref.instance_id, "bleurt", uniform_real(rng, -2, 2)});
    }

    std::stringstream s1, s2, s3;
    write_style_dists(s1, dists);
    write_tokens(s2, toks);
    write_external_scores(s3, ext);
    const auto d2 = parse_style_dists(s1);
    const auto t2 = parse_tokens(s2);
    const auto e2 = parse_external_scores(s3);
    ASSERT_EQ(d2.size(), dists.size());
    ASSERT_EQ(t2.size(), toks.size());
    ASSERT_EQ(e2.size(), ext.size());
    for (std::size_t i = 0; i < n; ++i) {
      EXPECT_EQ(d2[i].ref, dists[i].ref);
      EXPECT_EQ(d2[i].class_labels, dists[i].class_labels);
      EXPECT_EQ(d2[i].probs, dists[i].probs);
      EXPECT_EQ(t2[i].ref, toks[i].ref);
      EXPECT_EQ(t2[i].tokens, toks[i].tokens);
      EXPECT_EQ(t2[i].embeddings, toks[i].embeddings);
      EXPECT_EQ(t2[i].sentence_embedding, toks[i].sentence_embedding);
      EXPECT_EQ(t2[i].idf, toks[i].idf);
      EXPECT_EQ(t2[i].mask_flags, toks[i].mask_flags);
      EXPECT_EQ(e2[i].instance_id, ext[i].instance_id);
      EXPECT_EQ(e2[i].metric_id, ext[i].metric_id);
      EXPECT_EQ(e2[i].value, ext[i].value);
    }
  });
}

}  // namespace
}  // namespace tsteval
