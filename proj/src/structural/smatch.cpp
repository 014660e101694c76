#include <array>
#include <algorithm>
#include <map>
#include <set>

#include "tsteval/error.hpp"
#include "tsteval/rng.hpp"
#include "tsteval/semantic_graph.hpp"

namespace tsteval {
namespace {

// Index form of a pair of graphs. node_gain[i][j] counts the instance,
// attribute and TOP triples matched when g1 variable i maps to g2 variable
// j; relation triples are scored by looking up mapped endpoints in rel2.
class Problem {
 public:
  Problem(const SemanticGraph& g1, const SemanticGraph& g2) {
    g1.validate();
    g2.validate();
    n1_ = static_cast<int>(g1.variables().size());
    n2_ = static_cast<int>(g2.variables().size());
    std::map<std::string, int> idx1;
    std::map<std::string, int> idx2;
    for (int i = 0; i < n1_; ++i) idx1[g1.variables()[i]] = i;
    for (int j = 0; j < n2_; ++j) idx2[g2.variables()[j]] = j;

    node_gain_.assign(static_cast<std::size_t>(n1_ * n2_), 0);
    std::map<std::pair<std::string, std::string>, std::vector<int>> attr2;
    for (const auto& a : g2.attributes()) attr2[{a.relation, a.value}].push_back(idx2.at(a.var));
    const int top1 = idx1.at(g1.top());
    const int top2 = idx2.at(g2.top());
    for (int i = 0; i < n1_; ++i) {
      const auto& c1 = g1.concept_of(g1.variables()[i]);
      for (int j = 0; j < n2_; ++j) {
        int g = c1 == g2.concept_of(g2.variables()[j]) ? 1 : 0;
        // TOP is an attribute whose value is the top node's concept.
        if (i == top1 && j == top2 && g == 1) ++g;
        gain(i, j) = g;
      }
    }
    for (const auto& a : g1.attributes()) {
      auto it = attr2.find({a.relation, a.value});
      if (it == attr2.end()) continue;
      const int i = idx1.at(a.var);
      for (int j : it->second) ++gain(i, j);
    }

    std::map<std::string, int> rel_id;
    auto rid = [&](const std::string& r) { return rel_id.emplace(r, static_cast<int>(rel_id.size())).first->second; };
    for (const auto& r : g2.relations()) rel2_.insert({rid(r.relation), idx2.at(r.source), idx2.at(r.target)});
    incident_.assign(static_cast<std::size_t>(n1_), {});
    for (const auto& r : g1.relations()) {
      auto it = rel_id.find(r.relation);
      if (it == rel_id.end()) continue;  // can never match
      const int id = static_cast<int>(rel1_.size());
      rel1_.push_back({it->second, idx1.at(r.source), idx1.at(r.target)});
      incident_[static_cast<std::size_t>(rel1_.back()[1])].push_back(id);
      if (rel1_.back()[2] != rel1_.back()[1]) incident_[static_cast<std::size_t>(rel1_.back()[2])].push_back(id);
    }

    // j is a candidate for i when some triple of i could match under i -> j.
    std::set<std::pair<int, int>> cand;
    for (int i = 0; i < n1_; ++i)
      for (int j = 0; j < n2_; ++j)
        if (gain(i, j) > 0) cand.insert({i, j});
    for (const auto& r1 : rel1_)
      for (const auto& r2 : rel2_) {
        if (r1[0] != r2[0]) continue;
        if ((r1[1] == r1[2]) != (r2[1] == r2[2])) continue;
        cand.insert({r1[1], r2[1]});
        cand.insert({r1[2], r2[2]});
      }
    candidates_.assign(static_cast<std::size_t>(n1_), {});
    for (const auto& [i, j] : cand) candidates_[static_cast<std::size_t>(i)].push_back(j);
  }

  int n1() const { return n1_; }
  int n2() const { return n2_; }
  const std::vector<int>& candidates(int i) const { return candidates_[static_cast<std::size_t>(i)]; }
  int gain(int i, int j) const { return node_gain_[static_cast<std::size_t>(i * n2_ + j)]; }

  bool rel_matched(int r, const std::vector<int>& m) const {
    const auto& t = rel1_[static_cast<std::size_t>(r)];
    const int a = m[static_cast<std::size_t>(t[1])];
    const int b = m[static_cast<std::size_t>(t[2])];
    return a >= 0 && b >= 0 && rel2_.count({t[0], a, b}) != 0;
  }

  int score(const std::vector<int>& m) const {
    int s = 0;
    for (int i = 0; i < n1_; ++i)
      if (m[static_cast<std::size_t>(i)] >= 0) s += gain(i, m[static_cast<std::size_t>(i)]);
    for (std::size_t r = 0; r < rel1_.size(); ++r)
      if (rel_matched(static_cast<int>(r), m)) ++s;
    return s;
  }

  // Contribution of the triples touching variables i (and k if >= 0).
  int local(const std::vector<int>& m, int i, int k) const {
    int s = 0;
    auto node = [&](int v) {
      const int j = m[static_cast<std::size_t>(v)];
      return j >= 0 ? gain(v, j) : 0;
    };
    s += node(i);
    if (k >= 0) s += node(k);
    for (int r : incident_[static_cast<std::size_t>(i)])
      if (rel_matched(r, m)) ++s;
    if (k >= 0)
      for (int r : incident_[static_cast<std::size_t>(k)]) {
        const auto& t = rel1_[static_cast<std::size_t>(r)];
        if (t[1] == i || t[2] == i) continue;  // already counted
        if (rel_matched(r, m)) ++s;
      }
    return s;
  }

 private:
  int& gain(int i, int j) { return node_gain_[static_cast<std::size_t>(i * n2_ + j)]; }

  int n1_ = 0;
  int n2_ = 0;
  std::vector<int> node_gain_;
  std::vector<std::array<int, 3>> rel1_;
  std::set<std::array<int, 3>> rel2_;
  std::vector<std::vector<int>> incident_;
  std::vector<std::vector<int>> candidates_;
};

// Steepest ascent over reassign (i -> free j or unmapped) and swap moves.
// Ties keep the first move in the fixed enumeration order.
int hill_climb(const Problem& p, std::vector<int>& m) {
  const int n1 = p.n1();
  const int n2 = p.n2();
  int current = p.score(m);
  std::vector<int> owner(static_cast<std::size_t>(n2), -1);
  for (int i = 0; i < n1; ++i)
    if (m[static_cast<std::size_t>(i)] >= 0) owner[static_cast<std::size_t>(m[static_cast<std::size_t>(i)])] = i;
  for (;;) {
    int best_delta = 0;
    int kind = 0, bi = -1, bj = -1;
    for (int i = 0; i < n1; ++i) {
      const int old = m[static_cast<std::size_t>(i)];
      const int before = p.local(m, i, -1);
      for (int j = -1; j < n2; ++j) {
        if (j == old || (j >= 0 && owner[static_cast<std::size_t>(j)] >= 0)) continue;
        m[static_cast<std::size_t>(i)] = j;
        const int d = p.local(m, i, -1) - before;
        m[static_cast<std::size_t>(i)] = old;
        if (d > best_delta) {
          best_delta = d;
          kind = 1;
          bi = i;
          bj = j;
        }
      }
    }
    for (int i = 0; i < n1; ++i) {
      for (int k = i + 1; k < n1; ++k) {
        auto& a = m[static_cast<std::size_t>(i)];
        auto& b = m[static_cast<std::size_t>(k)];
        if (a == b) continue;  // both unmapped
        const int before = p.local(m, i, k);
        std::swap(a, b);
        const int d = p.local(m, i, k) - before;
        std::swap(a, b);
        if (d > best_delta) {
          best_delta = d;
          kind = 2;
          bi = i;
          bj = k;
        }
      }
    }
    if (kind == 0) return current;
    if (kind == 1) {
      auto& slot = m[static_cast<std::size_t>(bi)];
      if (slot >= 0) owner[static_cast<std::size_t>(slot)] = -1;
      slot = bj;
      if (bj >= 0) owner[static_cast<std::size_t>(bj)] = bi;
    } else {
      auto& a = m[static_cast<std::size_t>(bi)];
      auto& b = m[static_cast<std::size_t>(bj)];
      std::swap(a, b);
      if (a >= 0) owner[static_cast<std::size_t>(a)] = bi;
      if (b >= 0) owner[static_cast<std::size_t>(b)] = bj;
    }
    current += best_delta;
  }
}

std::vector<int> smart_start(const Problem& p) {
  std::vector<int> m(static_cast<std::size_t>(p.n1()), -1);
  std::vector<char> used(static_cast<std::size_t>(p.n2()), 0);
  for (int i = 0; i < p.n1(); ++i) {
    int best = -1;
    for (int j = 0; j < p.n2(); ++j)
      if (!used[static_cast<std::size_t>(j)] && p.gain(i, j) > 0 && (best < 0 || p.gain(i, j) > p.gain(i, best)))
        best = j;
    if (best >= 0) {
      m[static_cast<std::size_t>(i)] = best;
      used[static_cast<std::size_t>(best)] = 1;
    }
  }
  for (int i = 0; i < p.n1(); ++i) {
    if (m[static_cast<std::size_t>(i)] >= 0) continue;
    for (int j : p.candidates(i))
      if (!used[static_cast<std::size_t>(j)]) {
        m[static_cast<std::size_t>(i)] = j;
        used[static_cast<std::size_t>(j)] = 1;
        break;
      }
  }
  return m;
}

// Each variable in shuffled order takes a random free candidate, leaving it
// unmapped when none is left.
std::vector<int> random_start(const Problem& p, Rng& rng) {
  std::vector<int> order(static_cast<std::size_t>(p.n1()));
  for (int i = 0; i < p.n1(); ++i) order[static_cast<std::size_t>(i)] = i;
  shuffle_range(order.begin(), order.end(), rng);
  std::vector<int> m(static_cast<std::size_t>(p.n1()), -1);
  std::vector<char> used(static_cast<std::size_t>(p.n2()), 0);
  std::vector<int> free;
  for (int i : order) {
    free.clear();
    for (int j : p.candidates(i))
      if (!used[static_cast<std::size_t>(j)]) free.push_back(j);
    if (free.empty()) continue;
    const int j = free[uniform_index(rng, free.size())];
    m[static_cast<std::size_t>(i)] = j;
    used[static_cast<std::size_t>(j)] = 1;
  }
  return m;
}

}  // namespace

int smatch_alignment_score(const SemanticGraph& g1, const SemanticGraph& g2, const std::vector<int>& mapping) {
  Problem p(g1, g2);
  if (static_cast<int>(mapping.size()) != p.n1()) throw Error("mapping size mismatch");
  std::set<int> seen;
  for (int j : mapping) {
    if (j < -1 || j >= p.n2()) throw Error("mapping target out of range");
    if (j >= 0 && !seen.insert(j).second) throw Error("mapping is not injective");
  }
  return p.score(mapping);
}

SmatchResult smatch(const SemanticGraph& g1, const SemanticGraph& g2, int restarts, std::uint64_t seed) {
  if (g1.empty() || g2.empty()) throw DataError("smatch on an empty graph");
  if (restarts < 1) throw ConfigError("smatch restarts must be >= 1");
  const Problem p(g1, g2);
  int best = -1;
  for (int r = 0; r < restarts; ++r) {
    std::vector<int> m;
    if (r == 0) {
      m = smart_start(p);
    } else {
      Rng rng(mix_seed(seed, static_cast<std::uint64_t>(r)));
      m = random_start(p, rng);
    }
    best = std::max(best, hill_climb(p, m));
  }
  SmatchResult res;
  res.matched = best;
  res.precision = static_cast<double>(best) / static_cast<double>(g1.triple_count());
  res.recall = static_cast<double>(best) / static_cast<double>(g2.triple_count());
  res.f1 = res.precision + res.recall > 0 ? 2 * res.precision * res.recall / (res.precision + res.recall) : 0.0;
  return res;
}

}  // namespace tsteval
