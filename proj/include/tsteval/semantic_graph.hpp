#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "tsteval/conllu.hpp"
#include "tsteval/types.hpp"

namespace tsteval {

struct Attribute {
  std::string relation;
  std::string var;
  std::string value;  // unquoted constant
  auto operator<=>(const Attribute&) const = default;
};

struct Relation {
  std::string relation;
  std::string source;
  std::string target;
  auto operator<=>(const Relation&) const = default;
};

/// Rooted triple graph. Variables keep their order of introduction; the
/// triple lists hold no duplicates.
class SemanticGraph {
 public:
  /// Adds `var` with its concept; throws DataError if already defined.
  void add_instance(const std::string& var, const std::string& concept_name);
  void add_attribute(Attribute a);
  void add_relation(Relation r);
  void set_top(const std::string& var);

  const std::vector<std::string>& variables() const { return vars_; }
  const std::string& concept_of(const std::string& var) const;
  bool has_variable(const std::string& var) const { return concepts_.count(var) != 0; }
  const std::vector<Attribute>& attributes() const { return attrs_; }
  const std::vector<Relation>& relations() const { return rels_; }
  const std::string& top() const { return top_; }
  bool empty() const { return vars_.empty(); }

  /// Triples counted by smatch: instances, attributes, relations and TOP.
  std::size_t triple_count() const { return vars_.size() + attrs_.size() + rels_.size() + (vars_.empty() ? 0 : 1); }

  /// Throws DataError if top or a relation endpoint is not a variable.
  void validate() const;

  /// Order-independent comparison of the triple sets and top.
  bool same_triples(const SemanticGraph& other) const;

 private:
  std::vector<std::string> vars_;
  std::map<std::string, std::string> concepts_;
  std::vector<Attribute> attrs_;
  std::vector<Relation> rels_;
  std::string top_;
};

/// Parses one PENMAN expression. Roles ending in "-of" are inverted except
/// consist-of, prep-out-of and prep-on-behalf-of. Errors carry the
/// character offset.
SemanticGraph parse_penman(std::string_view text);

/// Writes the graph as one PENMAN expression rooted at top. Every variable
/// must be reachable from top through relations in either direction.
std::string serialize_penman(const SemanticGraph& graph);

std::map<SentenceRef, SemanticGraph> load_penman_file(const std::string& path);

/// One variable v<index> per retained token, concept = lowercased lemma
/// (form when the lemma is empty), relation (deprel, head, dependent).
/// Dropped tokens' dependents attach to the nearest retained ancestor.
SemanticGraph dep_to_amr_style(const DependencyTree& tree, bool drop_punct = true);

struct SmatchResult {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  int matched = 0;
};

SmatchResult smatch(const SemanticGraph& g1, const SemanticGraph& g2, int restarts, std::uint64_t seed);

/// Matched-triple count of a given alignment (g1 variable index -> g2
/// variable index or -1). Exposed for testing.
int smatch_alignment_score(const SemanticGraph& g1, const SemanticGraph& g2, const std::vector<int>& mapping);

enum class TedLabel { deprel_upos, lemma };

TedLabel parse_ted_label(std::string_view s);

struct TedResult {
  int raw = 0;
  double normalized = 0.0;
};

/// Zhang-Shasha ordered tree edit distance with unit costs.
TedResult ted(const DependencyTree& t1, const DependencyTree& t2, TedLabel label = TedLabel::deprel_upos);

/// Labels in post-order with leftmost-leaf indices.
struct OrderedTree {
  std::vector<std::string> labels;
  std::vector<int> leftmost;
};

OrderedTree ordered_tree(const DependencyTree& t, TedLabel label);
int zhang_shasha(const OrderedTree& a, const OrderedTree& b);

}  // namespace tsteval
