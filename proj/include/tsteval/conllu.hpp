#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "tsteval/types.hpp"

namespace tsteval {

struct DependencyNode {
  int index = 0;  // 1-based
  std::string form;
  std::string lemma;
  std::string upos;
  std::string deprel;
  int head = 0;   // 0 for the root
  bool operator==(const DependencyNode&) const = default;
};

/// Ordered labeled dependency tree; nodes[i].index == i + 1.
class DependencyTree {
 public:
  DependencyTree() = default;
  /// Validates contiguous ids, a single root and acyclic heads; throws DataError.
  explicit DependencyTree(std::vector<DependencyNode> nodes);

  const std::vector<DependencyNode>& nodes() const { return nodes_; }
  std::size_t size() const { return nodes_.size(); }
  int root() const { return root_; }
  const DependencyNode& node(int index) const { return nodes_[static_cast<std::size_t>(index - 1)]; }
  /// Dependents of `index` (0 = virtual root) in token order.
  std::vector<int> children(int index) const;

  bool operator==(const DependencyTree& o) const { return nodes_ == o.nodes_; }

 private:
  std::vector<DependencyNode> nodes_;
  int root_ = 0;
};

/// Parses one CoNLL-U sentence block. Comment lines, multiword-token ranges
/// (1-2) and empty nodes (1.1) are skipped. `first_line` offsets the line
/// numbers reported in errors.
DependencyTree parse_conllu(std::string_view text, std::size_t first_line = 1);

std::string write_conllu(const DependencyTree& tree);

struct KeyedBlock {
  std::string instance_id;
  Slot slot = Slot::source;
  std::string body;
  std::size_t first_line = 1;
};

/// Splits a file into blank-line separated blocks keyed by
/// "# instance_id = ..." and "# slot = ..." comments.
std::vector<KeyedBlock> read_keyed_blocks(std::istream& in, std::string_view file_label);

std::map<SentenceRef, DependencyTree> load_conllu_file(const std::string& path);

}  // namespace tsteval
