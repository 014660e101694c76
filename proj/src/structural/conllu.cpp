#include "tsteval/conllu.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <sstream>

#include "tsteval/error.hpp"
#include "tsteval/text.hpp"

namespace tsteval {
namespace {

bool parse_int(std::string_view s, int& out) {
  auto res = std::from_chars(s.data(), s.data() + s.size(), out);
  return res.ec == std::errc() && res.ptr == s.data() + s.size();
}

[[noreturn]] void fail_line(std::size_t line, const std::string& msg) {
  throw DataError("conllu line " + std::to_string(line) + ": " + msg);
}

}  // namespace

DependencyTree::DependencyTree(std::vector<DependencyNode> nodes) : nodes_(std::move(nodes)) {
  if (nodes_.empty()) throw DataError("empty dependency tree");
  const int n = static_cast<int>(nodes_.size());
  for (int i = 0; i < n; ++i) {
    const auto& nd = nodes_[static_cast<std::size_t>(i)];
    if (nd.index != i + 1) throw DataError("non-contiguous token ids at id " + std::to_string(nd.index));
    if (nd.head < 0 || nd.head > n) throw DataError("head " + std::to_string(nd.head) + " of token " +
                                                    std::to_string(nd.index) + " does not exist");
    if (nd.head == nd.index) throw DataError("token " + std::to_string(nd.index) + " is its own head");
    if (nd.head == 0) {
      if (root_ != 0) throw DataError("multiple roots");
      root_ = nd.index;
    }
  }
  if (root_ == 0) throw DataError("no root");
  for (int i = 1; i <= n; ++i) {
    int steps = 0;
    for (int v = i; v != 0; v = node(v).head)
      if (++steps > n) throw DataError("cycle through token " + std::to_string(i));
  }
}

std::vector<int> DependencyTree::children(int index) const {
  std::vector<int> out;
  for (const auto& nd : nodes_)
    if (nd.head == index) out.push_back(nd.index);
  return out;
}

DependencyTree parse_conllu(std::string_view text, std::size_t first_line) {
  std::vector<DependencyNode> nodes;
  std::vector<std::size_t> line_of;
  std::size_t line_no = first_line - 1;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string line(text.substr(pos, end - pos));
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty() || line[0] == '#') {
      if (end == text.size()) break;
      continue;
    }
    auto cols = split(line, '\t');
    if (cols.size() != 10) fail_line(line_no, "expected 10 tab-separated columns, got " + std::to_string(cols.size()));
    if (cols[0].find('-') != std::string::npos || cols[0].find('.') != std::string::npos) continue;
    DependencyNode nd;
    if (!parse_int(cols[0], nd.index)) fail_line(line_no, "bad token id '" + cols[0] + "'");
    if (!parse_int(cols[6], nd.head)) fail_line(line_no, "bad head '" + cols[6] + "'");
    nd.form = cols[1];
    nd.lemma = cols[2] == "_" ? "" : cols[2];
    nd.upos = cols[3];
    nd.deprel = cols[7];
    if (nd.index != static_cast<int>(nodes.size()) + 1)
      fail_line(line_no, "non-contiguous token id " + cols[0]);
    nodes.push_back(std::move(nd));
    line_of.push_back(line_no);
    if (end == text.size()) break;
  }
  if (nodes.empty()) throw DataError("conllu block at line " + std::to_string(first_line) + " has no tokens");

  const int n = static_cast<int>(nodes.size());
  int root_seen = 0;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const auto& nd = nodes[i];
    if (nd.head < 0 || nd.head > n)
      fail_line(line_of[i], "head " + std::to_string(nd.head) + " points to a nonexistent token");
    if (nd.head == 0 && root_seen++ > 0) fail_line(line_of[i], "multiple roots");
  }
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    int steps = 0;
    for (int v = nodes[i].index; v != 0; v = nodes[static_cast<std::size_t>(v - 1)].head)
      if (++steps > n) fail_line(line_of[i], "cycle through token " + std::to_string(nodes[i].index));
  }
  if (root_seen == 0) throw DataError("conllu block at line " + std::to_string(first_line) + ": no root");
  return DependencyTree(std::move(nodes));
}

std::string write_conllu(const DependencyTree& tree) {
  std::ostringstream out;
  for (const auto& nd : tree.nodes())
    out << nd.index << '\t' << nd.form << '\t' << (nd.lemma.empty() ? "_" : nd.lemma) << '\t' << nd.upos
        << "\t_\t_\t" << nd.head << '\t' << nd.deprel << "\t_\t_\n";
  return out.str();
}

std::vector<KeyedBlock> read_keyed_blocks(std::istream& in, std::string_view file_label) {
  std::vector<KeyedBlock> blocks;
  KeyedBlock cur;
  bool has_id = false;
  bool has_slot = false;
  bool has_body = false;
  std::size_t line_no = 0;
  auto finish = [&] {
    if (!has_body && !has_id && !has_slot) return;
    if (!has_id || !has_slot)
      throw DataError(std::string(file_label) + " block at line " + std::to_string(cur.first_line) +
                      " lacks '# instance_id =' or '# slot =' keys");
    if (!has_body)
      throw DataError(std::string(file_label) + " block at line " + std::to_string(cur.first_line) + " is empty");
    blocks.push_back(std::move(cur));
    cur = KeyedBlock{};
    has_id = has_slot = has_body = false;
  };
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) {
      finish();
      continue;
    }
    if (!has_id && !has_slot && !has_body) cur.first_line = line_no;
    if (line[0] == '#') {
      auto eq = line.find('=');
      if (eq != std::string::npos) {
        const auto key = trim(std::string_view(line).substr(1, eq - 1));
        const auto value = trim(std::string_view(line).substr(eq + 1));
        try {
          if (key == "instance_id") {
            cur.instance_id = value;
            has_id = true;
          } else if (key == "slot") {
            cur.slot = parse_slot(value);
            has_slot = true;
          }
        } catch (const DataError& e) {
          throw DataError(std::string(file_label) + " line " + std::to_string(line_no) + ": " + e.what());
        }
      }
      cur.body += line;
      cur.body += '\n';
      continue;
    }
    cur.body += line;
    cur.body += '\n';
    has_body = true;
  }
  finish();
  return blocks;
}

std::map<SentenceRef, DependencyTree> load_conllu_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path);
  std::map<SentenceRef, DependencyTree> out;
  for (auto& b : read_keyed_blocks(in, "conllu")) {
    SentenceRef ref{b.instance_id, b.slot};
    if (out.count(ref)) throw DataError("conllu: duplicate block for (" + b.instance_id + ", " +
                                        std::string(to_string(b.slot)) + ")");
    out.emplace(ref, parse_conllu(b.body, b.first_line));
  }
  return out;
}

}  // namespace tsteval
