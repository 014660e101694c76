#include <algorithm>
#include <cctype>
#include <fstream>
#include <regex>
#include <set>
#include <sstream>

#include "tsteval/error.hpp"
#include "tsteval/semantic_graph.hpp"

namespace tsteval {

void SemanticGraph::add_instance(const std::string& var, const std::string& concept_name) {
  if (!concepts_.emplace(var, concept_name).second) throw DataError("duplicate instance for variable '" + var + "'");
  vars_.push_back(var);
  if (top_.empty()) top_ = var;
}

void SemanticGraph::add_attribute(Attribute a) {
  if (std::find(attrs_.begin(), attrs_.end(), a) == attrs_.end()) attrs_.push_back(std::move(a));
}

void SemanticGraph::add_relation(Relation r) {
  if (std::find(rels_.begin(), rels_.end(), r) == rels_.end()) rels_.push_back(std::move(r));
}

void SemanticGraph::set_top(const std::string& var) { top_ = var; }

const std::string& SemanticGraph::concept_of(const std::string& var) const {
  auto it = concepts_.find(var);
  if (it == concepts_.end()) throw DataError("unknown variable '" + var + "'");
  return it->second;
}

void SemanticGraph::validate() const {
  if (vars_.empty()) throw DataError("empty graph");
  if (!has_variable(top_)) throw DataError("top '" + top_ + "' is not a variable");
  for (const auto& a : attrs_)
    if (!has_variable(a.var)) throw DataError("attribute on unknown variable '" + a.var + "'");
  for (const auto& r : rels_)
    if (!has_variable(r.source) || !has_variable(r.target))
      throw DataError("relation '" + r.relation + "' references an unknown variable");
}

bool SemanticGraph::same_triples(const SemanticGraph& o) const {
  if (top_ != o.top_ || concepts_ != o.concepts_) return false;
  std::set<Attribute> a1(attrs_.begin(), attrs_.end()), a2(o.attrs_.begin(), o.attrs_.end());
  std::set<Relation> r1(rels_.begin(), rels_.end()), r2(o.rels_.begin(), o.rels_.end());
  return a1 == a2 && r1 == r2;
}

namespace {

bool is_symbol_char(char c) {
  return !std::isspace(static_cast<unsigned char>(c)) && c != '(' && c != ')' && c != '"' && c != ':' && c != '/';
}

bool inverted_role(std::string_view role) {
  if (role.size() <= 3 || !role.ends_with("-of")) return false;
  return role != "consist-of" && role != "prep-out-of" && role != "prep-on-behalf-of";
}

bool looks_like_variable(const std::string& s) {
  static const std::regex re("^[A-Za-z][A-Za-z]?[0-9]*$");
  return std::regex_match(s, re);
}

struct Target {
  enum Kind { node, symbol, quoted } kind = symbol;
  std::string text;
  std::size_t offset = 0;
};

struct PendingEdge {
  std::string role;
  std::string var;
  Target target;
};

class PenmanParser {
 public:
  explicit PenmanParser(std::string_view text) : s_(text) {}

  SemanticGraph run() {
    skip_ws();
    if (pos_ >= s_.size() || s_[pos_] != '(') fail("expected '('");
    const std::string top = parse_node();
    skip_ws();
    if (pos_ != s_.size()) fail("unexpected trailing text");
    for (auto& e : pending_) resolve(e);
    graph_.set_top(top);
    return std::move(graph_);
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { fail_at(pos_, msg); }
  [[noreturn]] void fail_at(std::size_t at, const std::string& msg) const {
    throw DataError("penman offset " + std::to_string(at) + ": " + msg);
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  std::string read_symbol() {
    const auto start = pos_;
    while (pos_ < s_.size() && is_symbol_char(s_[pos_])) ++pos_;
    if (pos_ == start) fail("expected a symbol");
    return std::string(s_.substr(start, pos_ - start));
  }

  std::string read_quoted() {
    ++pos_;
    std::string out;
    while (pos_ < s_.size() && s_[pos_] != '"') {
      if (s_[pos_] == '\\' && pos_ + 1 < s_.size()) ++pos_;
      out += s_[pos_++];
    }
    if (pos_ >= s_.size()) fail("unterminated string");
    ++pos_;
    return out;
  }

  std::string read_role() {
    ++pos_;  // ':'
    const auto start = pos_;
    while (pos_ < s_.size() && !std::isspace(static_cast<unsigned char>(s_[pos_])) && s_[pos_] != '(' &&
           s_[pos_] != ')' && s_[pos_] != '"')
      ++pos_;
    if (pos_ == start) fail("empty role");
    return std::string(s_.substr(start, pos_ - start));
  }

  // At '('; returns the node's variable.
  std::string parse_node() {
    const auto open = pos_;
    ++pos_;
    skip_ws();
    const auto var_at = pos_;
    const std::string var = read_symbol();
    skip_ws();
    if (pos_ >= s_.size() || s_[pos_] != '/') fail("expected '/' after variable '" + var + "'");
    ++pos_;
    skip_ws();
    if (pos_ >= s_.size()) fail_at(open, "unbalanced parentheses");
    std::string concept_name = s_[pos_] == '"' ? read_quoted() : read_symbol();
    if (graph_.has_variable(var)) fail_at(var_at, "duplicate instance for variable '" + var + "'");
    graph_.add_instance(var, concept_name);
    for (;;) {
      skip_ws();
      if (pos_ >= s_.size()) fail_at(open, "unbalanced parentheses");
      if (s_[pos_] == ')') {
        ++pos_;
        return var;
      }
      if (s_[pos_] != ':') fail("expected role or ')'");
      PendingEdge e;
      e.var = var;
      e.role = read_role();
      skip_ws();
      if (pos_ >= s_.size()) fail_at(open, "unbalanced parentheses");
      e.target.offset = pos_;
      if (s_[pos_] == '(') {
        e.target.kind = Target::node;
        e.target.text = parse_node();
      } else if (s_[pos_] == '"') {
        e.target.kind = Target::quoted;
        e.target.text = read_quoted();
      } else if (s_[pos_] == ')') {
        fail("role ':" + e.role + "' has no target");
      } else {
        e.target.kind = Target::symbol;
        e.target.text = read_symbol();
      }
      pending_.push_back(std::move(e));
    }
  }

  void resolve(const PendingEdge& e) {
    const bool is_var = e.target.kind == Target::node ||
                        (e.target.kind == Target::symbol && graph_.has_variable(e.target.text));
    if (!is_var) {
      if (e.target.kind == Target::symbol && looks_like_variable(e.target.text))
        fail_at(e.target.offset, "undefined variable '" + e.target.text + "'");
      graph_.add_attribute({e.role, e.var, e.target.text});
      return;
    }
    if (inverted_role(e.role))
      graph_.add_relation({e.role.substr(0, e.role.size() - 3), e.target.text, e.var});
    else
      graph_.add_relation({e.role, e.var, e.target.text});
  }

  std::string_view s_;
  std::size_t pos_ = 0;
  SemanticGraph graph_;
  std::vector<PendingEdge> pending_;
};

bool needs_quotes(const std::string& s) {
  if (s.empty()) return true;
  return !std::all_of(s.begin(), s.end(), is_symbol_char);
}

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + '"';
}

class PenmanWriter {
 public:
  // Sorted copies make the text a function of the triple set alone.
  explicit PenmanWriter(const SemanticGraph& g)
      : g_(g), attrs_(g.attributes()), rels_(g.relations()), used_(g.relations().size(), 0) {
    std::sort(attrs_.begin(), attrs_.end());
    std::sort(rels_.begin(), rels_.end());
  }

  std::string run() {
    g_.validate();
    write_node(g_.top(), 0);
    if (introduced_.size() != g_.variables().size())
      throw DataError("graph has variables unreachable from top '" + g_.top() + "'");
    return out_.str();
  }

 private:
  void check_name(const std::string& s, const char* what) {
    if (needs_quotes(s)) throw DataError(std::string(what) + " '" + s + "' cannot be written as a PENMAN symbol");
  }

  std::string constant(const std::string& v) const {
    // Bare symbols that would read back as variables or fail the variable
    // check are quoted.
    if (needs_quotes(v) || g_.has_variable(v) || looks_like_variable(v)) return quote(v);
    return v;
  }

  void write_node(const std::string& var, int depth) {
    check_name(var, "variable");
    introduced_.insert(var);
    const auto& c = g_.concept_of(var);
    out_ << '(' << var << " / " << (needs_quotes(c) ? quote(c) : c);
    for (const auto& a : attrs_) {
      if (a.var != var) continue;
      check_name(a.relation, "role");
      out_ << " :" << a.relation << ' ' << constant(a.value);
    }
    for (std::size_t i = 0; i < rels_.size(); ++i) {
      if (used_[i]) continue;
      const auto& r = rels_[i];
      std::string other;
      std::string role;
      if (r.source == var) {
        other = r.target;
        role = r.relation;
        // A stored relation ending in -of would be inverted on re-read.
        if (inverted_role(role)) throw DataError("role '" + role + "' cannot be written as a forward edge");
      } else if (r.target == var) {
        other = r.source;
        role = r.relation + "-of";
      } else {
        continue;
      }
      check_name(r.relation, "role");
      used_[i] = 1;
      out_ << "\n" << std::string(static_cast<std::size_t>(depth + 1) * 4, ' ') << ':' << role << ' ';
      if (introduced_.count(other))
        out_ << other;
      else
        write_node(other, depth + 1);
    }
    out_ << ')';
  }

  const SemanticGraph& g_;
  std::vector<Attribute> attrs_;
  std::vector<Relation> rels_;
  std::vector<char> used_;
  std::set<std::string> introduced_;
  std::ostringstream out_;
};

}  // namespace

SemanticGraph parse_penman(std::string_view text) { return PenmanParser(text).run(); }

std::string serialize_penman(const SemanticGraph& graph) { return PenmanWriter(graph).run(); }

std::map<SentenceRef, SemanticGraph> load_penman_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path);
  std::map<SentenceRef, SemanticGraph> out;
  for (auto& b : read_keyed_blocks(in, "penman")) {
    std::string expr;
    std::istringstream body(b.body);
    std::string line;
    while (std::getline(body, line))
      if (line.empty() || line[0] != '#') expr += line + "\n";
    SentenceRef ref{b.instance_id, b.slot};
    if (out.count(ref))
      throw DataError("penman: duplicate block for (" + b.instance_id + ", " + std::string(to_string(b.slot)) + ")");
    try {
      out.emplace(ref, parse_penman(expr));
    } catch (const DataError& e) {
      throw DataError("penman block at line " + std::to_string(b.first_line) + ": " + e.what());
    }
  }
  return out;
}

}  // namespace tsteval
