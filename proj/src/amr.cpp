#include "amrst/amr.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "amrst/errors.hpp"

namespace amrst {

namespace {

bool is_variable_id(const std::string& s) {
  if (s.empty() || !std::islower(static_cast<unsigned char>(s[0]))) return false;
  return std::all_of(s.begin(), s.end(), [](unsigned char c) {
    return std::islower(c) || std::isdigit(c);
  });
}

bool is_role_token(const std::string& s) { return s.size() > 1 && s[0] == ':'; }

// Pointer tokens look like <p0>, <p12>, ...
std::optional<int> pointer_index(const std::string& s) {
  if (s.size() < 4 || s[0] != '<' || s[1] != 'p' || s.back() != '>') return std::nullopt;
  int n = 0;
  for (std::size_t i = 2; i + 1 < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return std::nullopt;
    n = n * 10 + (s[i] - '0');
  }
  return n;
}

// --- Penman tokenizer ---

struct Token {
  enum class Kind { LParen, RParen, Slash, Atom, Literal };
  Kind kind;
  std::string text;  // literals are stored unquoted
  std::size_t pos;   // byte offset
};

std::vector<Token> tokenize_penman(const std::string& text) {
  std::vector<Token> out;
  std::size_t i = 0;
  const std::size_t n = text.size();
  while (i < n) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (c == '(') {
      out.push_back({Token::Kind::LParen, "(", i++});
    } else if (c == ')') {
      out.push_back({Token::Kind::RParen, ")", i++});
    } else if (c == '/') {
      out.push_back({Token::Kind::Slash, "/", i++});
    } else if (c == '"') {
      const std::size_t start = i++;
      std::string lit;
      while (i < n && text[i] != '"') {
        if (text[i] == '\\' && i + 1 < n && text[i + 1] == '"') ++i;
        lit += text[i++];
      }
      if (i >= n) throw ParseError("unterminated string literal", static_cast<long>(start));
      ++i;  // closing quote
      out.push_back({Token::Kind::Literal, std::move(lit), start});
    } else {
      const std::size_t start = i;
      std::string atom;
      while (i < n && !std::isspace(static_cast<unsigned char>(text[i])) && text[i] != '(' &&
             text[i] != ')' && text[i] != '/' && text[i] != '"') {
        atom += text[i++];
      }
      out.push_back({Token::Kind::Atom, std::move(atom), start});
    }
  }
  return out;
}

// --- Strict recursive-descent parser ---

struct PendingRef {
  std::size_t edge_index;  // edge whose target is an unresolved atom
};

class PenmanParser {
 public:
  explicit PenmanParser(const std::string& text) : tokens_(tokenize_penman(text)) {}

  AmrGraph parse() {
    if (tokens_.empty()) throw ParseError("empty input");
    graph_.root = parse_node();
    if (pos_ != tokens_.size())
      throw ParseError("trailing content after graph", static_cast<long>(cur().pos));
    resolve_atom_targets();
    graph_.validate();
    return std::move(graph_);
  }

 private:
  const Token& cur() const {
    if (pos_ >= tokens_.size())
      throw ParseError("unexpected end of input; unbalanced parentheses",
                       tokens_.empty() ? 0 : static_cast<long>(tokens_.back().pos));
    return tokens_[pos_];
  }
  void expect(Token::Kind k, const char* what) {
    if (cur().kind != k)
      throw ParseError(std::string("expected ") + what + ", got '" + cur().text + "'",
                       static_cast<long>(cur().pos));
    ++pos_;
  }

  // node := '(' var '/' concept (role operand)* ')'
  std::string parse_node() {
    expect(Token::Kind::LParen, "'('");
    if (cur().kind != Token::Kind::Atom || is_role_token(cur().text))
      throw ParseError("expected variable id", static_cast<long>(cur().pos));
    const std::string var = cur().text;
    const std::size_t var_pos = cur().pos;
    if (!is_variable_id(var))
      throw ParseError("invalid variable id '" + var + "'", static_cast<long>(var_pos));
    ++pos_;
    expect(Token::Kind::Slash, "'/'");
    if (cur().kind != Token::Kind::Atom)
      throw ParseError("expected concept label", static_cast<long>(cur().pos));
    const std::string conc = cur().text;
    ++pos_;
    for (const auto& [v, c] : graph_.instances) {
      if (v == var)
        throw ParseError("duplicate variable definition '" + var + "'",
                         static_cast<long>(var_pos));
    }
    graph_.instances.emplace_back(var, conc);

    while (pos_ < tokens_.size() && cur().kind != Token::Kind::RParen) {
      if (cur().kind != Token::Kind::Atom || !is_role_token(cur().text))
        throw ParseError("expected role token", static_cast<long>(cur().pos));
      const std::string role = cur().text;
      ++pos_;
      switch (cur().kind) {
        case Token::Kind::LParen: {
          // Reserve the edge slot before descending so edge order follows
          // source order.
          const std::size_t slot = graph_.edges.size();
          graph_.edges.push_back({var, role, EdgeTarget::constant("")});
          graph_.edges[slot].target = EdgeTarget::variable(parse_node());
          break;
        }
        case Token::Kind::Literal:
          graph_.edges.push_back({var, role, EdgeTarget::literal(cur().text)});
          ++pos_;
          break;
        case Token::Kind::Atom: {
          if (is_role_token(cur().text))
            throw ParseError("role '" + role + "' has no operand", static_cast<long>(cur().pos));
          graph_.edges.push_back({var, role, EdgeTarget::constant(cur().text)});
          unresolved_.push_back({graph_.edges.size() - 1});
          ++pos_;
          break;
        }
        default:
          throw ParseError("expected operand after role '" + role + "'",
                           static_cast<long>(cur().pos));
      }
    }
    expect(Token::Kind::RParen, "')'");
    return var;
  }

  // Bare atoms become Variable references when they match a variable defined
  // anywhere in the graph (forward references included), Constants otherwise.
  void resolve_atom_targets() {
    for (const auto& ref : unresolved_) {
      auto& target = graph_.edges[ref.edge_index].target;
      if (graph_.has_variable(target.value)) target.kind = EdgeTarget::Kind::Variable;
    }
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  AmrGraph graph_;
  std::vector<PendingRef> unresolved_;
};

std::string invert_role(const std::string& role) {
  constexpr std::string_view suffix = "-of";
  if (role.size() > suffix.size() + 1 && role.ends_with(suffix))
    return role.substr(0, role.size() - suffix.size());
  return role + std::string(suffix);
}

// Adjacency over edges: per-variable out-edge indices in stored order.
std::unordered_map<std::string, std::vector<std::size_t>> out_edges_of(const AmrGraph& g) {
  std::unordered_map<std::string, std::vector<std::size_t>> out;
  for (std::size_t i = 0; i < g.edges.size(); ++i) out[g.edges[i].source].push_back(i);
  return out;
}

}  // namespace

bool AmrGraph::has_variable(const std::string& var) const {
  return std::any_of(instances.begin(), instances.end(),
                     [&](const auto& p) { return p.first == var; });
}

const std::string& AmrGraph::concept_of(const std::string& var) const {
  for (const auto& [v, c] : instances)
    if (v == var) return c;
  throw ValidationError("undefined variable reference '" + var + "'");
}

void AmrGraph::add_instance(const std::string& var, const std::string& concept_label) {
  if (has_variable(var)) throw ValidationError("duplicate variable definition '" + var + "'");
  instances.emplace_back(var, concept_label);
}

void AmrGraph::validate() const {
  if (instances.empty()) throw ValidationError("graph has no variables");
  if (!has_variable(root)) throw ValidationError("root '" + root + "' is not a defined variable");
  std::unordered_set<std::string> seen;
  for (const auto& [var, conc] : instances) {
    if (!is_variable_id(var)) throw ValidationError("invalid variable id '" + var + "'");
    if (conc.empty()) throw ValidationError("empty concept for variable '" + var + "'");
    if (!seen.insert(var).second)
      throw ValidationError("variable '" + var + "' has more than one concept");
  }
  for (const auto& e : edges) {
    if (!seen.count(e.source))
      throw ValidationError("edge source '" + e.source + "' is not a defined variable");
    if (!is_role_token(e.role)) throw ValidationError("role '" + e.role + "' must begin with ':'");
    if (e.target.kind == EdgeTarget::Kind::Variable && !seen.count(e.target.value))
      throw ValidationError("undefined variable reference '" + e.target.value + "'");
  }
  // Connectivity: every variable reachable from the root following edges in
  // either direction.
  std::unordered_map<std::string, std::vector<std::string>> adj;
  for (const auto& e : edges) {
    if (e.target.kind != EdgeTarget::Kind::Variable) continue;
    adj[e.source].push_back(e.target.value);
    adj[e.target.value].push_back(e.source);
  }
  std::unordered_set<std::string> reached{root};
  std::deque<std::string> queue{root};
  while (!queue.empty()) {
    const std::string v = queue.front();
    queue.pop_front();
    for (const auto& w : adj[v])
      if (reached.insert(w).second) queue.push_back(w);
  }
  for (const auto& [var, conc] : instances)
    if (!reached.count(var))
      throw ValidationError("variable '" + var + "' is not connected to the root");
}

std::string LinearizedAmr::joined() const {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i) out += ' ';
    out += tokens[i];
  }
  return out;
}

AmrGraph parse_penman(const std::string& text) { return PenmanParser(text).parse(); }

std::string serialize_penman(const AmrGraph& graph) {
  const auto out = out_edges_of(graph);

  // Nodes must be reachable from the root over forward edges to serialize as
  // a tree. For any node that is not, designate a rescue in-edge to traverse
  // backwards (role inverted with `-of`).
  std::unordered_map<std::string, std::vector<std::size_t>> rescues;
  std::unordered_set<std::size_t> rescue_edges;
  {
    std::unordered_set<std::string> reachable{graph.root};
    std::deque<std::string> queue{graph.root};
    auto grow = [&](const std::string& seed) {
      queue.push_back(seed);
      while (!queue.empty()) {
        const std::string v = queue.front();
        queue.pop_front();
        if (auto it = out.find(v); it != out.end())
          for (std::size_t i : it->second) {
            const auto& e = graph.edges[i];
            if (e.target.kind == EdgeTarget::Kind::Variable &&
                reachable.insert(e.target.value).second)
              queue.push_back(e.target.value);
          }
      }
    };
    grow(graph.root);
    bool progress = true;
    while (reachable.size() < graph.instances.size() && progress) {
      progress = false;
      for (std::size_t i = 0; i < graph.edges.size(); ++i) {
        const auto& e = graph.edges[i];
        if (e.target.kind != EdgeTarget::Kind::Variable) continue;
        if (reachable.count(e.source) || !reachable.count(e.target.value)) continue;
        rescues[e.target.value].push_back(i);
        rescue_edges.insert(i);
        reachable.insert(e.source);
        grow(e.source);
        progress = true;
      }
    }
    if (reachable.size() < graph.instances.size())
      throw ValidationError("graph is not connected; cannot serialize");
  }

  std::unordered_set<std::string> visited;
  std::string result;
  auto emit = [&](auto&& self, const std::string& var) -> void {
    visited.insert(var);
    result += '(';
    result += var;
    result += " / ";
    result += graph.concept_of(var);
    if (auto it = out.find(var); it != out.end()) {
      for (std::size_t i : it->second) {
        if (rescue_edges.count(i)) continue;  // emitted inverted at the target
        const auto& e = graph.edges[i];
        result += ' ';
        result += e.role;
        result += ' ';
        switch (e.target.kind) {
          case EdgeTarget::Kind::Variable:
            if (visited.count(e.target.value))
              result += e.target.value;  // re-entrancy: bare id
            else
              self(self, e.target.value);
            break;
          case EdgeTarget::Kind::Constant:
            result += e.target.value;
            break;
          case EdgeTarget::Kind::Literal:
            result += '"' + e.target.value + '"';
            break;
        }
      }
    }
    if (auto it = rescues.find(var); it != rescues.end()) {
      for (std::size_t i : it->second) {
        const auto& e = graph.edges[i];
        result += ' ';
        result += invert_role(e.role);
        result += ' ';
        if (visited.count(e.source))
          result += e.source;
        else
          self(self, e.source);
      }
    }
    result += ')';
  };
  emit(emit, graph.root);
  return result;
}

LinearizedAmr linearize_dfs(const AmrGraph& graph) {
  const auto out = out_edges_of(graph);
  std::unordered_map<std::string, int> pointer;
  LinearizedAmr lin;

  auto ptok = [&](const std::string& var) {
    auto it = pointer.find(var);
    if (it == pointer.end()) it = pointer.emplace(var, static_cast<int>(pointer.size())).first;
    return "<p" + std::to_string(it->second) + ">";
  };

  auto emit = [&](auto&& self, const std::string& var) -> void {
    lin.tokens.push_back("(");
    lin.tokens.push_back(ptok(var));
    lin.tokens.push_back(graph.concept_of(var));
    if (auto it = out.find(var); it != out.end()) {
      for (std::size_t i : it->second) {
        const auto& e = graph.edges[i];
        lin.tokens.push_back(e.role);
        switch (e.target.kind) {
          case EdgeTarget::Kind::Variable:
            if (pointer.count(e.target.value))
              lin.tokens.push_back(ptok(e.target.value));
            else
              self(self, e.target.value);
            break;
          case EdgeTarget::Kind::Constant:
            lin.tokens.push_back(e.target.value);
            break;
          case EdgeTarget::Kind::Literal:
            lin.tokens.push_back('"' + e.target.value + '"');
            break;
        }
      }
    }
    lin.tokens.push_back(")");
  };
  emit(emit, graph.root);
  return lin;
}

namespace {

// Shared frame-based rebuilder behind delinearize and the lenient Penman
// reader. Input is a flat token stream; output is always a valid graph.
class RepairBuilder {
 public:
  // fresh_prefix: variable prefix for nodes with no usable id.
  explicit RepairBuilder(std::string fresh_prefix) : fresh_prefix_(std::move(fresh_prefix)) {}

  void open_frame(const std::string& var, const std::string& concept_label) {
    std::string v = unique_var(var);
    if (auto it = placeholder_.find(var); it != placeholder_.end() && v == var) {
      // Pointer was used before its definition: upgrade the placeholder.
      set_concept(var, concept_label.empty() ? "amr-unknown" : concept_label);
      placeholder_.erase(it);
    } else {
      graph_.instances.emplace_back(v, concept_label.empty() ? "amr-unknown" : concept_label);
    }
    attach_to_parent(EdgeTarget::variable(v));
    stack_.push_back(v);
    if (stack_.size() == 1 && std::find(roots_.begin(), roots_.end(), v) == roots_.end())
      roots_.push_back(v);
  }

  void close_frame() {
    pending_role_.reset();  // dangling role at frame end: drop
    if (!stack_.empty()) stack_.pop_back();
  }

  void role(const std::string& r) {
    pending_role_ = r;  // an unconsumed previous role is dropped
  }

  // Bare reference to a variable/pointer id. Creates an `amr-unknown`
  // placeholder when the id is not (yet) defined.
  void reference(const std::string& var) {
    std::string v = var;
    if (!defined(v)) {
      graph_.instances.emplace_back(v, "amr-unknown");
      placeholder_.insert(v);
    }
    attach_to_parent(EdgeTarget::variable(v));
  }

  void operand(EdgeTarget t) { attach_to_parent(std::move(t)); }

  AmrGraph finish() {
    while (!stack_.empty()) close_frame();  // balance: close open frames
    if (graph_.instances.empty()) throw ParseError("no recoverable node in sequence");
    if (roots_.size() == 1) {
      graph_.root = roots_[0];
    } else {
      // Multiple roots: wrap under a synthetic multi-sentence node.
      std::string wrap;
      do {
        wrap = fresh_prefix_ + std::to_string(fresh_counter_++);
      } while (defined(wrap));
      graph_.instances.emplace_back(wrap, "multi-sentence");
      for (std::size_t i = 0; i < roots_.size(); ++i)
        graph_.edges.push_back(
            {wrap, ":snt" + std::to_string(i + 1), EdgeTarget::variable(roots_[i])});
      graph_.root = wrap;
    }
    attach_disconnected();
    graph_.validate();
    return std::move(graph_);
  }

 private:
  bool defined(const std::string& v) const {
    return std::any_of(graph_.instances.begin(), graph_.instances.end(),
                       [&](const auto& p) { return p.first == v; });
  }

  void set_concept(const std::string& v, const std::string& c) {
    for (auto& p : graph_.instances)
      if (p.first == v) {
        p.second = c;
        return;
      }
  }

  // Fresh id on collision (repair may merge streams that reuse ids).
  std::string unique_var(const std::string& want) {
    std::string v = want.empty() ? fresh_prefix_ + std::to_string(fresh_counter_++) : want;
    if (!defined(v)) return v;
    if (placeholder_.count(v)) return v;  // will be upgraded in place
    while (true) {
      std::string cand = fresh_prefix_ + std::to_string(fresh_counter_++);
      if (!defined(cand)) return cand;
    }
  }

  void attach_to_parent(EdgeTarget t) {
    const bool is_var = t.kind == EdgeTarget::Kind::Variable;
    if (stack_.empty()) {
      // Operand outside any frame. Variables become additional roots (the
      // multi-sentence wrap absorbs them); constants are dropped.
      if (is_var && std::find(roots_.begin(), roots_.end(), t.value) == roots_.end())
        roots_.push_back(t.value);
      pending_role_.reset();
      return;
    }
    std::string role = pending_role_.value_or(":mod");  // operand without role
    pending_role_.reset();
    graph_.edges.push_back({stack_.back(), role, std::move(t)});
  }

  // Connectivity repair: attach any variable not reachable from the root via
  // a `:mod` edge from the root.
  void attach_disconnected() {
    std::unordered_map<std::string, std::vector<std::string>> adj;
    for (const auto& e : graph_.edges) {
      if (e.target.kind != EdgeTarget::Kind::Variable) continue;
      adj[e.source].push_back(e.target.value);
      adj[e.target.value].push_back(e.source);
    }
    std::unordered_set<std::string> reached{graph_.root};
    std::deque<std::string> queue{graph_.root};
    auto grow = [&](const std::string& seed) {
      queue.push_back(seed);
      while (!queue.empty()) {
        const std::string v = queue.front();
        queue.pop_front();
        for (const auto& w : adj[v])
          if (reached.insert(w).second) queue.push_back(w);
      }
    };
    grow(graph_.root);
    for (const auto& [var, conc] : graph_.instances) {
      if (reached.count(var)) continue;
      graph_.edges.push_back({graph_.root, ":mod", EdgeTarget::variable(var)});
      reached.insert(var);
      grow(var);
    }
  }

  std::string fresh_prefix_;
  int fresh_counter_ = 0;
  AmrGraph graph_;
  std::vector<std::string> stack_;  // open frame variables
  std::vector<std::string> roots_;
  std::optional<std::string> pending_role_;
  std::unordered_set<std::string> placeholder_;
};

bool looks_numeric(const std::string& s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i >= s.size()) return false;
  bool digit = false;
  for (; i < s.size(); ++i) {
    if (std::isdigit(static_cast<unsigned char>(s[i])))
      digit = true;
    else if (s[i] != '.')
      return false;
  }
  return digit;
}

}  // namespace

AmrGraph delinearize(const LinearizedAmr& lin) {
  RepairBuilder builder("x");
  std::size_t i = 0;
  const auto& toks = lin.tokens;
  std::unordered_set<int> defined_pointers;
  while (i < toks.size()) {
    const std::string& t = toks[i];
    if (t == "(") {
      ++i;
      std::string var;
      std::string concept_label;
      if (i < toks.size()) {
        if (auto p = pointer_index(toks[i])) {
          var = "p" + std::to_string(*p);
          defined_pointers.insert(*p);
          ++i;
        }
      }
      if (i < toks.size() && toks[i] != "(" && toks[i] != ")" && !is_role_token(toks[i]) &&
          !pointer_index(toks[i])) {
        concept_label = toks[i];
        if (concept_label.size() > 1 && concept_label.front() == '"' &&
            concept_label.back() == '"')
          concept_label = concept_label.substr(1, concept_label.size() - 2);
        ++i;
      }
      builder.open_frame(var, concept_label);
    } else if (t == ")") {
      builder.close_frame();
      ++i;
    } else if (is_role_token(t)) {
      builder.role(t);
      ++i;
    } else if (auto p = pointer_index(t)) {
      builder.reference("p" + std::to_string(*p));
      ++i;
    } else if (t.size() > 1 && t.front() == '"' && t.back() == '"') {
      builder.operand(EdgeTarget::literal(t.substr(1, t.size() - 2)));
      ++i;
    } else if (!t.empty()) {
      builder.operand(EdgeTarget::constant(t));
      ++i;
    } else {
      ++i;
    }
  }
  return builder.finish();
}

AmrGraph delinearize(const std::string& joined_tokens) {
  LinearizedAmr lin;
  std::istringstream ss(joined_tokens);
  std::string tok;
  // Literals may contain spaces; stitch quoted runs back together.
  while (ss >> tok) {
    if (!tok.empty() && tok.front() == '"' && (tok.size() == 1 || tok.back() != '"')) {
      std::string more;
      while (ss >> more) {
        tok += ' ' + more;
        if (!more.empty() && more.back() == '"') break;
      }
    }
    lin.tokens.push_back(tok);
  }
  return delinearize(lin);
}

AmrGraph parse_penman_lenient(const std::string& text) {
  std::vector<Token> toks;
  try {
    toks = tokenize_penman(text);
  } catch (const ParseError&) {
    // Unterminated literal: retry with a closing quote appended.
    toks = tokenize_penman(text + '"');
  }
  RepairBuilder builder("x");
  std::size_t i = 0;
  while (i < toks.size()) {
    const Token& t = toks[i];
    switch (t.kind) {
      case Token::Kind::LParen: {
        ++i;
        std::string var;
        std::string concept_label;
        if (i < toks.size() && toks[i].kind == Token::Kind::Atom &&
            !is_role_token(toks[i].text) && is_variable_id(toks[i].text)) {
          var = toks[i].text;
          ++i;
        }
        if (i < toks.size() && toks[i].kind == Token::Kind::Slash) {
          ++i;
          if (i < toks.size() &&
              (toks[i].kind == Token::Kind::Atom || toks[i].kind == Token::Kind::Literal) &&
              !is_role_token(toks[i].text)) {
            concept_label = toks[i].text;
            ++i;
          }
        } else if (!var.empty() && i < toks.size() && toks[i].kind == Token::Kind::Atom &&
                   !is_role_token(toks[i].text)) {
          // `(var concept ...` with the slash missing
          concept_label = toks[i].text;
          ++i;
        } else if (var.empty()) {
          // `( concept ...`: no variable at all
          if (i < toks.size() && toks[i].kind == Token::Kind::Atom &&
              !is_role_token(toks[i].text)) {
            concept_label = toks[i].text;
            ++i;
          }
        } else {
          // `(var ...` where var was actually a concept
          concept_label = var;
          var.clear();
        }
        builder.open_frame(var, concept_label);
        break;
      }
      case Token::Kind::RParen:
        builder.close_frame();
        ++i;
        break;
      case Token::Kind::Slash:
        ++i;  // stray
        break;
      case Token::Kind::Literal:
        builder.operand(EdgeTarget::literal(t.text));
        ++i;
        break;
      case Token::Kind::Atom:
        if (is_role_token(t.text)) {
          builder.role(t.text);
        } else if (is_variable_id(t.text) && !looks_numeric(t.text)) {
          builder.reference(t.text);
        } else {
          builder.operand(EdgeTarget::constant(t.text));
        }
        ++i;
        break;
    }
  }
  return builder.finish();
}

std::vector<AmrTriple> extract_triples(const AmrGraph& graph, bool include_top) {
  std::vector<AmrTriple> out;
  out.reserve(graph.instances.size() + graph.edges.size() + 1);
  for (const auto& [var, conc] : graph.instances)
    out.push_back({AmrTriple::Kind::Instance, var, "instance", conc});
  for (const auto& e : graph.edges) {
    if (e.target.kind == EdgeTarget::Kind::Variable) {
      out.push_back({AmrTriple::Kind::Relation, e.source, e.role, e.target.value});
    } else {
      // Literals keep their quotes so "Anwar" and the constant Anwar stay
      // distinct objects.
      const std::string obj = e.target.kind == EdgeTarget::Kind::Literal
                                  ? '"' + e.target.value + '"'
                                  : e.target.value;
      out.push_back({AmrTriple::Kind::Attribute, e.source, e.role, obj});
    }
  }
  if (include_top)
    out.push_back({AmrTriple::Kind::Top, graph.root, "TOP", graph.concept_of(graph.root)});
  return out;
}

std::string strip_sense(const std::string& concept_label) {
  if (has_sense_suffix(concept_label)) return concept_label.substr(0, concept_label.size() - 3);
  return concept_label;
}

bool has_sense_suffix(const std::string& concept_label) {
  if (concept_label.size() < 4) return false;  // at least one lemma char + "-NN"
  const std::size_t n = concept_label.size();
  return concept_label[n - 3] == '-' && std::isdigit(static_cast<unsigned char>(concept_label[n - 2])) &&
         std::isdigit(static_cast<unsigned char>(concept_label[n - 1]));
}

std::vector<std::string> read_penman_blocks(const std::string& file_text) {
  std::vector<std::string> blocks;
  std::string current;
  std::istringstream ss(file_text);
  std::string line;
  auto flush = [&] {
    if (current.find_first_not_of(" \t\r\n") != std::string::npos) blocks.push_back(current);
    current.clear();
  };
  while (std::getline(ss, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty() && line[0] == '#') continue;  // `# ::` metadata lines
    if (line.find_first_not_of(" \t") == std::string::npos) {
      flush();
    } else {
      current += line;
      current += '\n';
    }
  }
  flush();
  return blocks;
}

}  // namespace amrst
