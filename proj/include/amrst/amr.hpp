#ifndef AMRST_AMR_HPP
#define AMRST_AMR_HPP

#include <cstddef>
#include <string>
#include <vector>

namespace amrst {

// Operand of an AMR edge: another variable, a bare constant (`-`,
// `imperative`, numbers), or a quoted string literal.
struct EdgeTarget {
  enum class Kind { Variable, Constant, Literal };
  Kind kind = Kind::Constant;
  std::string value;  // variable id, constant text, or literal text (unquoted)

  static EdgeTarget variable(std::string id) {
    return {Kind::Variable, std::move(id)};
  }
  static EdgeTarget constant(std::string text) {
    return {Kind::Constant, std::move(text)};
  }
  static EdgeTarget literal(std::string text) {
    return {Kind::Literal, std::move(text)};
  }

  bool operator==(const EdgeTarget&) const = default;
};

struct AmrEdge {
  std::string source;  // variable id
  std::string role;    // includes the leading ':'
  EdgeTarget target;

  bool operator==(const AmrEdge&) const = default;
};

// Rooted labeled directed graph of variables, concepts, attributes and
// relations. Instances keep first-definition order; edges keep source order.
// Immutable by convention after construction: all operations below are pure.
class AmrGraph {
 public:
  std::string root;
  std::vector<std::pair<std::string, std::string>> instances;  // var -> concept
  std::vector<AmrEdge> edges;

  bool has_variable(const std::string& var) const;
  // Concept of `var`; throws ValidationError when undefined.
  const std::string& concept_of(const std::string& var) const;
  std::size_t variable_count() const { return instances.size(); }

  void add_instance(const std::string& var, const std::string& concept_label);

  // Checks all invariants: root defined, one concept per variable, edge
  // endpoints defined, role/id syntax, connectivity from root (either edge
  // direction). Throws ValidationError on the first violation.
  void validate() const;

  bool operator==(const AmrGraph&) const = default;
};

// One scorable unit of a graph.
struct AmrTriple {
  enum class Kind { Instance, Attribute, Relation, Top };
  Kind kind;
  std::string subject;  // variable id
  std::string role;     // "instance", "TOP", or edge role with ':'
  std::string object;   // concept, constant (literals keep their quotes), or variable id

  bool operator==(const AmrTriple&) const = default;
  auto operator<=>(const AmrTriple&) const = default;
};

// Token sequence over {`(`, `)`, role tokens, concept tokens, literal
// tokens, pointer tokens `<pN>`}.
struct LinearizedAmr {
  std::vector<std::string> tokens;

  std::string joined() const;  // whitespace-joined

  bool operator==(const LinearizedAmr&) const = default;
};

// --- Penman text ---

// Strict parse of a single Penman s-expression. Bare operands are resolved
// two-pass: a token that matches a variable defined anywhere in the graph is
// a Variable reference, anything else is a Constant. Throws ParseError with
// a byte position on syntax errors, duplicate definitions and unbalanced
// parentheses.
AmrGraph parse_penman(const std::string& text);

// Deterministic single-line serialization in stored edge order; re-entrant
// variables re-emitted as bare ids. parse_penman(serialize_penman(g)) is
// isomorphic to g.
std::string serialize_penman(const AmrGraph& graph);

// Lenient reader for model-produced Penman text: applies the same repair
// rules as delinearize and never fails except on input with no usable node.
AmrGraph parse_penman_lenient(const std::string& text);

// --- Linearization ---

// Depth-first traversal from the root in stored edge order. First visit of a
// variable emits `<pN>` + concept, re-entrancy emits `<pN>` alone;
// literals/constants are emitted verbatim.
LinearizedAmr linearize_dfs(const AmrGraph& graph);

// Inverse of linearize_dfs, total on arbitrary token sequences via a repair
// pass: open frames are closed at end-of-sequence, dangling role tokens are
// dropped, pointers used before definition get the placeholder concept
// `amr-unknown`, multiple roots are wrapped under a synthetic
// `multi-sentence` node. Throws ParseError only when no node can be
// recovered at all.
AmrGraph delinearize(const LinearizedAmr& tokens);
AmrGraph delinearize(const std::string& joined_tokens);

// --- Triples ---

// One Instance triple per variable, one Relation/Attribute triple per edge,
// plus one Top triple (root, TOP, root concept) iff include_top.
std::vector<AmrTriple> extract_triples(const AmrGraph& graph, bool include_top);

// Removes a trailing PropBank sense code `-NN` (exactly two digits).
std::string strip_sense(const std::string& concept_label);

// True for PropBank-framed concepts `lemma-NN`.
bool has_sense_suffix(const std::string& concept_label);

// --- Block files ---

// Splits a Penman text file into blank-line-separated blocks, ignoring `#`
// comment lines. Returns the raw text of each block.
std::vector<std::string> read_penman_blocks(const std::string& file_text);

}  // namespace amrst

#endif  // AMRST_AMR_HPP
