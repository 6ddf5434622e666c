#include "qlb/predicate.hpp"

#include <charconv>
#include <sstream>
#include <stdexcept>

#include "qlb/bits.hpp"
#include "qlb/toeplitz.hpp"

namespace qlb::ledger {

namespace {

void put_u32_be(std::vector<uint8_t>& out, uint32_t v) {
  out.push_back(static_cast<uint8_t>(v >> 24));
  out.push_back(static_cast<uint8_t>(v >> 16));
  out.push_back(static_cast<uint8_t>(v >> 8));
  out.push_back(static_cast<uint8_t>(v));
}

bool valid_token(std::string_view s) {
  for (char c : s)
    if (c == ',' || c == '(' || c == ')' || c == ' ' || c == '\n' || c == '\t')
      return false;
  return true;
}

void require_token(std::string_view s) {
  if (!valid_token(s))
    throw std::invalid_argument("malformed protection expression: bad token");
}

}  // namespace

std::vector<uint8_t> canonical_evidence_bytes(const Evidence& ev) {
  std::vector<uint8_t> out;
  for (const auto& [key, value] : ev) {  // std::map iterates in key order
    put_u32_be(out, static_cast<uint32_t>(key.size()));
    out.insert(out.end(), key.begin(), key.end());
    put_u32_be(out, static_cast<uint32_t>(value.size()));
    out.insert(out.end(), value.begin(), value.end());
  }
  return out;
}

struct Predicate::Node {
  enum class Kind {
    True,
    False,
    And,
    Or,
    Not,
    FieldEquals,
    FieldAtLeast,
    MacValid,
    Quantum
  };
  Kind kind = Kind::True;
  std::vector<std::shared_ptr<const Node>> children;
  std::string field, value, tag_field, key_field;
  int64_t threshold = 0;
  size_t first = 0, count = 0, min_matches = 0;
  quantum::MeasurementBasis basis = quantum::MeasurementBasis::Computational;
  int expected = 0;
};

using Node = Predicate::Node;
using Kind = Node::Kind;

Predicate::Predicate() : root_(std::make_shared<Node>()) {}
Predicate::Predicate(std::shared_ptr<const Node> root) : root_(std::move(root)) {}

Predicate Predicate::constant(bool v) {
  auto n = std::make_shared<Node>();
  n->kind = v ? Kind::True : Kind::False;
  return Predicate(n);
}

Predicate Predicate::all_of(std::vector<Predicate> children) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::And;
  for (auto& c : children) n->children.push_back(c.root_);
  return Predicate(n);
}

Predicate Predicate::any_of(std::vector<Predicate> children) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Or;
  for (auto& c : children) n->children.push_back(c.root_);
  return Predicate(n);
}

Predicate Predicate::negate(Predicate child) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Not;
  n->children.push_back(child.root_);
  return Predicate(n);
}

Predicate Predicate::field_equals(std::string field, std::string value) {
  require_token(field);
  require_token(value);
  auto n = std::make_shared<Node>();
  n->kind = Kind::FieldEquals;
  n->field = std::move(field);
  n->value = std::move(value);
  return Predicate(n);
}

Predicate Predicate::field_at_least(std::string field, int64_t threshold) {
  require_token(field);
  auto n = std::make_shared<Node>();
  n->kind = Kind::FieldAtLeast;
  n->field = std::move(field);
  n->threshold = threshold;
  return Predicate(n);
}

Predicate Predicate::mac_valid(std::string data_field, std::string tag_field,
                               std::string key_field) {
  require_token(data_field);
  require_token(tag_field);
  require_token(key_field);
  auto n = std::make_shared<Node>();
  n->kind = Kind::MacValid;
  n->field = std::move(data_field);
  n->tag_field = std::move(tag_field);
  n->key_field = std::move(key_field);
  return Predicate(n);
}

Predicate Predicate::quantum_test(size_t first, size_t count,
                                  quantum::MeasurementBasis basis, int expected,
                                  size_t min_matches) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Quantum;
  n->first = first;
  n->count = count;
  n->basis = basis;
  n->expected = expected;
  n->min_matches = min_matches;
  return Predicate(n);
}

namespace {

void collect_stats(const Node& node, size_t depth, size_t& max_depth,
                   size_t& atoms) {
  max_depth = std::max(max_depth, depth);
  switch (node.kind) {
    case Kind::FieldEquals:
    case Kind::FieldAtLeast:
    case Kind::MacValid:
    case Kind::Quantum:
      ++atoms;
      break;
    default:
      break;
  }
  for (const auto& c : node.children) collect_stats(*c, depth + 1, max_depth, atoms);
}

bool node_has_quantum(const Node& node) {
  if (node.kind == Kind::Quantum) return true;
  for (const auto& c : node.children)
    if (node_has_quantum(*c)) return true;
  return false;
}

Predicate::EvalResult eval_node(const Node& node, Predicate::EvalContext& ctx);

Predicate::EvalResult eval_mac(const Node& node, Predicate::EvalContext& ctx) {
  if (!ctx.evidence) return {false, true};
  auto data_it = ctx.evidence->find(node.field);
  auto tag_it = ctx.evidence->find(node.tag_field);
  auto key_it = ctx.evidence->find(node.key_field);
  if (data_it == ctx.evidence->end() || tag_it == ctx.evidence->end() ||
      key_it == ctx.evidence->end())
    return {false, true};
  const std::string& data = data_it->second;
  size_t msg_bits = data.size() * 8;
  size_t key_bits = Predicate::kMacTagBits + msg_bits - 1 + Predicate::kMacTagBits;
  try {
    crypto::ToeplitzSpec spec;
    spec.digest_len = Predicate::kMacTagBits;
    spec.msg_len = msg_bits;
    BitString key = BitString::from_hex(key_it->second, key_bits);
    spec.seed = BitString(Predicate::kMacTagBits + msg_bits - 1);
    spec.pad = BitString(Predicate::kMacTagBits);
    for (size_t i = 0; i < spec.seed.size(); ++i) spec.seed.set(i, key.get(i));
    for (size_t i = 0; i < spec.pad.size(); ++i)
      spec.pad.set(i, key.get(spec.seed.size() + i));
    BitString msg = BitString::from_bytes(
        {reinterpret_cast<const uint8_t*>(data.data()), data.size()});
    BitString want = BitString::from_hex(tag_it->second, Predicate::kMacTagBits);
    return {crypto::toeplitz_hash(spec, msg) == want, false};
  } catch (const std::invalid_argument&) {
    return {false, true};
  }
}

Predicate::EvalResult eval_quantum(const Node& node, Predicate::EvalContext& ctx) {
  if (!ctx.qubits || !ctx.rng) return {false, true};
  if (node.first + node.count > ctx.qubits->size() || node.count == 0)
    return {false, true};
  size_t matches = 0;
  for (size_t i = node.first; i < node.first + node.count; ++i) {
    auto result = quantum::measure((*ctx.qubits)[i], node.basis, *ctx.rng);
    (*ctx.qubits)[i] = result.post_state;  // the certificate is consumed
    if (result.outcome == node.expected) ++matches;
  }
  return {matches >= node.min_matches, false};
}

Predicate::EvalResult eval_node(const Node& node, Predicate::EvalContext& ctx) {
  switch (node.kind) {
    case Kind::True:
      return {true, false};
    case Kind::False:
      return {false, false};
    case Kind::And: {
      // Kleene-style: one clean false decides; malformedness only matters
      // when it could have changed the outcome.
      bool value = true, malformed = false;
      for (const auto& c : node.children) {
        auto r = eval_node(*c, ctx);
        if (!r.value && !r.malformed) return {false, false};
        value = value && r.value;
        malformed = malformed || r.malformed;
      }
      return {value, malformed};
    }
    case Kind::Or: {
      bool malformed = false;
      for (const auto& c : node.children) {
        auto r = eval_node(*c, ctx);
        if (r.value && !r.malformed) return {true, false};
        malformed = malformed || r.malformed;
      }
      return {false, malformed};
    }
    case Kind::Not: {
      auto r = eval_node(*node.children.front(), ctx);
      return {!r.value, r.malformed};
    }
    case Kind::FieldEquals: {
      if (!ctx.evidence) return {false, true};
      auto it = ctx.evidence->find(node.field);
      if (it == ctx.evidence->end()) return {false, true};
      return {it->second == node.value, false};
    }
    case Kind::FieldAtLeast: {
      if (!ctx.evidence) return {false, true};
      auto it = ctx.evidence->find(node.field);
      if (it == ctx.evidence->end()) return {false, true};
      int64_t parsed = 0;
      auto [ptr, ec] = std::from_chars(
          it->second.data(), it->second.data() + it->second.size(), parsed);
      if (ec != std::errc{} || ptr != it->second.data() + it->second.size())
        return {false, true};
      return {parsed >= node.threshold, false};
    }
    case Kind::MacValid:
      return eval_mac(node, ctx);
    case Kind::Quantum:
      return eval_quantum(node, ctx);
  }
  return {false, true};
}

}  // namespace

bool Predicate::is_trivially_true() const { return root_->kind == Kind::True; }

bool Predicate::has_quantum_atoms() const { return node_has_quantum(*root_); }

Predicate::EvalResult Predicate::evaluate(EvalContext& ctx) const {
  size_t depth = 0, atoms = 0;
  collect_stats(*root_, 1, depth, atoms);
  if (depth > kMaxDepth || atoms > kMaxAtoms) return {false, true};
  return eval_node(*root_, ctx);
}

namespace {

void serialize_node(const Node& node, std::ostringstream& os) {
  switch (node.kind) {
    case Kind::True:
      os << 'T';
      return;
    case Kind::False:
      os << 'F';
      return;
    case Kind::And:
    case Kind::Or: {
      os << (node.kind == Kind::And ? '&' : '|') << '(';
      for (size_t i = 0; i < node.children.size(); ++i) {
        if (i) os << ',';
        serialize_node(*node.children[i], os);
      }
      os << ')';
      return;
    }
    case Kind::Not:
      os << "!(";
      serialize_node(*node.children.front(), os);
      os << ')';
      return;
    case Kind::FieldEquals:
      os << "ceq(" << node.field << ',' << node.value << ')';
      return;
    case Kind::FieldAtLeast:
      os << "cge(" << node.field << ',' << node.threshold << ')';
      return;
    case Kind::MacValid:
      os << "cmac(" << node.field << ',' << node.tag_field << ',' << node.key_field
         << ')';
      return;
    case Kind::Quantum:
      os << "q(" << node.first << ',' << node.count << ','
         << (node.basis == quantum::MeasurementBasis::Computational ? 'C' : 'R')
         << ',' << node.expected << ',' << node.min_matches << ')';
      return;
  }
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Predicate parse() {
    Predicate p = parse_expr();
    if (pos_ != text_.size())
      throw std::invalid_argument("predicate parse: trailing input");
    return p;
  }

 private:
  char peek() const {
    if (pos_ >= text_.size())
      throw std::invalid_argument("predicate parse: unexpected end");
    return text_[pos_];
  }
  char take() {
    char c = peek();
    ++pos_;
    return c;
  }
  void expect(char c) {
    if (take() != c)
      throw std::invalid_argument(std::string("predicate parse: expected '") + c + "'");
  }
  std::string token() {
    std::string out;
    while (pos_ < text_.size() && text_[pos_] != ',' && text_[pos_] != ')')
      out.push_back(take());
    return out;
  }
  int64_t integer() {
    std::string t = token();
    int64_t v = 0;
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc{} || ptr != t.data() + t.size())
      throw std::invalid_argument("predicate parse: bad integer");
    return v;
  }

  std::vector<Predicate> parse_list() {
    std::vector<Predicate> out;
    expect('(');
    if (peek() != ')') {
      out.push_back(parse_expr());
      while (peek() == ',') {
        take();
        out.push_back(parse_expr());
      }
    }
    expect(')');
    return out;
  }

  Predicate parse_expr() {
    char c = peek();
    if (c == 'T') {
      take();
      return Predicate::constant(true);
    }
    if (c == 'F') {
      take();
      return Predicate::constant(false);
    }
    if (c == '&') {
      take();
      return Predicate::all_of(parse_list());
    }
    if (c == '|') {
      take();
      return Predicate::any_of(parse_list());
    }
    if (c == '!') {
      take();
      auto list = parse_list();
      if (list.size() != 1)
        throw std::invalid_argument("predicate parse: ! takes one child");
      return Predicate::negate(list.front());
    }
    // Named atoms.
    std::string name;
    while (pos_ < text_.size() && text_[pos_] != '(') name.push_back(take());
    expect('(');
    if (name == "ceq") {
      std::string field = token();
      expect(',');
      std::string value = token();
      expect(')');
      return Predicate::field_equals(std::move(field), std::move(value));
    }
    if (name == "cge") {
      std::string field = token();
      expect(',');
      int64_t threshold = integer();
      expect(')');
      return Predicate::field_at_least(std::move(field), threshold);
    }
    if (name == "cmac") {
      std::string data = token();
      expect(',');
      std::string tag = token();
      expect(',');
      std::string key = token();
      expect(')');
      return Predicate::mac_valid(std::move(data), std::move(tag), std::move(key));
    }
    if (name == "q") {
      int64_t first = integer();
      expect(',');
      int64_t count = integer();
      expect(',');
      std::string basis = token();
      expect(',');
      int64_t expected = integer();
      expect(',');
      int64_t min_matches = integer();
      expect(')');
      if (basis != "C" && basis != "R")
        throw std::invalid_argument("predicate parse: basis must be C or R");
      return Predicate::quantum_test(
          static_cast<size_t>(first), static_cast<size_t>(count),
          basis == "C" ? quantum::MeasurementBasis::Computational
                       : quantum::MeasurementBasis::Circular,
          static_cast<int>(expected), static_cast<size_t>(min_matches));
    }
    throw std::invalid_argument("predicate parse: unknown atom '" + name + "'");
  }

  std::string_view text_;
  size_t pos_ = 0;
};

}  // namespace

std::string Predicate::serialize() const {
  std::ostringstream os;
  serialize_node(*root_, os);
  return os.str();
}

Predicate Predicate::parse(std::string_view text) { return Parser(text).parse(); }

bool Predicate::operator==(const Predicate& rhs) const {
  return serialize() == rhs.serialize();
}

}  // namespace qlb::ledger
