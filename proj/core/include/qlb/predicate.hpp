#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "qlb/quantum.hpp"
#include "qlb/rng.hpp"

namespace qlb::ledger {

/// Named classical evidence attached to a transaction as a certificate.
using Evidence = std::map<std::string, std::string>;

/// Canonical bytes of an evidence record: keys in lexicographic order,
/// each key and value length-prefixed with a 32-bit big-endian count.
std::vector<uint8_t> canonical_evidence_bytes(const Evidence& ev);

/// Boolean protection over certificates. Classical atoms test named
/// evidence fields; quantum atoms measure certificate qubits. Printable
/// to a compact canonical text form:
///
///   T | F | &(p,...) | |(p,...) | !(p)
///   ceq(field,value)        field equals value
///   cge(field,n)            field parsed as integer is >= n
///   cmac(data,tag,key)      Toeplitz tag over evidence[data] verifies
///   q(first,count,B,e,min)  >= min of count qubits measure to e in basis B
///
/// Tokens may not contain delimiters; construction rejects them, which is
/// what a malformed-protection error looks like. Depth and atom count are
/// capped so evaluation is always total.
class Predicate {
 public:
  static constexpr size_t kMaxDepth = 32;
  static constexpr size_t kMaxAtoms = 256;
  static constexpr size_t kMacTagBits = 64;

  Predicate();  // constant true

  static Predicate constant(bool v);
  static Predicate all_of(std::vector<Predicate> children);
  static Predicate any_of(std::vector<Predicate> children);
  static Predicate negate(Predicate child);
  static Predicate field_equals(std::string field, std::string value);
  static Predicate field_at_least(std::string field, int64_t threshold);
  static Predicate mac_valid(std::string data_field, std::string tag_field,
                             std::string key_field);
  static Predicate quantum_test(size_t first, size_t count,
                                quantum::MeasurementBasis basis, int expected,
                                size_t min_matches);

  bool is_trivially_true() const;
  bool has_quantum_atoms() const;

  std::string serialize() const;
  /// Inverse of serialize; throws std::invalid_argument on bad input.
  static Predicate parse(std::string_view text);

  struct EvalContext {
    const Evidence* evidence = nullptr;
    /// Measured in place: evaluation consumes the certificate.
    std::vector<quantum::QubitState>* qubits = nullptr;
    Rng* rng = nullptr;
  };
  struct EvalResult {
    bool value = false;
    bool malformed = false;  // out-of-range index, missing field, bad hex
  };
  EvalResult evaluate(EvalContext& ctx) const;

  bool operator==(const Predicate& rhs) const;

  struct Node;  // implementation detail, defined in the source file

 private:
  std::shared_ptr<const Node> root_;
  explicit Predicate(std::shared_ptr<const Node> root);
};

}  // namespace qlb::ledger
