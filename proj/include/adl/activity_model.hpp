#pragma once

// Weighted complex-activity definitions: atomic activities, their paired
// context attributes, core/start/end sets and the completion threshold.

#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace adl {

using IdSet = std::set<int>;

struct AtomicActivity {
  int id = 0;
  std::string label;
  double weight = 0.0;

  bool operator==(const AtomicActivity&) const = default;
};

// Paired 1:1 with the atomic activity of the same id.
struct ContextAttribute {
  int id = 0;
  std::string label;
  double weight = 0.0;

  bool operator==(const ContextAttribute&) const = default;
};

struct ComplexActivityDefinition {
  std::string name;
  std::string short_code;
  std::string title;
  std::vector<AtomicActivity> atomics;
  std::vector<ContextAttribute> contexts;
  IdSet core_atomics;
  IdSet core_contexts;
  IdSet start_atomics;
  IdSet start_contexts;
  IdSet end_atomics;
  IdSet end_contexts;
  double threshold = 1.0;
  std::string notes;

  IdSet atomic_ids() const;
  IdSet context_ids() const;
  double atomic_weight(int id) const;
  double context_weight(int id) const;

  bool operator==(const ComplexActivityDefinition&) const = default;
};

constexpr double kWeightSumTolerance = 1e-6;

struct Violation {
  std::string kind;  // weight-range, weight-sum, dangling-id, id-sequence, pairing, empty-set, threshold-range, empty-name
  std::string detail;

  std::string to_string() const { return kind + ": " + detail; }
};

using ValidationReport = std::vector<Violation>;

ValidationReport validate_definition(const ComplexActivityDefinition& def);

// Immutable after construction; names are unique.
class DefinitionSet {
 public:
  using Map = std::map<std::string, ComplexActivityDefinition, std::less<>>;

  DefinitionSet() = default;
  // Throws LookupError on a duplicate name.
  explicit DefinitionSet(std::vector<ComplexActivityDefinition> defs);

  const ComplexActivityDefinition& at(std::string_view name) const;
  const ComplexActivityDefinition* find(std::string_view name) const;
  const ComplexActivityDefinition* find_by_code(std::string_view short_code) const;
  bool contains(std::string_view name) const { return find(name) != nullptr; }

  std::vector<std::string> names() const;  // sorted
  std::size_t size() const { return defs_.size(); }
  bool empty() const { return defs_.empty(); }
  Map::const_iterator begin() const { return defs_.begin(); }
  Map::const_iterator end() const { return defs_.end(); }

  bool operator==(const DefinitionSet&) const = default;

 private:
  Map defs_;
};

// Parses the definition file format without validating invariants.
// Throws ParseError (malformed or empty document) or LookupError (duplicate name).
std::vector<ComplexActivityDefinition> parse_definition_document(std::string_view text,
                                                                 const std::string& source);

// Parses and validates. Throws ValidationError listing every violation.
DefinitionSet parse_definitions(std::string_view text, const std::string& source = "<definitions>");
DefinitionSet load_definitions(const std::filesystem::path& path);

std::string serialize_definitions(const DefinitionSet& set);

struct ImportantPair {
  int atomic = 0;
  int context = 0;

  bool operator==(const ImportantPair&) const = default;
};

// Heaviest atomic activity and its paired context; ties go to the lowest id.
ImportantPair most_important_pair(const ComplexActivityDefinition& def);

}  // namespace adl
