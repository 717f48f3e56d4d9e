#include "adl/activity_model.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "adl/error.hpp"
#include "json.hpp"

namespace adl {

using nlohmann::json;

IdSet ComplexActivityDefinition::atomic_ids() const {
  IdSet ids;
  for (const auto& a : atomics) ids.insert(a.id);
  return ids;
}

IdSet ComplexActivityDefinition::context_ids() const {
  IdSet ids;
  for (const auto& c : contexts) ids.insert(c.id);
  return ids;
}

double ComplexActivityDefinition::atomic_weight(int id) const {
  for (const auto& a : atomics)
    if (a.id == id) return a.weight;
  throw LookupError(name + ": no atomic activity At" + std::to_string(id));
}

double ComplexActivityDefinition::context_weight(int id) const {
  for (const auto& c : contexts)
    if (c.id == id) return c.weight;
  throw LookupError(name + ": no context attribute Ct" + std::to_string(id));
}

namespace {

template <class Item>
void check_items(const std::vector<Item>& items, const char* prefix, ValidationReport& report) {
  double sum = 0.0;
  for (std::size_t i = 0; i < items.size(); ++i) {
    const auto& item = items[i];
    if (item.id != static_cast<int>(i) + 1) {
      report.push_back({"id-sequence", std::string(prefix) + " at position " + std::to_string(i + 1) +
                                           " has id " + std::to_string(item.id)});
    }
    if (!(item.weight >= 0.0 && item.weight <= 1.0)) {
      report.push_back({"weight-range", std::string(prefix) + std::to_string(item.id) + " weight " +
                                            std::to_string(item.weight) + " outside [0,1]"});
    }
    sum += item.weight;
  }
  if (std::abs(sum - 1.0) > kWeightSumTolerance) {
    std::ostringstream os;
    os << prefix << " weights sum to " << sum << ", expected 1";
    report.push_back({"weight-sum", os.str()});
  }
}

void check_refs(const IdSet& refs, const IdSet& known, const std::string& set_name, const char* prefix,
                ValidationReport& report) {
  for (int id : refs) {
    if (!known.contains(id))
      report.push_back({"dangling-id", set_name + " refers to missing " + prefix + std::to_string(id)});
  }
}

}  // namespace

ValidationReport validate_definition(const ComplexActivityDefinition& def) {
  ValidationReport report;
  if (def.name.empty()) report.push_back({"empty-name", "definition has no name"});
  if (def.atomics.empty()) report.push_back({"empty-set", "no atomic activities"});
  check_items(def.atomics, "At", report);
  check_items(def.contexts, "Ct", report);
  if (def.atomics.size() != def.contexts.size()) {
    report.push_back({"pairing", std::to_string(def.atomics.size()) + " atomic activities but " +
                                     std::to_string(def.contexts.size()) + " context attributes"});
  }
  if (!(def.threshold > 0.0 && def.threshold <= 1.0))
    report.push_back({"threshold-range", "threshold " + std::to_string(def.threshold) + " outside (0,1]"});

  const IdSet at = def.atomic_ids();
  const IdSet ct = def.context_ids();
  check_refs(def.core_atomics, at, "core_atomics", "At", report);
  check_refs(def.start_atomics, at, "start_atomics", "At", report);
  check_refs(def.end_atomics, at, "end_atomics", "At", report);
  check_refs(def.core_contexts, ct, "core_contexts", "Ct", report);
  check_refs(def.start_contexts, ct, "start_contexts", "Ct", report);
  check_refs(def.end_contexts, ct, "end_contexts", "Ct", report);
  if (def.start_atomics.empty()) report.push_back({"empty-set", "start_atomics is empty"});
  if (def.end_atomics.empty()) report.push_back({"empty-set", "end_atomics is empty"});
  return report;
}

DefinitionSet::DefinitionSet(std::vector<ComplexActivityDefinition> defs) {
  for (auto& d : defs) {
    std::string name = d.name;
    if (!defs_.emplace(name, std::move(d)).second)
      throw LookupError("duplicate activity name \"" + name + "\"");
  }
}

const ComplexActivityDefinition* DefinitionSet::find(std::string_view name) const {
  auto it = defs_.find(name);
  return it == defs_.end() ? nullptr : &it->second;
}

const ComplexActivityDefinition& DefinitionSet::at(std::string_view name) const {
  if (const auto* d = find(name)) return *d;
  throw LookupError("unknown activity \"" + std::string(name) + "\"");
}

const ComplexActivityDefinition* DefinitionSet::find_by_code(std::string_view short_code) const {
  for (const auto& [name, def] : defs_)
    if (def.short_code == short_code) return &def;
  return nullptr;
}

std::vector<std::string> DefinitionSet::names() const {
  std::vector<std::string> out;
  out.reserve(defs_.size());
  for (const auto& [name, def] : defs_) out.push_back(name);
  return out;
}

namespace {

template <class Item>
std::vector<Item> items_from_json(const json& arr) {
  std::vector<Item> items;
  for (const auto& j : arr) {
    Item item;
    item.id = j.at("id").get<int>();
    item.label = j.at("label").get<std::string>();
    item.weight = j.at("weight").get<double>();
    items.push_back(std::move(item));
  }
  return items;
}

template <class Item>
json items_to_json(const std::vector<Item>& items) {
  json arr = json::array();
  for (const auto& item : items) arr.push_back({{"id", item.id}, {"label", item.label}, {"weight", item.weight}});
  return arr;
}

IdSet ids_from_json(const json& j, const char* key) {
  IdSet ids;
  if (!j.contains(key)) return ids;
  for (const auto& v : j.at(key)) ids.insert(v.get<int>());
  return ids;
}

ComplexActivityDefinition definition_from_json(const json& j) {
  ComplexActivityDefinition d;
  d.name = j.at("name").get<std::string>();
  d.short_code = j.value("short_code", std::string());
  d.title = j.value("title", d.name);
  d.threshold = j.at("threshold").get<double>();
  d.atomics = items_from_json<AtomicActivity>(j.at("atomics"));
  d.contexts = items_from_json<ContextAttribute>(j.at("contexts"));
  d.core_atomics = ids_from_json(j, "core_atomics");
  d.core_contexts = ids_from_json(j, "core_contexts");
  d.start_atomics = ids_from_json(j, "start_atomics");
  d.start_contexts = ids_from_json(j, "start_contexts");
  d.end_atomics = ids_from_json(j, "end_atomics");
  d.end_contexts = ids_from_json(j, "end_contexts");
  d.notes = j.value("notes", std::string());
  return d;
}

json definition_to_json(const ComplexActivityDefinition& d) {
  json j = {
      {"name", d.name},
      {"short_code", d.short_code},
      {"title", d.title},
      {"threshold", d.threshold},
      {"atomics", items_to_json(d.atomics)},
      {"contexts", items_to_json(d.contexts)},
      {"core_atomics", d.core_atomics},
      {"core_contexts", d.core_contexts},
      {"start_atomics", d.start_atomics},
      {"start_contexts", d.start_contexts},
      {"end_atomics", d.end_atomics},
      {"end_contexts", d.end_contexts},
  };
  if (!d.notes.empty()) j["notes"] = d.notes;
  return j;
}

}  // namespace

std::vector<ComplexActivityDefinition> parse_definition_document(std::string_view text,
                                                                 const std::string& source) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(source, 0, e.what());
  }
  std::vector<ComplexActivityDefinition> defs;
  try {
    const json& list = doc.is_array() ? doc : doc.at("definitions");
    for (const auto& j : list) defs.push_back(definition_from_json(j));
  } catch (const json::exception& e) {
    throw ParseError(source, 0, std::string("bad definition document: ") + e.what());
  }
  if (defs.empty()) throw ParseError(source, 0, "document contains no definitions");

  std::set<std::string> seen;
  for (const auto& d : defs)
    if (!seen.insert(d.name).second) throw LookupError(source + ": duplicate activity name \"" + d.name + "\"");
  return defs;
}

DefinitionSet parse_definitions(std::string_view text, const std::string& source) {
  auto defs = parse_definition_document(text, source);
  std::vector<std::string> violations;
  for (const auto& d : defs) {
    for (const auto& v : validate_definition(d)) violations.push_back(d.name + ": " + v.to_string());
  }
  if (!violations.empty()) throw ValidationError(source + ": invalid definitions", std::move(violations));
  return DefinitionSet(std::move(defs));
}

DefinitionSet load_definitions(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open definition file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_definitions(buf.str(), path.string());
}

std::string serialize_definitions(const DefinitionSet& set) {
  json list = json::array();
  for (const auto& [name, def] : set) list.push_back(definition_to_json(def));
  return json{{"definitions", list}}.dump(2) + "\n";
}

ImportantPair most_important_pair(const ComplexActivityDefinition& def) {
  const AtomicActivity* best = nullptr;
  for (const auto& a : def.atomics) {
    if (!best || a.weight > best->weight || (a.weight == best->weight && a.id < best->id)) best = &a;
  }
  if (!best) throw Error(def.name + ": no atomic activities");
  return {best->id, best->id};
}

}  // namespace adl
