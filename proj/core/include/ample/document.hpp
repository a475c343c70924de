#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ample/cohomology.hpp"
#include "ample/crossed.hpp"
#include "ample/duality.hpp"
#include "ample/groupoid.hpp"
#include "ample/scalar.hpp"
#include "ample/semigroup.hpp"
#include "ample/steinberg.hpp"
#include "ample/twist.hpp"

namespace ample {

/// One directive line inside a record block: `key a b = v` is stored as
/// key="key", args={"a","b"}, value={"v"}; lines without '=' keep value
/// empty.
struct DocLine {
  std::string key;
  std::vector<std::string> args;
  std::vector<std::string> value;

  bool operator==(const DocLine&) const = default;
};

struct RawRecord {
  std::string kind;  // groupoid | semigroup | module | cocycle |
                     // groupoid_cocycle | twist | extension |
                     // crossed_product | steinberg
  std::string name;
  std::vector<DocLine> lines;

  bool operator==(const RawRecord&) const = default;
};

struct ExtensionData {
  bool is_groupoid = false;
  SemigroupHom iota_hom, phi_hom;
  GroupoidFunctor iota_fun, phi_fun;
};

struct RingSpec {
  std::string groupoid;
  std::optional<std::string> twist;  // absent: untwisted (trivial group)
  FieldDesc field;
  std::optional<std::vector<Scalar>> embed;
};

/// A parsed and fully validated document. Records may reference only
/// records declared earlier in the file.
struct Document {
  std::vector<RawRecord> records;

  std::map<std::string, GroupoidPtr> groupoids;
  std::map<std::string, std::vector<std::string>> arrow_names;
  std::map<std::string, SemigroupPtr> semigroups;
  std::map<std::string, std::vector<std::string>> element_names;
  std::map<std::string, AbelianGroupPtr> groups;  // semigroups reused as groups
  std::map<std::string, LauschModule> modules;
  std::map<std::string, TwoCocycle> cocycles;
  std::map<std::string, std::string> cocycle_module;
  std::map<std::string, std::vector<int>> groupoid_cocycles;
  std::map<std::string, std::pair<std::string, std::string>> gc_refs;
  std::map<std::string, TwistExtension> twists;
  std::map<std::string, ExtensionData> extensions;
  std::map<std::string, RingSpec> crossed_specs;
  std::map<std::string, RingSpec> steinberg_specs;

  bool operator==(const Document& o) const { return records == o.records; }
};

/// Parse errors carry "ParseError" with the line number in the witness;
/// unresolved names carry "UnresolvedReference"; validation failures are
/// forwarded from the owning modules.
Document parse_document(const std::string& text);

/// Canonical text form; parse(render(d)) == d.
std::string render_document(const Document& doc);

struct Report {
  std::vector<std::pair<std::string, std::string>> entries;  // key, value
  bool ok = true;

  void put(const std::string& k, const std::string& v) {
    entries.emplace_back(k, v);
  }
  std::string machine() const;
  std::string human() const;
};

struct CommandOptions {
  long cap = 1 << 20;           // bisection-enumeration cap
  long table_cap = 10'000'000;  // cocycle/cochain table cap
  unsigned seed = 0;
  std::optional<FieldDesc> field;
};

/// Executes one CLI verb against a document. Verbs: gamma-c, germ,
/// eta-eps, h2, classify-twists, baer, crossed, steinberg, iso-check,
/// verify-all. Unknown verbs raise UnknownVerb.
Report run_command(const std::string& verb,
                   const std::map<std::string, std::string>& args,
                   const Document& doc, const CommandOptions& opts = {});

}  // namespace ample
