#include "ample/document.hpp"

#include <algorithm>
#include <sstream>

#include "ample/verify.hpp"

namespace ample {

namespace {

std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == '#') break;
    if (std::isspace(static_cast<unsigned char>(c))) {
      if (!cur.empty()) {
        out.push_back(cur);
        cur.clear();
      }
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

[[noreturn]] void parse_fail(int lineno, const std::string& msg) {
  fail("ParseError", "line " + std::to_string(lineno) + ": " + msg, {lineno});
}

int index_of_name(const std::vector<std::string>& names, const std::string& x,
                  int lineno, const std::string& what) {
  auto it = std::find(names.begin(), names.end(), x);
  if (it == names.end())
    parse_fail(lineno, "unknown " + what + " '" + x + "'");
  return static_cast<int>(it - names.begin());
}

const std::vector<std::string> kKinds = {
    "groupoid",  "semigroup", "module",          "cocycle", "groupoid_cocycle",
    "twist",     "extension", "crossed_product", "steinberg"};

struct RecordValidator {
  Document& doc;

  const std::vector<std::string>& names_of_groupoid(const std::string& g) {
    return doc.arrow_names.at(g);
  }

  GroupoidPtr groupoid_ref(const RawRecord& rec, const std::string& name) {
    auto it = doc.groupoids.find(name);
    if (it == doc.groupoids.end())
      fail("UnresolvedReference", "groupoid '" + name + "' in record '" +
                                      rec.name + "'");
    return it->second;
  }
  SemigroupPtr semigroup_ref(const RawRecord& rec, const std::string& name) {
    auto it = doc.semigroups.find(name);
    if (it == doc.semigroups.end())
      fail("UnresolvedReference", "semigroup '" + name + "' in record '" +
                                      rec.name + "'");
    return it->second;
  }
  AbelianGroupPtr group_ref(const RawRecord& rec, const std::string& name) {
    auto hit = doc.groups.find(name);
    if (hit != doc.groups.end()) return hit->second;
    auto S = semigroup_ref(rec, name);
    auto A = std::make_shared<const FiniteAbelianGroup>(
        validate_abelian_group(S->n, S->mult));
    doc.groups.emplace(name, A);
    return A;
  }

  // --- per-kind validation -------------------------------------------

  void groupoid_record(const RawRecord& rec) {
    std::vector<std::string> arrows, units;
    for (const auto& ln : rec.lines) {
      if (ln.key == "arrows") arrows = ln.args;
      if (ln.key == "units") units = ln.args;
    }
    if (arrows.empty()) fail("ParseError", "groupoid needs an arrows line");
    const int n = static_cast<int>(arrows.size());
    std::vector<int> comp(n * n, -1), inv(n, -1), dom(n, -1), ran(n, -1);
    std::vector<int> unit_idx;
    std::vector<char> is_unit(n, 0);
    for (const auto& u : units) {
      int i = index_of_name(arrows, u, 0, "arrow");
      unit_idx.push_back(i);
      is_unit[i] = 1;
      dom[i] = ran[i] = inv[i] = i;
    }
    for (const auto& ln : rec.lines) {
      if (ln.key == "dom" || ln.key == "ran") {
        if (ln.args.size() != 1 || ln.value.size() != 1)
          fail("ParseError", "dom/ran lines read `dom a = u`");
        int a = index_of_name(arrows, ln.args[0], 0, "arrow");
        int u = index_of_name(arrows, ln.value[0], 0, "arrow");
        (ln.key == "dom" ? dom : ran)[a] = u;
      } else if (ln.key == "inv") {
        int a = index_of_name(arrows, ln.args[0], 0, "arrow");
        int b = index_of_name(arrows, ln.value[0], 0, "arrow");
        inv[a] = b;
        inv[b] = a;
      } else if (ln.key == "comp") {
        if (ln.args.size() != 2 || ln.value.size() != 1)
          fail("ParseError", "comp lines read `comp a b = c`");
        int a = index_of_name(arrows, ln.args[0], 0, "arrow");
        int b = index_of_name(arrows, ln.args[1], 0, "arrow");
        int c = index_of_name(arrows, ln.value[0], 0, "arrow");
        comp[a * n + b] = c;
      }
    }
    for (int a = 0; a < n; ++a) {
      if (dom[a] < 0 || ran[a] < 0)
        fail("ParseError", "arrow '" + arrows[a] + "' is missing dom or ran");
      if (inv[a] < 0)
        fail("ParseError", "arrow '" + arrows[a] + "' is missing inv");
    }
    // unit compositions are forced by the axioms; explicit entries may
    // not contradict them
    for (int a = 0; a < n; ++a) {
      for (auto [i, j] : {std::pair<int, int>{ran[a] * n + a, a},
                          {a * n + dom[a], a}}) {
        if (comp[i] >= 0 && comp[i] != j)
          fail("ParseError", "unit product contradicts the axioms for " +
                                 arrows[a]);
        comp[i] = j;
      }
    }
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        if (dom[a] == ran[b] && comp[a * n + b] < 0)
          fail("ParseError", "missing product " + arrows[a] + " " + arrows[b]);
    auto G = std::make_shared<const FiniteGroupoid>(
        validate_groupoid(n, std::move(comp), std::move(inv), std::move(dom),
                          std::move(ran), unit_idx));
    doc.groupoids.emplace(rec.name, std::move(G));
    doc.arrow_names.emplace(rec.name, arrows);
  }

  void semigroup_record(const RawRecord& rec) {
    std::vector<std::string> elements;
    std::optional<std::string> zero;
    for (const auto& ln : rec.lines) {
      if (ln.key == "elements") elements = ln.args;
      if (ln.key == "zero") zero = ln.args.at(0);
    }
    if (elements.empty()) fail("ParseError", "semigroup needs elements");
    const int n = static_cast<int>(elements.size());
    std::vector<int> mult(n * n, -1);
    int z = -1;
    if (zero) {
      z = index_of_name(elements, *zero, 0, "element");
      for (int i = 0; i < n; ++i) mult[z * n + i] = mult[i * n + z] = z;
    }
    for (const auto& ln : rec.lines) {
      if (ln.key != "mult") continue;
      if (ln.args.size() != 2 || ln.value.size() != 1)
        fail("ParseError", "mult lines read `mult a b = c`");
      int a = index_of_name(elements, ln.args[0], 0, "element");
      int b = index_of_name(elements, ln.args[1], 0, "element");
      mult[a * n + b] = index_of_name(elements, ln.value[0], 0, "element");
    }
    for (int i = 0; i < n * n; ++i)
      if (mult[i] < 0)
        fail("ParseError", "incomplete multiplication table for " + rec.name);
    auto S = std::make_shared<const FiniteInverseSemigroup>(
        validate_inverse_semigroup(n, std::move(mult)));
    doc.semigroups.emplace(rec.name, std::move(S));
    doc.element_names.emplace(rec.name, elements);
  }

  void module_record(const RawRecord& rec) {
    std::string over, kern;
    for (const auto& ln : rec.lines) {
      if (ln.key == "over") over = ln.args.at(0);
      if (ln.key == "kernel") kern = ln.args.at(0);
    }
    auto S = semigroup_ref(rec, over);
    auto K = semigroup_ref(rec, kern);
    const auto& sn = doc.element_names.at(over);
    const auto& kn = doc.element_names.at(kern);
    std::vector<int> p(K->n, -1), act(S->n * K->n, -1);
    for (const auto& ln : rec.lines) {
      if (ln.key == "p") {
        int k = index_of_name(kn, ln.args.at(0), 0, "kernel element");
        p[k] = index_of_name(sn, ln.value.at(0), 0, "element");
      } else if (ln.key == "act") {
        int s = index_of_name(sn, ln.args.at(0), 0, "element");
        int k = index_of_name(kn, ln.args.at(1), 0, "kernel element");
        act[s * K->n + k] =
            index_of_name(kn, ln.value.at(0), 0, "kernel element");
      }
    }
    for (int v : p)
      if (v < 0) fail("ParseError", "module p table incomplete");
    for (int v : act)
      if (v < 0) fail("ParseError", "module action table incomplete");
    doc.modules.emplace(rec.name,
                        validate_module(S, K, std::move(p), std::move(act)));
  }

  void cocycle_record(const RawRecord& rec) {
    std::string mod;
    for (const auto& ln : rec.lines)
      if (ln.key == "module") mod = ln.args.at(0);
    auto it = doc.modules.find(mod);
    if (it == doc.modules.end())
      fail("UnresolvedReference", "module '" + mod + "'");
    const LauschModule& M = it->second;
    const int n = M.S->n;
    // find element name tables by searching the stored semigroups
    const std::vector<std::string>* sn = nullptr;
    const std::vector<std::string>* kn = nullptr;
    for (const auto& [nm, ptr] : doc.semigroups) {
      if (ptr == M.S) sn = &doc.element_names.at(nm);
      if (ptr == M.K) kn = &doc.element_names.at(nm);
    }
    if (!sn || !kn) fail("UnresolvedReference", "module endpoints");
    TwoCocycle c = trivial_cocycle(M);
    for (const auto& ln : rec.lines) {
      if (ln.key != "entry") continue;
      int s = index_of_name(*sn, ln.args.at(0), 0, "element");
      int t = index_of_name(*sn, ln.args.at(1), 0, "element");
      c.table[s * n + t] = index_of_name(*kn, ln.value.at(0), 0, "kernel element");
    }
    auto check = validate_cocycle(M, c.table);
    if (!check.valid) {
      std::vector<int> w;
      if (!check.fiber_violations.empty())
        w = {check.fiber_violations[0][0], check.fiber_violations[0][1]};
      else
        w = {check.cocycle_violations[0][0], check.cocycle_violations[0][1],
             check.cocycle_violations[0][2]};
      fail("InvalidCocycle", "record '" + rec.name + "' violates the cocycle conditions", w);
    }
    bool normalized = true;
    for (int e : M.S->idempotents)
      if (!M.K->is_idempotent(c.table[e * n + e])) normalized = false;
    c.normalized = normalized;
    doc.cocycles.emplace(rec.name, std::move(c));
    doc.cocycle_module.emplace(rec.name, mod);
  }

  void groupoid_cocycle_record(const RawRecord& rec) {
    std::string gname, aname;
    for (const auto& ln : rec.lines) {
      if (ln.key == "groupoid") gname = ln.args.at(0);
      if (ln.key == "group") aname = ln.args.at(0);
    }
    auto G = groupoid_ref(rec, gname);
    auto A = group_ref(rec, aname);
    const auto& an = names_of_groupoid(gname);
    const auto& gn = doc.element_names.at(aname);
    std::vector<int> sigma(G->n * G->n, A->identity);
    for (const auto& ln : rec.lines) {
      if (ln.key != "entry") continue;
      int g = index_of_name(an, ln.args.at(0), 0, "arrow");
      int h = index_of_name(an, ln.args.at(1), 0, "arrow");
      if (!G->composable(g, h))
        fail("BadTable", "sigma entry on a non-composable pair", {g, h});
      sigma[g * G->n + h] = index_of_name(gn, ln.value.at(0), 0, "group element");
    }
    for (int u : G->units)
      if (sigma[u * G->n + u] != A->identity)
        fail("NotNormalized", "sigma(x,x) must be the identity", {u});
    for (int g = 0; g < G->n; ++g)
      for (int h = 0; h < G->n; ++h) {
        if (!G->composable(g, h)) continue;
        for (int k = 0; k < G->n; ++k) {
          if (!G->composable(h, k)) continue;
          int lhs = A->at(sigma[h * G->n + k], sigma[g * G->n + G->at(h, k)]);
          int rhs = A->at(sigma[g * G->n + h], sigma[G->at(g, h) * G->n + k]);
          if (lhs != rhs)
            fail("NotACocycle", "cocycle identity fails", {g, h, k});
        }
      }
    doc.groupoid_cocycles.emplace(rec.name, std::move(sigma));
    doc.gc_refs.emplace(rec.name, std::make_pair(gname, aname));
  }

  void twist_record(const RawRecord& rec) {
    std::string gname, aname, cocycle_name, total_name;
    for (const auto& ln : rec.lines) {
      if (ln.key == "groupoid") gname = ln.args.at(0);
      if (ln.key == "group") aname = ln.args.at(0);
      if (ln.key == "cocycle") cocycle_name = ln.args.at(0);
      if (ln.key == "total") total_name = ln.args.at(0);
    }
    auto G = groupoid_ref(rec, gname);
    auto A = group_ref(rec, aname);
    if (!cocycle_name.empty()) {
      auto it = doc.groupoid_cocycles.find(cocycle_name);
      if (it == doc.groupoid_cocycles.end())
        fail("UnresolvedReference", "groupoid_cocycle '" + cocycle_name + "'");
      const auto& refs = doc.gc_refs.at(cocycle_name);
      if (refs.first != gname || refs.second != aname)
        fail("UnresolvedReference",
             "cocycle '" + cocycle_name + "' is over different data");
      doc.twists.emplace(rec.name,
                         twist_from_groupoid_cocycle(A, G, it->second));
      return;
    }
    auto Sigma = groupoid_ref(rec, total_name);
    const auto& an = names_of_groupoid(gname);
    const auto& sn = names_of_groupoid(total_name);
    const auto& gn = doc.element_names.at(aname);
    const int nu = static_cast<int>(G->units.size());
    std::vector<int> unit_pos(G->n, -1);
    for (int ui = 0; ui < nu; ++ui) unit_pos[G->units[ui]] = ui;
    std::vector<int> iota_map(A->n * nu, -1), phi_map(Sigma->n, -1);
    for (const auto& ln : rec.lines) {
      if (ln.key == "iota") {
        int a = index_of_name(gn, ln.args.at(0), 0, "group element");
        int u = index_of_name(an, ln.args.at(1), 0, "arrow");
        if (unit_pos[u] < 0) fail("ParseError", "iota argument is not a unit");
        iota_map[a * nu + unit_pos[u]] =
            index_of_name(sn, ln.value.at(0), 0, "arrow");
      } else if (ln.key == "phi") {
        int s = index_of_name(sn, ln.args.at(0), 0, "arrow");
        phi_map[s] = index_of_name(an, ln.value.at(0), 0, "arrow");
      }
    }
    for (int v : iota_map)
      if (v < 0) fail("ParseError", "twist iota table incomplete");
    for (int v : phi_map)
      if (v < 0) fail("ParseError", "twist phi table incomplete");
    doc.twists.emplace(
        rec.name, make_twist_extension(A, G, Sigma, std::move(iota_map),
                                       std::move(phi_map),
                                       /*require_central=*/false));
  }

  void extension_record(const RawRecord& rec) {
    std::string kern, total, quot;
    for (const auto& ln : rec.lines) {
      if (ln.key == "kernel") kern = ln.args.at(0);
      if (ln.key == "total") total = ln.args.at(0);
      if (ln.key == "quotient") quot = ln.args.at(0);
    }
    bool sg = doc.semigroups.count(kern) && doc.semigroups.count(total) &&
              doc.semigroups.count(quot);
    bool gp = doc.groupoids.count(kern) && doc.groupoids.count(total) &&
              doc.groupoids.count(quot);
    if (!sg && !gp)
      fail("UnresolvedReference",
           "extension ends must all be semigroups or all groupoids");
    ExtensionData data;
    data.is_groupoid = gp;
    const auto& kn = gp ? doc.arrow_names.at(kern) : doc.element_names.at(kern);
    const auto& tn = gp ? doc.arrow_names.at(total) : doc.element_names.at(total);
    const auto& qn = gp ? doc.arrow_names.at(quot) : doc.element_names.at(quot);
    std::vector<int> iota(kn.size(), -1), phi(tn.size(), -1);
    for (const auto& ln : rec.lines) {
      if (ln.key == "iota") {
        int k = index_of_name(kn, ln.args.at(0), 0, "kernel element");
        iota[k] = index_of_name(tn, ln.value.at(0), 0, "total element");
      } else if (ln.key == "phi") {
        int t = index_of_name(tn, ln.args.at(0), 0, "total element");
        phi[t] = index_of_name(qn, ln.value.at(0), 0, "quotient element");
      }
    }
    for (int v : iota)
      if (v < 0) fail("ParseError", "extension iota incomplete");
    for (int v : phi)
      if (v < 0) fail("ParseError", "extension phi incomplete");
    ExtensionReport report;
    if (gp) {
      data.iota_fun = make_functor(doc.groupoids.at(kern),
                                   doc.groupoids.at(total), std::move(iota));
      data.phi_fun = make_functor(doc.groupoids.at(total),
                                  doc.groupoids.at(quot), std::move(phi));
      report = check_extension_groupoids(data.iota_fun, data.phi_fun);
    } else {
      data.iota_hom = make_hom(doc.semigroups.at(kern),
                               doc.semigroups.at(total), std::move(iota));
      data.phi_hom = make_hom(doc.semigroups.at(total),
                              doc.semigroups.at(quot), std::move(phi));
      report = check_extension_semigroups(data.iota_hom, data.phi_hom);
    }
    for (const auto& cond : report.conditions)
      if (!cond.pass)
        fail("BadExtension",
             "extension '" + rec.name + "' fails " + cond.name, cond.witness);
    doc.extensions.emplace(rec.name, std::move(data));
  }

  void ring_record(const RawRecord& rec, bool steinberg) {
    RingSpec spec;
    std::string group_name;
    for (const auto& ln : rec.lines) {
      if (ln.key == "groupoid") spec.groupoid = ln.args.at(0);
      if (ln.key == "twist") spec.twist = ln.args.at(0);
      if (ln.key == "field") {
        const std::string& f = ln.args.at(0);
        spec.field = (f == "Q" || f == "q") ? FieldDesc::Q()
                                            : FieldDesc::Fp(std::stoll(f));
      }
    }
    groupoid_ref(rec, spec.groupoid);
    if (spec.twist) {
      auto it = doc.twists.find(*spec.twist);
      if (it == doc.twists.end())
        fail("UnresolvedReference", "twist '" + *spec.twist + "'");
      // embed lines refer to the twist's group
      const auto& A = it->second.A;
      std::string group_record;
      for (const auto& [nm, ptr] : doc.groups)
        if (ptr == A) group_record = nm;
      std::vector<Scalar> embed(A->n, Scalar::zero(spec.field));
      bool any = false;
      for (const auto& ln : rec.lines) {
        if (ln.key != "embed") continue;
        if (group_record.empty())
          fail("UnresolvedReference", "embed lines need the twist's group");
        any = true;
        int a = index_of_name(doc.element_names.at(group_record),
                              ln.args.at(0), 0, "group element");
        std::string lit;
        for (const auto& tok : ln.value) {
          if (!lit.empty()) lit += " ";
          lit += tok;
        }
        embed[a] = parse_scalar(lit, spec.field);
      }
      if (any) spec.embed = std::move(embed);
    }
    (steinberg ? doc.steinberg_specs : doc.crossed_specs)
        .emplace(rec.name, std::move(spec));
  }

  void dispatch(const RawRecord& rec) {
    if (rec.kind == "groupoid") return groupoid_record(rec);
    if (rec.kind == "semigroup") return semigroup_record(rec);
    if (rec.kind == "module") return module_record(rec);
    if (rec.kind == "cocycle") return cocycle_record(rec);
    if (rec.kind == "groupoid_cocycle") return groupoid_cocycle_record(rec);
    if (rec.kind == "twist") return twist_record(rec);
    if (rec.kind == "extension") return extension_record(rec);
    if (rec.kind == "crossed_product") return ring_record(rec, false);
    if (rec.kind == "steinberg") return ring_record(rec, true);
    fail("ParseError", "unknown record kind '" + rec.kind + "'");
  }
};

}  // namespace

Document parse_document(const std::string& text) {
  Document doc;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  RawRecord cur;
  bool inside = false;
  while (std::getline(in, line)) {
    ++lineno;
    auto toks = tokenize(line);
    if (toks.empty()) continue;
    if (!inside) {
      if (toks.size() != 3 || toks[2] != "{")
        parse_fail(lineno, "expected `<kind> <name> {`");
      if (std::find(kKinds.begin(), kKinds.end(), toks[0]) == kKinds.end())
        parse_fail(lineno, "unknown record kind '" + toks[0] + "'");
      cur = RawRecord{toks[0], toks[1], {}};
      inside = true;
      continue;
    }
    if (toks.size() == 1 && toks[0] == "}") {
      for (const auto& r : doc.records)
        if (r.name == cur.name)
          parse_fail(lineno, "duplicate record name '" + cur.name + "'");
      doc.records.push_back(cur);
      inside = false;
      continue;
    }
    DocLine dl;
    dl.key = toks[0];
    auto eq = std::find(toks.begin() + 1, toks.end(), "=");
    dl.args.assign(toks.begin() + 1, eq);
    if (eq != toks.end()) dl.value.assign(eq + 1, toks.end());
    cur.lines.push_back(std::move(dl));
  }
  if (inside) parse_fail(lineno, "unterminated record '" + cur.name + "'");

  RecordValidator v{doc};
  for (const auto& rec : doc.records) v.dispatch(rec);
  return doc;
}

std::string render_document(const Document& doc) {
  std::ostringstream out;
  for (const auto& rec : doc.records) {
    out << rec.kind << " " << rec.name << " {\n";
    for (const auto& ln : rec.lines) {
      out << "  " << ln.key;
      for (const auto& a : ln.args) out << " " << a;
      if (!ln.value.empty()) {
        out << " =";
        for (const auto& vv : ln.value) out << " " << vv;
      }
      out << "\n";
    }
    out << "}\n";
  }
  return out.str();
}

std::string Report::machine() const {
  std::ostringstream out;
  for (const auto& [k, v] : entries) out << k << "=" << v << "\n";
  out << "ok=" << (ok ? "true" : "false") << "\n";
  return out.str();
}

std::string Report::human() const {
  std::ostringstream out;
  for (const auto& [k, v] : entries) out << k << ": " << v << "\n";
  out << (ok ? "all checks passed" : "FAILURES present") << "\n";
  return out.str();
}

namespace {

std::string arg_or_fail(const std::map<std::string, std::string>& args,
                        const std::string& key) {
  auto it = args.find(key);
  if (it == args.end())
    fail("ParseError", "missing argument --" + key);
  return it->second;
}

FieldDesc field_from(const std::map<std::string, std::string>& args,
                     const CommandOptions& opts) {
  auto it = args.find("field");
  if (it != args.end())
    return (it->second == "Q" || it->second == "q")
               ? FieldDesc::Q()
               : FieldDesc::Fp(std::stoll(it->second));
  if (opts.field) return *opts.field;
  fail("ParseError", "a field is required (--field p|Q)");
}

TwistExtension central_twist(const Document& doc, const std::string& name) {
  auto it = doc.twists.find(name);
  if (it == doc.twists.end())
    fail("UnresolvedReference", "twist '" + name + "'");
  if (!is_central(it->second))
    fail("NotCentral", "twist '" + name + "' is not central");
  return it->second;
}

void emit_structure_constants(Report& rep, const FiniteAlgebra& alg,
                              const std::vector<std::string>& names) {
  for (int i = 0; i < alg.dim; ++i)
    for (int j = 0; j < alg.dim; ++j) {
      const Vec& v = alg.basis_product(i, j);
      std::string val;
      bool nonzero = false;
      for (int k = 0; k < alg.dim; ++k) {
        if (!val.empty()) val += ", ";
        val += v[k].str();
        nonzero = nonzero || !v[k].is_zero();
      }
      if (nonzero)
        rep.put("mult " + names[i] + " " + names[j], val);
    }
}

}  // namespace

Report run_command(const std::string& verb,
                   const std::map<std::string, std::string>& args,
                   const Document& doc, const CommandOptions& opts) {
  Report rep;

  if (verb == "gamma-c") {
    std::string name = arg_or_fail(args, "record");
    auto it = doc.groupoids.find(name);
    if (it == doc.groupoids.end())
      fail("UnresolvedReference", "groupoid '" + name + "'");
    auto SG = gamma_c(it->second, opts.cap);
    rep.put("record", name);
    rep.put("elements", std::to_string(SG.size()));
    rep.put("idempotents",
            std::to_string(SG.boolean->S.idempotents.size()));
    rep.put("atoms", std::to_string(SG.boolean->atoms.size()));
    return rep;
  }

  if (verb == "germ") {
    std::string name = arg_or_fail(args, "record");
    auto it = doc.semigroups.find(name);
    if (it == doc.semigroups.end())
      fail("UnresolvedReference", "semigroup '" + name + "'");
    auto B = std::make_shared<const BooleanStructure>(is_boolean(*it->second));
    auto GG = germ_groupoid(B);
    rep.put("record", name);
    rep.put("arrows", std::to_string(GG.groupoid->n));
    rep.put("units", std::to_string(GG.groupoid->units.size()));
    return rep;
  }

  if (verb == "eta-eps") {
    std::string name = arg_or_fail(args, "record");
    auto it = doc.groupoids.find(name);
    if (it == doc.groupoids.end())
      fail("UnresolvedReference", "groupoid '" + name + "'");
    auto rt = eta_roundtrip(it->second, opts.cap);
    auto ert = epsilon_roundtrip(rt.bisections.boolean, opts.cap);
    rep.put("record", name);
    rep.put("eta_isomorphism", "verified");
    rep.put("epsilon_isomorphism", "verified");
    rep.put("bisections", std::to_string(rt.bisections.size()));
    return rep;
  }

  if (verb == "h2") {
    LauschModule M;
    if (args.count("module")) {
      auto it = doc.modules.find(args.at("module"));
      if (it == doc.modules.end())
        fail("UnresolvedReference", "module '" + args.at("module") + "'");
      M = it->second;
      rep.put("module", args.at("module"));
    } else {
      std::string gname = arg_or_fail(args, "groupoid");
      std::string aname = arg_or_fail(args, "group");
      auto git = doc.groupoids.find(gname);
      if (git == doc.groupoids.end())
        fail("UnresolvedReference", "groupoid '" + gname + "'");
      auto ait = doc.groups.find(aname);
      AbelianGroupPtr A;
      if (ait != doc.groups.end()) {
        A = ait->second;
      } else {
        auto sit = doc.semigroups.find(aname);
        if (sit == doc.semigroups.end())
          fail("UnresolvedReference", "group '" + aname + "'");
        A = std::make_shared<const FiniteAbelianGroup>(
            validate_abelian_group(sit->second->n, sit->second->mult));
      }
      auto SG = gamma_c(git->second, opts.cap);
      auto tilde = tilde_A(A, static_cast<int>(git->second->units.size()),
                           opts.cap);
      M = module_tilde_A(SG, tilde);
      rep.put("groupoid", gname);
      rep.put("group", aname);
    }
    bool oracle = args.count("oracle") && args.at("oracle") == "true";
    auto h = h2(M, opts.table_cap, !oracle);
    rep.put("mode", oracle ? "oracle" : "pruned");
    rep.put("classes", std::to_string(h.h2_order));
    rep.put("z2", std::to_string(h.z2_total));
    rep.put("b2", std::to_string(h.b2_total));
    rep.put("z2_normalized", std::to_string(h.z2_normalized));
    rep.put("b2_normalized", std::to_string(h.b2_normalized));
    rep.put("group_structure", h.group_structure);
    return rep;
  }

  if (verb == "classify-twists") {
    std::string gname = arg_or_fail(args, "groupoid");
    std::string aname = arg_or_fail(args, "group");
    auto git = doc.groupoids.find(gname);
    if (git == doc.groupoids.end())
      fail("UnresolvedReference", "groupoid '" + gname + "'");
    auto sit = doc.semigroups.find(aname);
    if (sit == doc.semigroups.end())
      fail("UnresolvedReference", "group '" + aname + "'");
    auto A = std::make_shared<const FiniteAbelianGroup>(
        validate_abelian_group(sit->second->n, sit->second->mult));
    auto G = git->second;
    auto SG = gamma_c(G, opts.cap);
    auto tilde = tilde_A(A, static_cast<int>(G->units.size()), opts.cap);
    auto M = module_tilde_A(SG, tilde);
    auto h = h2(M, opts.table_cap, true);
    std::vector<TwistExtension> realized;
    for (const auto& c : h.representatives)
      realized.push_back(realize_class(G, SG, tilde, M, c, opts.cap));
    bool bijective = true;
    for (std::size_t i = 0; i < realized.size(); ++i) {
      auto cls = twist_class_cocycle(realized[i], opts.cap);
      if (!cohomologous(M, cls.cocycle, h.representatives[i]))
        bijective = false;
      for (std::size_t j = i + 1; j < realized.size(); ++j)
        if (twists_equivalent(realized[i], realized[j])) bijective = false;
    }
    rep.put("classes", std::to_string(h.h2_order));
    rep.put("realized", std::to_string(realized.size()));
    rep.put("classification_bijective", bijective ? "true" : "false");
    rep.ok = bijective;
    return rep;
  }

  if (verb == "baer") {
    auto T1 = central_twist(doc, arg_or_fail(args, "lhs"));
    auto T2 = central_twist(doc, arg_or_fail(args, "rhs"));
    auto sum = baer_sum(T1, T2);
    auto c1 = twist_class_cocycle(T1, opts.cap);
    auto c2 = twist_class_cocycle(T2, opts.cap);
    auto cs = twist_class_cocycle(sum, opts.cap);
    auto prod = cocycle_product(c1.M, c1.cocycle, c2.cocycle);
    bool matches = cohomologous(c1.M, cs.cocycle, prod).has_value();
    rep.put("sum_arrows", std::to_string(sum.Sigma->n));
    rep.put("class_product_matches", matches ? "true" : "false");
    rep.ok = matches;
    return rep;
  }

  if (verb == "crossed" || verb == "steinberg") {
    std::string name = arg_or_fail(args, "record");
    const auto& specs =
        verb == "crossed" ? doc.crossed_specs : doc.steinberg_specs;
    auto it = specs.find(name);
    if (it == specs.end())
      fail("UnresolvedReference", "record '" + name + "'");
    const RingSpec& spec = it->second;
    auto G = doc.groupoids.at(spec.groupoid);
    TwistExtension tw =
        spec.twist ? central_twist(doc, *spec.twist)
                   : trivial_twist(std::make_shared<const FiniteAbelianGroup>(
                                       validate_abelian_group(1, {0})),
                                   G);
    rep.put("record", name);
    rep.put("field", spec.field.str());
    if (verb == "crossed") {
      auto setup = build_crossed_from_twist(
          tw, spec.field, spec.embed ? &*spec.embed : nullptr, opts.cap);
      rep.put("dim", std::to_string(setup.cp.dim()));
      if (setup.cp.dim() == G->n)
        emit_structure_constants(rep, setup.cp.arrow_alg,
                                 doc.arrow_names.at(spec.groupoid));
    } else {
      std::vector<Scalar> embed;
      if (spec.embed) {
        embed = *spec.embed;
      } else {
        auto found = find_unit_embedding(spec.field, *tw.A);
        if (!found) fail("NoEmbedding", "no embedding into " + spec.field.str());
        embed = *found;
      }
      auto alg = build_steinberg(tw, spec.field, embed);
      rep.put("dim", std::to_string(alg.dim()));
      emit_structure_constants(rep, alg.alg, doc.arrow_names.at(spec.groupoid));
    }
    return rep;
  }

  if (verb == "iso-check") {
    auto tw = central_twist(doc, arg_or_fail(args, "twist"));
    FieldDesc field = field_from(args, opts);
    auto setup = build_crossed_from_twist(tw, field, nullptr, opts.cap);
    auto alg = build_steinberg(tw, field, setup.embed);
    iso_psi(setup, alg);
    rep.put("isomorphism", "verified");
    rep.put("dim", std::to_string(setup.cp.dim()));
    rep.put("field", field.str());
    return rep;
  }

  if (verb == "verify-all") {
    auto results = run_acceptance(opts.cap, opts.seed);
    bool all = true;
    for (const auto& r : results) {
      rep.put("criterion " + std::to_string(r.number) + " (" + r.name + ")",
              (r.pass ? "pass" : "FAIL") +
                  (r.detail.empty() ? "" : "; " + r.detail));
      all = all && r.pass;
    }
    rep.put("criteria_passed",
            std::to_string(std::count_if(results.begin(), results.end(),
                                         [](const auto& r) { return r.pass; })) +
                "/" + std::to_string(results.size()));
    rep.ok = all;
    return rep;
  }

  fail("UnknownVerb", "unknown verb '" + verb + "'");
}

}  // namespace ample
