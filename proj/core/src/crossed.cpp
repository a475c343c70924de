#include "ample/crossed.hpp"

#include <algorithm>
#include <map>

namespace ample {

Vec FunctionRingAction::apply(int s, const Vec& r) const {
  Vec out = zero_vec(field, n_units);
  for (int ui = 0; ui < n_units; ++ui) {
    int dst = alpha[s * n_units + ui];
    if (dst >= 0) out[dst] = out[dst] + r[ui];
  }
  return out;
}

Vec FunctionRingAction::indicator_of(const Bits& units) const {
  Vec out = zero_vec(field, n_units);
  for (int g : units.elements()) out[unit_pos[g]] = Scalar::one(field);
  return out;
}

Vec FunctionRingAction::indicator(int e) const {
  return indicator_of(S.labels[e]);
}

FunctionRingAction build_action(GroupoidPtr G, const FieldDesc& field,
                                long cap) {
  FunctionRingAction A;
  A.G = G;
  A.field = field;
  A.S = gamma_c(G, cap);
  A.n_units = static_cast<int>(G->units.size());
  A.unit_pos.assign(G->n, -1);
  for (int ui = 0; ui < A.n_units; ++ui) A.unit_pos[G->units[ui]] = ui;

  const int nS = A.S.size();
  A.alpha.assign(nS * A.n_units, -1);
  for (int s = 0; s < nS; ++s)
    for (int g : A.S.labels[s].elements())
      A.alpha[s * A.n_units + A.unit_pos[G->dom[g]]] = A.unit_pos[G->ran[g]];

  const auto& Ss = A.S.boolean->S;
  // alpha is a homomorphism into proper endomorphisms
  for (int s = 0; s < nS; ++s)
    for (int t = 0; t < nS; ++t)
      for (int ui = 0; ui < A.n_units; ++ui) {
        int via = A.alpha[t * A.n_units + ui];
        int lhs = via < 0 ? -1 : A.alpha[s * A.n_units + via];
        int rhs = A.alpha[Ss.at(s, t) * A.n_units + ui];
        if (lhs != rhs)
          fail("InconsistentVerdict", "alpha is not multiplicative", {s, t, ui});
      }
  for (int s = 0; s < nS; ++s) {
    // image is exactly the range support, and idempotents act by cutoff
    std::vector<char> hit(A.n_units, 0);
    for (int ui = 0; ui < A.n_units; ++ui) {
      int dst = A.alpha[s * A.n_units + ui];
      if (dst < 0) continue;
      if (!A.S.labels[Ss.range_idem(s)].test(G->units[dst]))
        fail("InconsistentVerdict", "alpha image leaves the range", {s, ui});
      hit[dst] = 1;
    }
    for (int g : A.S.labels[Ss.range_idem(s)].elements())
      if (!hit[A.unit_pos[g]])
        fail("InconsistentVerdict", "alpha image misses the range", {s});
    if (Ss.is_idempotent(s))
      for (int ui = 0; ui < A.n_units; ++ui) {
        int expect = A.S.labels[s].test(G->units[ui]) ? ui : -1;
        if (A.alpha[s * A.n_units + ui] != expect)
          fail("InconsistentVerdict", "idempotent does not act by cutoff",
               {s, ui});
      }
  }
  // zero-preserving and idempotent separating
  if (!Ss.zero) fail("InconsistentVerdict", "bisection semigroup lost its zero");
  for (int ui = 0; ui < A.n_units; ++ui)
    if (A.alpha[*Ss.zero * A.n_units + ui] != -1)
      fail("InconsistentVerdict", "zero does not act as zero", {ui});
  for (int e : Ss.idempotents)
    for (int f : Ss.idempotents)
      if (e != f &&
          std::equal(A.alpha.begin() + e * A.n_units,
                     A.alpha.begin() + (e + 1) * A.n_units,
                     A.alpha.begin() + f * A.n_units))
        fail("InconsistentVerdict", "action is not idempotent separating",
             {e, f});
  return A;
}

UnitSheaf unit_sheaf(const FunctionRingAction& action, long cap) {
  if (action.field.rational)
    fail("SizeLimitExceeded",
         "rational unit group is infinite; unit sheaf is tabulated over "
         "prime fields only");
  const auto p = action.field.p;
  const int m = static_cast<int>(p - 1);
  // multiplicative group of the field, elements indexed 0..p-2 as 1..p-1
  std::vector<int> mult(m * m, -1);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      long v = ((i + 1) * (j + 1)) % p;
      mult[i * m + j] = static_cast<int>(v - 1);
    }
  UnitSheaf U;
  U.units_group = std::make_shared<const FiniteAbelianGroup>(
      validate_abelian_group(m, std::move(mult)));
  for (int i = 0; i < m; ++i)
    U.embedding.push_back(Scalar::residue(i + 1, p));
  U.tilde = tilde_A(U.units_group, action.n_units, cap);
  U.M = module_tilde_A(action.S, U.tilde);
  return U;
}

Vec CrossedProduct::ambient_of(int s, const Vec& r) const {
  Vec out = zero_vec(action.field, ambient_dim);
  for (int ui = 0; ui < action.n_units; ++ui) out[ambient_index(s, ui)] = r[ui];
  return out;
}

namespace {

// single-term basis product: (1_x d_s)(1_y d_t) = c (1_x d_{st})
// with c = chat(s,t)(x) when alpha_s(1_y) = 1_x, else 0.
struct AmbientMult {
  const CrossedProduct* cp;

  Vec multiply(const Vec& u, const Vec& v) const {
    const auto& a = cp->action;
    const auto& Ss = a.S.boolean->S;
    const int nu = a.n_units;
    Vec out = zero_vec(a.field, cp->ambient_dim);
    for (int s = 0; s < cp->nS; ++s)
      for (int x = 0; x < nu; ++x) {
        const Scalar& cu = u[cp->ambient_index(s, x)];
        if (cu.is_zero()) continue;
        for (int t = 0; t < cp->nS; ++t) {
          int st = Ss.at(s, t);
          for (int y = 0; y < nu; ++y) {
            const Scalar& cv = v[cp->ambient_index(t, y)];
            if (cv.is_zero()) continue;
            if (a.alpha[s * nu + y] != x) continue;
            const Scalar& cc = cp->embedded_cocycle(s, t)[x];
            if (cc.is_zero()) continue;
            int idx = cp->ambient_index(st, x);
            out[idx] = out[idx] + cu * cv * cc;
          }
        }
      }
    return out;
  }
};

}  // namespace

CrossedProduct build_crossed_product(FunctionRingAction action,
                                     AbelianGroupPtr A,
                                     std::vector<Scalar> embed, TildeA tilde,
                                     LauschModule M, TwoCocycle c,
                                     long ambient_cap) {
  CrossedProduct cp;
  cp.action = std::move(action);
  cp.A = std::move(A);
  cp.embed = std::move(embed);
  cp.tilde = std::move(tilde);
  cp.M = std::move(M);
  cp.cocycle = std::move(c);

  const auto& a = cp.action;
  const auto& Ss = a.S.boolean->S;
  const auto& G = *a.G;
  cp.nS = Ss.n;
  const int nu = a.n_units;
  cp.ambient_dim = cp.nS * nu;
  if (cp.ambient_dim > ambient_cap)
    fail("SizeLimitExceeded", "ambient dimension exceeds cap");

  // the embedding must be an injective group hom into the field units
  if (static_cast<int>(cp.embed.size()) != cp.A->n)
    fail("NoEmbedding", "embedding table has wrong size");
  for (int x = 0; x < cp.A->n; ++x) {
    if (cp.embed[x].is_zero()) fail("NoEmbedding", "unit image is zero", {x});
    for (int y = 0; y < cp.A->n; ++y) {
      if (x < y && cp.embed[x] == cp.embed[y])
        fail("NoEmbedding", "embedding is not injective", {x, y});
      if (!(cp.embed[x] * cp.embed[y] == cp.embed[cp.A->at(x, y)]))
        fail("NoEmbedding", "embedding is not a homomorphism", {x, y});
    }
  }

  auto check = validate_cocycle(cp.M, cp.cocycle.table);
  if (!check.valid || !cp.cocycle.normalized)
    fail("InvalidCocycle", "crossed product needs a valid normalized cocycle");

  // embedded cocycle values as ring elements
  auto embed_k = [&](int k) {
    auto vals = cp.tilde.decode(k);
    Vec out = zero_vec(a.field, nu);
    for (int ui = 0; ui < nu; ++ui)
      if (vals[ui] >= 0) out[ui] = cp.embed[vals[ui]];
    return out;
  };
  cp.chat.reserve(cp.nS * cp.nS);
  for (int s = 0; s < cp.nS; ++s)
    for (int t = 0; t < cp.nS; ++t)
      cp.chat.push_back(embed_k(cp.cocycle.table[s * cp.nS + t]));

  // ideal generators: 1_x d_s - (1_x chat(t, s*s)*) d_t over all s <= t
  std::vector<Vec> gens;
  for (int s = 0; s < cp.nS; ++s)
    for (int t = 0; t < cp.nS; ++t) {
      if (!Ss.leq(s, t)) continue;
      Vec w = embed_k(cp.M.kstar(
          cp.cocycle.table[t * cp.nS + Ss.domain_idem(s)]));
      for (int ui = 0; ui < nu; ++ui) {
        Vec g = zero_vec(a.field, cp.ambient_dim);
        g[cp.ambient_index(s, ui)] = Scalar::one(a.field);
        int jt = cp.ambient_index(t, ui);
        g[jt] = g[jt] - w[ui];
        if (!is_zero_vec(g)) gens.push_back(std::move(g));
      }
    }
  cp.Q = VectorSpaceQuotient(a.field, cp.ambient_dim, gens);

  AmbientMult amb{&cp};

  // associativity of the ambient product on basis triples
  for (int i = 0; i < cp.ambient_dim; ++i)
    for (int j = 0; j < cp.ambient_dim; ++j)
      for (int k = 0; k < cp.ambient_dim; ++k) {
        Vec ei = zero_vec(a.field, cp.ambient_dim);
        Vec ej = ei, ek = ei;
        ei[i] = Scalar::one(a.field);
        ej[j] = Scalar::one(a.field);
        ek[k] = Scalar::one(a.field);
        if (!(amb.multiply(amb.multiply(ei, ej), ek) ==
              amb.multiply(ei, amb.multiply(ej, ek))))
          fail("InconsistentVerdict", "ambient product is not associative",
               {i, j, k});
      }

  // the ideal is two-sided: basis times generator stays in the span
  for (const Vec& g : gens)
    for (int i = 0; i < cp.ambient_dim; ++i) {
      Vec ei = zero_vec(a.field, cp.ambient_dim);
      ei[i] = Scalar::one(a.field);
      if (!cp.Q.in_subspace(amb.multiply(ei, g)) ||
          !cp.Q.in_subspace(amb.multiply(g, ei)))
        fail("InconsistentVerdict", "ideal is not two-sided", {i});
    }

  // quotient structure constants on the free coordinates
  const int d = cp.Q.quotient_dim();
  cp.alg.field = a.field;
  cp.alg.dim = d;
  cp.alg.mult.assign(d * d, Vec());
  std::vector<Vec> lifts;
  for (int i = 0; i < d; ++i) {
    Vec coords = zero_vec(a.field, d);
    coords[i] = Scalar::one(a.field);
    lifts.push_back(cp.Q.lift(coords));
  }
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      cp.alg.mult[i * d + j] = cp.Q.quotient_coords(amb.multiply(lifts[i], lifts[j]));
  if (!cp.alg.associative_on_basis())
    fail("InconsistentVerdict", "quotient product is not associative");

  // well-definedness of tau on the ideal
  {
    Bits unit_set(G.n);
    for (int u : G.units) unit_set.set(u);
    for (const Vec& g : gens) {
      Vec image = zero_vec(a.field, nu);
      for (int s = 0; s < cp.nS; ++s) {
        int es = a.S.index_of(a.S.labels[s] & unit_set);
        auto m = max_idempotent_below(Ss, s);
        if (!m || *m != es)
          fail("InconsistentVerdict", "maximum idempotent mismatch", {s});
        const Vec& w = cp.embedded_cocycle(s, es);
        for (int ui = 0; ui < nu; ++ui)
          image[ui] = image[ui] + g[cp.ambient_index(s, ui)] * w[ui];
      }
      if (!is_zero_vec(image))
        fail("InconsistentVerdict", "tau is not well defined on the ideal");
    }
  }

  // canonical arrow basis e_g = 1_{ran g} delta_{{g}}
  cp.arrow_basis_coords.clear();
  for (int g = 0; g < G.n; ++g) {
    Bits single(G.n);
    single.set(g);
    int s = a.S.index_of(single);
    Vec amb_vec = zero_vec(a.field, cp.ambient_dim);
    amb_vec[cp.ambient_index(s, a.unit_pos[G.ran[g]])] = Scalar::one(a.field);
    cp.arrow_basis_coords.push_back(cp.Q.quotient_coords(amb_vec));
  }
  if (d == G.n) {
    auto inv = invert_matrix(a.field, cp.arrow_basis_coords);
    if (!inv)
      fail("InconsistentVerdict", "arrow basis is not a basis");
    // structure constants on the arrow basis
    cp.arrow_alg.field = a.field;
    cp.arrow_alg.dim = G.n;
    cp.arrow_alg.mult.assign(G.n * G.n, Vec());
    auto to_arrow = [&](const Vec& coords) {
      // coords (free columns) -> coefficients on {e_g}: x = coords * inv
      Vec out = zero_vec(a.field, G.n);
      for (int j = 0; j < G.n; ++j)
        for (int i = 0; i < G.n; ++i)
          out[j] = out[j] + coords[i] * (*inv)[i][j];
      return out;
    };
    for (int g = 0; g < G.n; ++g)
      for (int h = 0; h < G.n; ++h)
        cp.arrow_alg.mult[g * G.n + h] = to_arrow(cp.alg.multiply(
            cp.arrow_basis_coords[g], cp.arrow_basis_coords[h]));
  }
  return cp;
}

TwistedRingSetup build_crossed_from_twist(const TwistExtension& tw,
                                          const FieldDesc& field,
                                          const std::vector<Scalar>* embed,
                                          long cap) {
  TwistedRingSetup setup;
  setup.tw = tw;
  setup.cls = twist_class_cocycle(tw, cap);
  if (embed) {
    setup.embed = *embed;
  } else {
    auto found = find_unit_embedding(field, *tw.A);
    if (!found)
      fail("NoEmbedding",
           "twist group does not embed into the units of " + field.str());
    setup.embed = *found;
  }
  FunctionRingAction action = build_action(tw.G, field, cap);
  // rebase the classifying data on the action's own bisection semigroup:
  // both come from the same enumeration, so indices agree
  setup.cp = build_crossed_product(std::move(action), tw.A, setup.embed,
                                   setup.cls.tilde, setup.cls.M,
                                   setup.cls.cocycle);
  return setup;
}

std::vector<NormalFormTerm> normal_form(const CrossedProduct& cp,
                                        const Vec& ambient) {
  const auto& a = cp.action;
  const auto& Ss = a.S.boolean->S;
  const auto& G = *a.G;
  const int nu = a.n_units;

  // collect per-element coefficients
  std::map<int, Vec> terms;
  for (int s = 0; s < cp.nS; ++s) {
    Vec r = zero_vec(a.field, nu);
    bool nz = false;
    for (int ui = 0; ui < nu; ++ui) {
      r[ui] = ambient[cp.ambient_index(s, ui)];
      nz = nz || !r[ui].is_zero();
    }
    if (nz && s != *Ss.zero) terms[s] = std::move(r);
  }

  // support restriction: a d_U -> a c(U, dom(VU)) d_{VU}, V = supp(a) & ran(U)
  auto restrict_term = [&](int s, const Vec& r) -> std::pair<int, Vec> {
    Bits V(G.n);
    for (int ui = 0; ui < nu; ++ui)
      if (!r[ui].is_zero() && a.S.labels[Ss.range_idem(s)].test(G.units[ui]))
        V.set(G.units[ui]);
    Bits VU = set_product(G, V, a.S.labels[s]);
    int vs = a.S.index_of(VU);
    const Vec& w = cp.embedded_cocycle(s, Ss.domain_idem(vs));
    Vec coeff = zero_vec(a.field, nu);
    for (int ui = 0; ui < nu; ++ui) coeff[ui] = r[ui] * w[ui];
    return {vs, std::move(coeff)};
  };

  std::map<int, Vec> stage;
  for (auto& [s, r] : terms) {
    auto [vs, coeff] = restrict_term(s, r);
    if (vs == *Ss.zero || is_zero_vec(coeff)) continue;
    auto it = stage.find(vs);
    if (it == stage.end())
      stage.emplace(vs, std::move(coeff));
    else
      it->second = add(it->second, coeff);
  }

  // atoms of the Boolean algebra generated by the labels: classify arrows
  // by their membership pattern
  std::map<std::vector<int>, Bits> atom_map;
  for (int g = 0; g < G.n; ++g) {
    std::vector<int> sig;
    for (auto& [s, r] : stage)
      if (a.S.labels[s].test(g)) sig.push_back(s);
    if (sig.empty()) continue;
    auto it = atom_map.find(sig);
    if (it == atom_map.end()) {
      Bits b(G.n);
      b.set(g);
      atom_map.emplace(std::move(sig), std::move(b));
    } else {
      it->second.set(g);
    }
  }

  // split every term over the atoms it contains
  std::map<int, Vec> split;
  for (auto& [s, r] : stage)
    for (auto& [sig, W] : atom_map) {
      if (!W.subset_of(a.S.labels[s])) continue;
      int ws = a.S.index_of(W);
      const Vec& w = cp.embedded_cocycle(s, Ss.domain_idem(ws));
      Vec coeff = zero_vec(a.field, nu);
      for (int ui = 0; ui < nu; ++ui) coeff[ui] = r[ui] * w[ui];
      auto it = split.find(ws);
      if (it == split.end())
        split.emplace(ws, std::move(coeff));
      else
        it->second = add(it->second, coeff);
    }

  // final support restriction and cleanup
  std::vector<NormalFormTerm> out;
  for (auto& [s, r] : split) {
    auto [vs, coeff] = restrict_term(s, r);
    if (vs == *Ss.zero || is_zero_vec(coeff)) continue;
    out.push_back({std::move(coeff), vs});
  }

  // postconditions: disjoint supports, coefficients on exactly the range
  for (std::size_t i = 0; i < out.size(); ++i) {
    const Bits& Ui = a.S.labels[out[i].element];
    for (std::size_t j = i + 1; j < out.size(); ++j)
      if (!(Ui & a.S.labels[out[j].element]).empty())
        fail("InconsistentVerdict", "normal form is not disjoint");
    for (int ui = 0; ui < nu; ++ui) {
      bool in_range =
          a.S.labels[Ss.range_idem(out[i].element)].test(G.units[ui]);
      if (in_range == out[i].coeff[ui].is_zero())
        fail("InconsistentVerdict", "normal form support mismatch");
    }
  }
  // equality modulo the ideal
  Vec rebuilt = zero_vec(a.field, cp.ambient_dim);
  for (const auto& term : out)
    rebuilt = add(rebuilt, cp.ambient_of(term.element, term.coeff));
  if (!cp.Q.in_subspace(sub(rebuilt, ambient)))
    fail("InconsistentVerdict", "normal form changed the coset");
  return out;
}

Vec tau(const CrossedProduct& cp, const Vec& ambient) {
  const auto& a = cp.action;
  Bits unit_set(a.G->n);
  for (int u : a.G->units) unit_set.set(u);
  Vec out = zero_vec(a.field, a.n_units);
  for (int s = 0; s < cp.nS; ++s) {
    int es = a.S.index_of(a.S.labels[s] & unit_set);
    const Vec& w = cp.embedded_cocycle(s, es);
    for (int ui = 0; ui < a.n_units; ++ui)
      out[ui] = out[ui] + ambient[cp.ambient_index(s, ui)] * w[ui];
  }
  return out;
}

Vec rho_embed(const CrossedProduct& cp, const Vec& r) {
  const auto& a = cp.action;
  const auto& G = *a.G;
  Vec out = zero_vec(a.field, cp.ambient_dim);
  for (int ui = 0; ui < a.n_units; ++ui) {
    if (r[ui].is_zero()) continue;
    Bits single(G.n);
    single.set(G.units[ui]);
    int e = a.S.index_of(single);
    out[cp.ambient_index(e, ui)] = r[ui];
  }
  return out;
}

CovariantReport check_covariant(const CrossedProduct& cp,
                                const FiniteAlgebra& target,
                                const std::vector<Vec>& rho_basis,
                                const std::vector<Vec>& psi) {
  const auto& a = cp.action;
  const auto& Ss = a.S.boolean->S;
  const int nu = a.n_units;
  auto rho_of = [&](const Vec& r) {
    Vec out = zero_vec(a.field, target.dim);
    for (int ui = 0; ui < nu; ++ui)
      if (!r[ui].is_zero()) out = add(out, scale(r[ui], rho_basis[ui]));
    return out;
  };

  for (int s = 0; s < cp.nS; ++s)
    for (int ui = 0; ui < nu; ++ui) {
      // (C1) on the basis: psi(s) rho(1_x) = rho(alpha_s(1_x)) psi(s)
      Vec one_x = zero_vec(a.field, nu);
      one_x[ui] = Scalar::one(a.field);
      Vec lhs = target.multiply(psi[s], rho_of(one_x));
      Vec rhs = target.multiply(rho_of(a.apply(s, one_x)), psi[s]);
      if (!(lhs == rhs)) return {false, "C1", {s, ui}};
    }
  for (int e : Ss.idempotents) {
    if (!(rho_of(a.indicator(e)) == psi[e])) return {false, "C2", {e}};
  }
  for (int s = 0; s < cp.nS; ++s)
    for (int t = 0; t < cp.nS; ++t) {
      Vec lhs = target.multiply(psi[s], psi[t]);
      Vec rhs = target.multiply(rho_of(cp.embedded_cocycle(s, t)),
                                psi[Ss.at(s, t)]);
      if (!(lhs == rhs)) return {false, "C3", {s, t}};
    }
  for (int s = 0; s < cp.nS; ++s) {
    Vec lhs = target.multiply(psi[Ss.range_idem(s)], psi[s]);
    if (!(lhs == psi[s])) return {false, "C4", {s}};
  }
  return {};
}

std::vector<Vec> universal_extend(const CrossedProduct& cp,
                                  const FiniteAlgebra& target,
                                  const std::vector<Vec>& rho_basis,
                                  const std::vector<Vec>& psi) {
  auto report = check_covariant(cp, target, rho_basis, psi);
  if (!report.covariant)
    fail("NotCovariant", "representation fails " + report.axiom,
         report.witness);
  const auto& a = cp.action;
  const auto& Ss = a.S.boolean->S;
  const int nu = a.n_units;

  // pi on the ambient basis, then well-definedness on the ideal
  std::vector<Vec> pi_amb(cp.ambient_dim);
  for (int s = 0; s < cp.nS; ++s)
    for (int ui = 0; ui < nu; ++ui)
      pi_amb[cp.ambient_index(s, ui)] = target.multiply(rho_basis[ui], psi[s]);
  auto pi_of_ambient = [&](const Vec& v) {
    Vec out = zero_vec(a.field, target.dim);
    for (int i = 0; i < cp.ambient_dim; ++i)
      if (!v[i].is_zero()) out = add(out, scale(v[i], pi_amb[i]));
    return out;
  };
  for (const Vec& row : cp.Q.subspace_basis())
    if (!is_zero_vec(pi_of_ambient(row)))
      fail("InconsistentVerdict", "pi is not well defined on the ideal");

  const int d = cp.dim();
  std::vector<Vec> pi(d);
  for (int i = 0; i < d; ++i) {
    Vec coords = zero_vec(a.field, d);
    coords[i] = Scalar::one(a.field);
    pi[i] = pi_of_ambient(cp.Q.lift(coords));
  }
  // homomorphism on the quotient basis
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      Vec lhs = target.multiply(pi[i], pi[j]);
      const Vec& pc = cp.alg.basis_product(i, j);
      Vec rhs = zero_vec(a.field, target.dim);
      for (int k = 0; k < d; ++k)
        if (!pc[k].is_zero()) rhs = add(rhs, scale(pc[k], pi[k]));
      if (!(lhs == rhs))
        fail("InconsistentVerdict", "pi is not a homomorphism", {i, j});
    }
  // pi extends rho and psi
  for (int ui = 0; ui < nu; ++ui) {
    Vec one_x = zero_vec(a.field, nu);
    one_x[ui] = Scalar::one(a.field);
    if (!(pi_of_ambient(rho_embed(cp, one_x)) == rho_basis[ui]))
      fail("InconsistentVerdict", "pi does not extend rho", {ui});
  }
  for (int s = 0; s < cp.nS; ++s) {
    Vec amb = cp.ambient_of(s, a.indicator(Ss.range_idem(s)));
    if (!(pi_of_ambient(amb) == psi[s]))
      fail("InconsistentVerdict", "pi does not extend psi", {s});
  }
  // uniqueness: every ambient basis coset is rho(1_x 1_{ran s}) psi(s),
  // which pins any extension on a spanning set
  for (int s = 0; s < cp.nS; ++s)
    for (int ui = 0; ui < nu; ++ui) {
      Vec one_x = zero_vec(a.field, nu);
      one_x[ui] = Scalar::one(a.field);
      Vec r = one_x;
      for (int vi = 0; vi < nu; ++vi)
        r[vi] = r[vi] * cp.action.indicator(Ss.range_idem(s))[vi];
      Vec amb = zero_vec(a.field, cp.ambient_dim);
      amb[cp.ambient_index(s, ui)] = Scalar::one(a.field);
      Vec lhs = cp.Q.coset_rep(amb);
      Vec prod = cp.Q.coset_rep(cp.Q.lift(cp.alg.multiply(
          cp.Q.quotient_coords(rho_embed(cp, r)),
          cp.Q.quotient_coords(
              cp.ambient_of(s, cp.action.indicator(Ss.range_idem(s)))))));
      if (!(lhs == prod))
        fail("InconsistentVerdict", "spanning identity fails", {s, ui});
    }
  return pi;
}

std::vector<Vec> same_crossed_iso(const CrossedProduct& cp1,
                                  const CrossedProduct& cp2,
                                  const Cochain& F) {
  const auto& a = cp1.action;
  const int nu = a.n_units;
  if (!(cocycle_product(cp1.M, cp1.cocycle, coboundary(cp1.M, F)).table ==
        cp2.cocycle.table))
    fail("Precondition", "cocycles do not differ by the coboundary of F");

  // embedded F(s)* as a ring element
  auto embed_k = [&](int k) {
    auto vals = cp1.tilde.decode(k);
    Vec out = zero_vec(a.field, nu);
    for (int ui = 0; ui < nu; ++ui)
      if (vals[ui] >= 0) out[ui] = cp1.embed[vals[ui]];
    return out;
  };

  std::vector<Vec> phi_amb(cp1.ambient_dim);
  for (int s = 0; s < cp1.nS; ++s) {
    Vec w = embed_k(cp1.M.kstar(F.values[s]));
    for (int ui = 0; ui < nu; ++ui) {
      Vec img = zero_vec(a.field, cp2.ambient_dim);
      img[cp2.ambient_index(s, ui)] = w[ui];
      phi_amb[cp1.ambient_index(s, ui)] = std::move(img);
    }
  }
  auto phi_of_ambient = [&](const Vec& v) {
    Vec out = zero_vec(a.field, cp2.ambient_dim);
    for (int i = 0; i < cp1.ambient_dim; ++i)
      if (!v[i].is_zero()) out = add(out, scale(v[i], phi_amb[i]));
    return out;
  };
  for (const Vec& row : cp1.Q.subspace_basis())
    if (!cp2.Q.in_subspace(phi_of_ambient(row)))
      fail("InconsistentVerdict", "iso does not preserve the ideal");

  const int d = cp1.dim();
  if (d != cp2.dim()) fail("InconsistentVerdict", "dimension mismatch");
  std::vector<Vec> m(d);
  for (int i = 0; i < d; ++i) {
    Vec coords = zero_vec(a.field, d);
    coords[i] = Scalar::one(a.field);
    m[i] = cp2.Q.quotient_coords(phi_of_ambient(cp1.Q.lift(coords)));
  }
  if (!invert_matrix(a.field, m))
    fail("InconsistentVerdict", "iso is not bijective");
  // ring homomorphism on the quotient basis
  auto apply = [&](const Vec& coords) {
    Vec out = zero_vec(a.field, d);
    for (int i = 0; i < d; ++i)
      if (!coords[i].is_zero()) out = add(out, scale(coords[i], m[i]));
    return out;
  };
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      Vec lhs = apply(cp1.alg.basis_product(i, j));
      Vec ei = zero_vec(a.field, d), ej = zero_vec(a.field, d);
      ei[i] = Scalar::one(a.field);
      ej[j] = Scalar::one(a.field);
      Vec rhs = cp2.alg.multiply(apply(ei), apply(ej));
      if (!(lhs == rhs))
        fail("InconsistentVerdict", "iso is not multiplicative", {i, j});
    }
  return m;
}

FiniteAlgebra groupoid_convolution_algebra(const FiniteGroupoid& G,
                                           const FieldDesc& field) {
  FiniteAlgebra alg;
  alg.field = field;
  alg.dim = G.n;
  alg.mult.assign(G.n * G.n, Vec());
  for (int g = 0; g < G.n; ++g)
    for (int h = 0; h < G.n; ++h) {
      Vec v = zero_vec(field, G.n);
      if (G.composable(g, h)) v[G.at(g, h)] = Scalar::one(field);
      alg.mult[g * G.n + h] = std::move(v);
    }
  return alg;
}

}  // namespace ample
