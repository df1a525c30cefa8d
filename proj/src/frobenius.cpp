#include "hncomb/frobenius.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

namespace hncomb {

std::vector<int> identity_diagram_perm(int rank) {
  std::vector<int> p(rank + 1);
  std::iota(p.begin(), p.end(), 0);
  return p;
}

std::vector<std::vector<int>> finite_diagram_automorphisms(const RootDatum& datum) {
  int r = datum.rank();
  std::vector<int> nodes(r);
  std::iota(nodes.begin(), nodes.end(), 1);
  std::vector<std::vector<int>> out;
  std::vector<int> perm(nodes);
  do {
    bool ok = true;
    for (int i = 1; i <= r && ok; ++i)
      for (int j = 1; j <= r && ok; ++j)
        if (datum.cartan(perm[i - 1], perm[j - 1]) != datum.cartan(i, j)) ok = false;
    if (ok) {
      std::vector<int> full(r + 1, 0);
      for (int i = 1; i <= r; ++i) full[i] = perm[i - 1];
      out.push_back(full);
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

FrobeniusMap build_sigma(const AffineWeyl& weyl, int tau_idx,
                         const std::vector<int>& finite_diagram_aut) {
  const RootDatum& d = weyl.datum();
  int r = d.rank();
  if (tau_idx < 0 || tau_idx >= weyl.omega_order())
    throw std::invalid_argument("Omega index out of range: " + std::to_string(tau_idx));
  if (static_cast<int>(finite_diagram_aut.size()) != r + 1)
    throw std::invalid_argument("diagram automorphism must list images of nodes 0..rank");

  // linear map of the finite diagram automorphism: alpha_i^vee -> alpha_{pi(i)}^vee
  IMat lin(r);
  for (int i = 1; i <= r; ++i) {
    int j = finite_diagram_aut[i];
    if (j < 1 || j > r) throw std::invalid_argument("diagram automorphism image out of range");
    lin[i - 1] = d.root(d.simple_root_index(j)).coroot;
  }
  {
    // must be an automorphism of the Cartan matrix
    for (int i = 1; i <= r; ++i)
      for (int j = 1; j <= r; ++j)
        if (d.cartan(finite_diagram_aut[i], finite_diagram_aut[j]) != d.cartan(i, j))
          throw std::invalid_argument("permutation is not a diagram automorphism");
  }

  FrobeniusMap out;
  out.tau_idx = tau_idx;
  out.diagram_perm = finite_diagram_aut;
  AffMap tau_map = weyl.affine_map(weyl.omega_element(tau_idx));
  out.map = weyl.compose(tau_map, AffMap{lin, IVec(r, 0)});
  out.order = weyl.aff_order(out.map);

  // action on the root list (p(sigma) permutes the coroots)
  out.root_perm.resize(d.num_roots());
  for (int b = 0; b < d.num_roots(); ++b) {
    int idx = d.root_index(imat_apply(out.map.a, d.root(b).coroot));
    if (idx < 0) throw std::logic_error("p(sigma) does not permute the coroots");
    out.root_perm[b] = static_cast<int16_t>(idx);
  }
  out.root_perm_inv.resize(d.num_roots());
  for (int b = 0; b < d.num_roots(); ++b) out.root_perm_inv[out.root_perm[b]] = static_cast<int16_t>(b);

  // induced permutation of the affine nodes
  out.node_perm.assign(r + 1, -1);
  for (int s = 0; s <= r; ++s) {
    ExtAffElt img = sigma_apply(weyl, out, weyl.simple(s));
    int found = -1;
    for (int t = 0; t <= r; ++t)
      if (img == weyl.simple(t)) {
        found = t;
        break;
      }
    if (found < 0) throw std::logic_error("sigma does not permute the simple reflections");
    out.node_perm[s] = found;
  }

  // L-action: w o p(sigma) with w the unique element making it dominance-preserving
  Vec d_vec(r, Rat(0));
  for (int i = 1; i <= r; ++i) d_vec = vec_add(d_vec, d.fundamental_coweight(i));
  auto [dom, word] = d.dominant_representative(imat_apply(out.map.a, d_vec));
  out.correcting_w = d.word_to_element(word);
  out.sigma0 = imat_mul(d.matrix(out.correcting_w), out.map.a);
  out.finite_perm.assign(r + 1, 0);
  for (int i = 1; i <= r; ++i) {
    IVec img = imat_apply(out.sigma0, d.root(d.simple_root_index(i)).coroot);
    int idx = d.root_index(img);
    bool simple = false;
    if (idx >= 0) {
      for (int j = 1; j <= r; ++j)
        if (idx == d.simple_root_index(j)) {
          out.finite_perm[i] = j;
          simple = true;
        }
    }
    if (!simple) throw std::logic_error("L-action does not permute the simple coroots");
  }
  return out;
}

std::vector<FrobeniusMap> enumerate_sigmas(const AffineWeyl& weyl) {
  std::vector<FrobeniusMap> out;
  std::set<AffMap> seen;
  for (int tau = 0; tau < weyl.omega_order(); ++tau)
    for (const auto& aut : finite_diagram_automorphisms(weyl.datum())) {
      FrobeniusMap s = build_sigma(weyl, tau, aut);
      if (seen.insert(s.map).second) out.push_back(s);
    }
  std::sort(out.begin(), out.end());
  return out;
}

ExtAffElt sigma_apply(const AffineWeyl& weyl, const FrobeniusMap& sigma, const ExtAffElt& x) {
  const RootDatum& d = weyl.datum();
  // conjugation by the affine map (A, b): (lam, w) -> (A lam + b - w'(b), w'),
  // with w' = A w A^{-1}
  W0Elt w2;
  w2.p.resize(d.num_roots());
  for (int i = 0; i < d.num_roots(); ++i)
    w2.p[i] = sigma.root_perm[x.w.p[sigma.root_perm_inv[i]]];
  IVec lam2 = ivec_add(imat_apply(sigma.map.a, x.lam), ivec_sub(sigma.map.b, d.act(w2, sigma.map.b)));
  return ExtAffElt{lam2, w2};
}

std::vector<std::vector<int>> sigma0_orbits(const FrobeniusMap& sigma, int rank) {
  std::vector<bool> used(rank + 1, false);
  std::vector<std::vector<int>> orbits;
  for (int i = 1; i <= rank; ++i) {
    if (used[i]) continue;
    std::vector<int> orbit;
    int j = i;
    while (!used[j]) {
      used[j] = true;
      orbit.push_back(j);
      j = sigma.finite_perm[j];
    }
    std::sort(orbit.begin(), orbit.end());
    orbits.push_back(orbit);
  }
  return orbits;
}

bool node_set_sigma_stable(const FrobeniusMap& sigma, const NodeSet& k) {
  for (int s : k)
    if (!node_set_contains(k, sigma.node_perm[s])) return false;
  return true;
}

void GroupInstance::validate(bool require_nonzero_mu) const {
  if (!datum || !weyl) throw std::logic_error("instance not bound to group data");
  if (static_cast<int>(mu.size()) != datum->rank()) throw std::invalid_argument("mu has wrong dimension");
  weyl->translation(mu);  // lattice membership
  if (!datum->is_dominant(mu)) throw std::invalid_argument("mu must be dominant");
  if (require_nonzero_mu && vec_is_zero(mu)) throw std::invalid_argument("mu must be nonzero");
  if (!weyl->is_finite_parabolic(k)) throw std::invalid_argument("W_K must be finite: K omits no node");
  if (!node_set_sigma_stable(sigma, k)) throw std::invalid_argument("K must be sigma-stable");
}

std::string GroupInstance::describe_key() const {
  std::string s = datum->name() + " mu=[";
  for (int i = 0; i < datum->rank(); ++i) {
    if (i) s += ",";
    s += format_rat(datum->pair_root(mu, datum->simple_root_index(i + 1)));
  }
  s += "] sigma=(t" + std::to_string(sigma.tau_idx) + ";";
  for (int i = 1; i <= datum->rank(); ++i) s += std::to_string(sigma.diagram_perm[i]);
  s += ") K={";
  for (size_t i = 0; i < k.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(k[i]);
  }
  s += "}";
  return s;
}

}  // namespace hncomb
