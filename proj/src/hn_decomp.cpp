#include "hncomb/hn_decomp.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace hncomb {

VFlat choose_v_flat(const GroupInstance& inst, const SigmaClass& c) {
  const RootDatum& d = *inst.datum;
  auto j = is_hn_decomposable(inst, c);
  if (!j) throw std::invalid_argument("class is not Hodge-Newton decomposable");
  VFlat out;
  out.j = *j;
  out.v.assign(d.rank(), Rat(0));
  for (int i = 1; i <= d.rank(); ++i)
    if (!node_set_contains(out.j, i)) out.v = vec_add(out.v, d.fundamental_coweight(i));
  // sigma0-fixed since J is sigma0-stable
  if (imat_apply(inst.sigma.sigma0, out.v) != out.v)
    throw std::logic_error("v-flat is not sigma0-fixed");
  if (!d.is_dominant(out.v)) throw std::logic_error("v-flat is not dominant");
  return out;
}

bool is_alcove_element(const GroupInstance& inst, const ExtAffElt& w, const Vec& v) {
  const RootDatum& d = *inst.datum;
  const AffineWeyl& weyl = *inst.weyl;
  AffMap f = weyl.compose(weyl.affine_map(w), inst.sigma.map);
  if (imat_apply(f.a, v) != v) return false;
  // floor of a root over an alcove: over the base alcove it is 0 for positive
  // roots and -1 for negative ones; over (w sigma)(base) it shifts by the
  // translation part and permutes by the inverse linear part.
  Vec t = to_vec(f.b, d.lattice_scale());
  // inverse permutation of the linear part on the root list
  std::vector<int> inv(d.num_roots());
  for (int idx = 0; idx < d.num_roots(); ++idx) {
    int img = d.root_index(imat_apply(f.a, d.root(idx).coroot));
    if (img < 0) throw std::logic_error("linear part does not permute the roots");
    inv[img] = idx;
  }
  for (int idx = 0; idx < d.num_roots(); ++idx) {
    if (d.pair_root(v, idx) <= 0) continue;  // only Phi_{v,+}
    Rat base_floor = d.root(idx).positive ? Rat(0) : Rat(-1);
    Rat shift = RootDatum::pair(t, to_vec(d.root(idx).func));
    // the translation part pairs integrally with every root here: sigma(0) is
    // 0 or a fundamental coweight at a mark-one node
    if (!rat_is_int(shift)) throw std::logic_error("non-integral alcove shift");
    Rat moved_floor = shift + (d.root(inv[idx]).positive ? Rat(0) : Rat(-1));
    if (moved_floor < base_floor) return false;
  }
  return true;
}

namespace {

// is z = t^lam s_alpha an affine reflection of W~_v? (alpha orthogonal to v,
// lam parallel to alpha^vee)
bool is_reflection_in_wv(const AffineWeyl& weyl, const Vec& v, const ExtAffElt& z) {
  const RootDatum& d = weyl.datum();
  for (int idx = 0; idx < d.num_positive(); ++idx) {
    if (!(z.w == d.reflection(idx))) continue;
    if (d.pair_root(v, idx) != 0) return false;
    // translation part must be a multiple of alpha^vee
    Vec lam = weyl.translation_part(z);
    const IVec& av = d.root(idx).coroot;
    int pivot = -1;
    for (int t = 0; t < d.rank(); ++t)
      if (av[t] != 0) pivot = t;
    Rat c = lam[pivot] / Rat(av[pivot]);
    for (int t = 0; t < d.rank(); ++t)
      if (lam[t] != c * Rat(av[t])) return false;
    return true;
  }
  return false;
}

// reachability x -> y inside the ambient lower ideal of y, stepping by
// W~_v-reflections that increase length
std::set<ExtAffElt> leq_v_ideal(const AffineWeyl& weyl, const Vec& v, const ExtAffElt& y) {
  std::vector<ExtAffElt> candidates = weyl.lower_ideal(y);
  std::map<ExtAffElt, int> index;
  for (size_t i = 0; i < candidates.size(); ++i) index[candidates[i]] = static_cast<int>(i);
  std::vector<int> lengths(candidates.size());
  for (size_t i = 0; i < candidates.size(); ++i) lengths[i] = weyl.length(candidates[i]);
  // edges: p -> q when q = r p with r a W~_v-reflection and l(p) < l(q);
  // walk down from y
  std::set<ExtAffElt> reached{y};
  std::vector<ExtAffElt> queue{y};
  while (!queue.empty()) {
    ExtAffElt cur = queue.back();
    queue.pop_back();
    int lc = weyl.length(cur);
    for (const ExtAffElt& p : candidates) {
      if (reached.count(p)) continue;
      if (weyl.length(p) >= lc) continue;
      ExtAffElt r = weyl.mult(cur, weyl.inverse(p));
      if (!is_reflection_in_wv(weyl, v, r)) continue;
      reached.insert(p);
      queue.push_back(p);
    }
  }
  return reached;
}

}  // namespace

bool bruhat_leq_v(const AffineWeyl& weyl, const Vec& v, const ExtAffElt& x, const ExtAffElt& y) {
  auto fixes = [&](const ExtAffElt& e) { return weyl.datum().act(e.w, v) == v; };
  if (!fixes(x) || !fixes(y)) throw std::invalid_argument("arguments must lie in W~_v");
  if (x == y) return true;
  return leq_v_ideal(weyl, v, y).count(x) > 0;
}

std::vector<ExtAffElt> lower_ideal_v(const AffineWeyl& weyl, const Vec& v, const ExtAffElt& y) {
  std::set<ExtAffElt> s = leq_v_ideal(weyl, v, y);
  return std::vector<ExtAffElt>(s.begin(), s.end());
}

std::vector<ParabolicOrbitRep> enumerate_parabolic_orbits(const GroupInstance& inst,
                                                          const VFlat& vflat) {
  const RootDatum& d = *inst.datum;
  const AffineWeyl& weyl = *inst.weyl;
  // all z in W_0^J with p(sigma)(z(v)) = z(v)
  std::vector<W0Elt> w0;
  {
    std::set<std::vector<int16_t>> seen;
    std::vector<W0Elt> queue{d.w0_identity()};
    seen.insert(d.w0_identity().p);
    while (!queue.empty()) {
      W0Elt cur = queue.back();
      queue.pop_back();
      w0.push_back(cur);
      for (int i = 1; i <= d.rank(); ++i) {
        W0Elt nxt = d.mult(cur, d.simple_reflection(i));
        if (seen.insert(nxt.p).second) queue.push_back(nxt);
      }
    }
  }
  std::vector<ParabolicOrbitRep> reps;
  for (const W0Elt& z : w0) {
    bool min_rep = true;
    for (int jnode : vflat.j)
      if (d.w0_length(d.mult(z, d.simple_reflection(jnode))) < d.w0_length(z)) min_rep = false;
    if (!min_rep) continue;
    Vec zv = d.act(z, vflat.v);
    if (imat_apply(inst.sigma.map.a, zv) != zv) continue;
    reps.push_back(ParabolicOrbitRep{z, zv, -1});
  }
  std::sort(reps.begin(), reps.end(),
            [](const ParabolicOrbitRep& a, const ParabolicOrbitRep& b) { return a.zv < b.zv; });

  // group by the coset criterion W_K z W~(M) = W_K z' W~(M); the parabolic
  // conjugation and sigma-fixed conjugation criteria must give the same
  // grouping
  std::vector<ExtAffElt> wk = weyl.enumerate_parabolic(inst.k);
  auto root_signs = [&](const Vec& v) {
    std::vector<int> s(d.num_roots());
    for (int idx = 0; idx < d.num_roots(); ++idx) {
      Rat p = d.pair_root(v, idx);
      s[idx] = p > 0 ? 1 : (p == 0 ? 0 : -1);
    }
    return s;
  };
  auto conj_under_wk = [&](const ParabolicOrbitRep& a, const ParabolicOrbitRep& b) {
    for (const ExtAffElt& u : wk)
      if (root_signs(d.act(u.w, a.zv)) == root_signs(b.zv)) return true;
    return false;
  };
  auto coset_eq = [&](const ParabolicOrbitRep& a, const ParabolicOrbitRep& b) {
    ExtAffElt zb_inv = weyl.inverse(weyl.from_w0(b.z));
    for (const ExtAffElt& u : wk) {
      ExtAffElt m = weyl.mult(zb_inv, weyl.mult(u, weyl.from_w0(a.z)));
      if (d.act(m.w, vflat.v) == vflat.v) return true;  // m in W~(M)
    }
    return false;
  };
  auto conj_sigma_fixed = [&](const ParabolicOrbitRep& a, const ParabolicOrbitRep& b) {
    for (const ExtAffElt& u : wk) {
      if (!(sigma_apply(weyl, inst.sigma, u) == u)) continue;
      if (d.act(u.w, a.zv) == b.zv) return true;
    }
    return false;
  };
  int next_id = 0;
  for (size_t i = 0; i < reps.size(); ++i) {
    if (reps[i].group_id >= 0) continue;
    reps[i].group_id = next_id;
    for (size_t j = i + 1; j < reps.size(); ++j) {
      bool a = conj_under_wk(reps[i], reps[j]);
      bool b = coset_eq(reps[i], reps[j]);
      bool c = conj_sigma_fixed(reps[i], reps[j]);
      if (a != b || b != c)
        throw std::logic_error("parabolic grouping criteria disagree");
      if (a && reps[j].group_id < 0) reps[j].group_id = next_id;
    }
    ++next_id;
  }
  return reps;
}

std::vector<ExtAffElt> levi_adm_set(const GroupInstance& inst, const VFlat& vflat, const W0Elt& z) {
  const RootDatum& d = *inst.datum;
  const AffineWeyl& weyl = *inst.weyl;
  Vec zv = d.act(z, vflat.v);
  // W_J-orbit of mu, pushed through z
  std::set<Vec> levi_orbit;
  {
    std::vector<Vec> queue{inst.mu};
    levi_orbit.insert(inst.mu);
    while (!queue.empty()) {
      Vec cur = queue.back();
      queue.pop_back();
      for (int jnode : vflat.j) {
        Vec img = d.act(d.simple_reflection(jnode), cur);
        if (levi_orbit.insert(img).second) queue.push_back(img);
      }
    }
  }
  std::set<ExtAffElt> out;
  for (const Vec& lam : levi_orbit) {
    ExtAffElt t = weyl.translation(d.act(z, lam));
    for (const ExtAffElt& e : lower_ideal_v(weyl, zv, t)) out.insert(e);
  }
  return std::vector<ExtAffElt>(out.begin(), out.end());
}

AdmDecompReport verify_adm_decomposition(const GroupInstance& inst, const SigmaClass& c,
                                         const DLOracle& oracle) {
  const RootDatum& d = *inst.datum;
  const AffineWeyl& weyl = *inst.weyl;
  AdmDecompReport rep;
  rep.cls = c;
  rep.vflat = choose_v_flat(inst, c);

  auto nonempty_at = [&](const ExtAffElt& w) { return oracle.dl_dimension(w).count(c) > 0; };

  std::set<ExtAffElt> adm_mu_b;
  for (const ExtAffElt& w : adm_set(weyl, inst.mu))
    if (nonempty_at(w)) adm_mu_b.insert(w);
  rep.adm_mu_b_size = adm_mu_b.size();

  std::vector<ParabolicOrbitRep> orbits = enumerate_parabolic_orbits(inst, rep.vflat);
  std::set<ExtAffElt> covered;
  for (const ParabolicOrbitRep& po : orbits) {
    std::vector<std::string> members;
    for (const ExtAffElt& w : levi_adm_set(inst, rep.vflat, po.z)) {
      if (!nonempty_at(w)) continue;
      if (covered.count(w))
        rep.failures.push_back("element in two blocks: " + weyl.to_string(w));
      covered.insert(w);
      members.push_back(weyl.to_string(w));
      if (!is_alcove_element(inst, w, po.zv))
        rep.failures.push_back("not an alcove element for its block: " + weyl.to_string(w));
      if (!adm_mu_b.count(w))
        rep.failures.push_back("block member outside Adm({mu}, b): " + weyl.to_string(w));
    }
    std::sort(members.begin(), members.end());
    std::string zname;
    for (int i = 0; i < d.rank(); ++i) {
      if (i) zname += ",";
      zname += format_rat(po.zv[i]);
    }
    rep.blocks.emplace_back(zname, members);
  }
  for (const ExtAffElt& w : adm_mu_b)
    if (!covered.count(w)) rep.failures.push_back("element not covered by any block: " + weyl.to_string(w));

  // uniqueness of the alcove direction with the pairing normalization
  for (const ExtAffElt& w : adm_mu_b) {
    NewtonVector nu = newton_vector(weyl, inst.sigma, w);
    Rat target = d.inner(inst.mu, rep.vflat.v);
    int hits = 0;
    for (const Vec& v : d.w0_orbit(rep.vflat.v)) {
      if (imat_apply(inst.sigma.map.a, v) != v) continue;
      if (!is_alcove_element(inst, w, v)) continue;
      if (d.inner(nu.nu, v) != target) continue;
      ++hits;
    }
    if (hits != 1)
      rep.failures.push_back("alcove direction not unique (" + std::to_string(hits) + ") for " +
                             weyl.to_string(w));
  }
  rep.ok = rep.failures.empty();
  return rep;
}

}  // namespace hncomb
