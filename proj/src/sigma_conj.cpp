#include "hncomb/sigma_conj.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace hncomb {

KottwitzTable::KottwitzTable(const AffineWeyl& weyl, const FrobeniusMap& sigma) {
  int n = weyl.omega_order();
  // subgroup (1-sigma)Omega = closure of { tau sigma(tau)^{-1} }
  auto index_of = [&](const ExtAffElt& e) {
    for (int i = 0; i < n; ++i)
      if (weyl.omega_element(i) == e) return i;
    throw std::logic_error("element is not in Omega");
  };
  std::set<int> sub;
  for (int i = 0; i < n; ++i) {
    ExtAffElt gen = weyl.mult(weyl.omega_element(i),
                              weyl.inverse(sigma_apply(weyl, sigma, weyl.omega_element(i))));
    sub.insert(index_of(gen));
  }
  // close under multiplication (Omega is a small abelian group)
  for (;;) {
    std::set<int> next = sub;
    for (int a : sub)
      for (int b : sub)
        next.insert(index_of(weyl.mult(weyl.omega_element(a), weyl.omega_element(b))));
    if (next == sub) break;
    sub = next;
  }
  // class label = smallest member index of the coset
  class_of_.assign(n, -1);
  for (int i = 0; i < n; ++i) {
    int rep = i;
    for (int h : sub) {
      int j = index_of(weyl.mult(weyl.omega_element(i), weyl.omega_element(h)));
      rep = std::min(rep, j);
    }
    class_of_[i] = rep;
  }
  std::set<int> reps(class_of_.begin(), class_of_.end());
  num_classes_ = static_cast<int>(reps.size());
}

NewtonVector newton_vector(const AffineWeyl& weyl, const FrobeniusMap& sigma, const ExtAffElt& w) {
  AffMap f = weyl.compose(weyl.affine_map(w), sigma.map);
  // n = lcm(order of the linear part, order of sigma): then (w sigma)^n is a
  // pure translation of W~
  AffMap cur = f;
  int lin_order = 1;
  while (!imat_is_identity(cur.a)) {
    cur = weyl.compose(f, cur);
    if (++lin_order > 4096) throw std::logic_error("linear part order exceeds guard");
  }
  int n = std::lcm(lin_order, sigma.order);
  AffMap full = f;
  for (int i = 1; i < n; ++i) full = weyl.compose(f, full);
  if (!imat_is_identity(full.a)) throw std::logic_error("power is not a translation");
  NewtonVector out;
  out.nu = vec_scale(to_vec(full.b, weyl.datum().lattice_scale()), Rat(1, n));
  out.nu_bar = weyl.datum().dominant_representative(out.nu).first;
  return out;
}

bool is_straight(const AffineWeyl& weyl, const FrobeniusMap& sigma, const ExtAffElt& w) {
  NewtonVector nu = newton_vector(weyl, sigma, w);
  return weyl.datum().pair_two_rho(nu.nu_bar) == Rat(weyl.length(w));
}

SigmaClass sigma_class_of(const AffineWeyl& weyl, const FrobeniusMap& sigma,
                          const KottwitzTable& kappa, const ExtAffElt& w) {
  SigmaClass c;
  c.kappa = kappa.class_of_omega(weyl.omega_part(w));
  c.nu_bar = newton_vector(weyl, sigma, w).nu_bar;
  return c;
}

bool is_basic(const SigmaClass& c) { return vec_is_zero(c.nu_bar); }

bool leq_dominance(const SigmaClass& a, const SigmaClass& b) {
  if (a.kappa != b.kappa) return false;
  // nu_b - nu_a must be a nonnegative combination of simple coroots, which in
  // coroot coordinates is just coordinatewise nonnegativity
  for (size_t i = 0; i < a.nu_bar.size(); ++i)
    if (b.nu_bar[i] - a.nu_bar[i] < 0) return false;
  return true;
}

std::vector<SigmaClass> b_g_mu_via_straight(const GroupInstance& inst, const KottwitzTable& kappa) {
  std::set<SigmaClass> out;
  for (const ExtAffElt& w : adm_set(*inst.weyl, inst.mu))
    if (is_straight(*inst.weyl, inst.sigma, w))
      out.insert(sigma_class_of(*inst.weyl, inst.sigma, kappa, w));
  return std::vector<SigmaClass>(out.begin(), out.end());
}

Vec mu_diamond(const RootDatum& datum, const FrobeniusMap& sigma, const Vec& mu) {
  // order of sigma0 on the finite nodes
  int n0 = 1;
  {
    std::vector<int> p(sigma.finite_perm);
    std::vector<int> cur = p;
    auto is_id = [&](const std::vector<int>& q) {
      for (int i = 1; i <= datum.rank(); ++i)
        if (q[i] != i) return false;
      return true;
    };
    while (!is_id(cur)) {
      std::vector<int> next(cur.size(), 0);
      for (int i = 1; i <= datum.rank(); ++i) next[i] = p[cur[i]];
      cur = next;
      ++n0;
    }
  }
  Vec acc(datum.rank(), Rat(0));
  Vec cur = mu;
  for (int i = 0; i < n0; ++i) {
    acc = vec_add(acc, cur);
    cur = imat_apply(sigma.sigma0, cur);
  }
  return vec_scale(acc, Rat(1, n0));
}

std::vector<SigmaClass> b_g_mu_via_criterion(const GroupInstance& inst, const KottwitzTable& kappa) {
  const RootDatum& d = *inst.datum;
  const AffineWeyl& weyl = *inst.weyl;
  int mu_kappa = kappa.class_of_omega(weyl.omega_part(weyl.translation(inst.mu)));
  std::vector<std::vector<int>> orbits = sigma0_orbits(inst.sigma, d.rank());
  int m = static_cast<int>(orbits.size());
  Vec sigma_zero = inst.sigma.sigma_zero(weyl);

  std::set<SigmaClass> out;
  out.insert(SigmaClass{mu_kappa, Vec(d.rank(), Rat(0))});  // basic, D = empty

  // candidate Newton points are parametrized by the set D of sigma0-orbits
  // where <v, alpha> > 0; on the complement v is central
  for (int mask = 1; mask < (1 << m); ++mask) {
    std::vector<int> dset;
    for (int i = 0; i < m; ++i)
      if (mask & (1 << i)) dset.push_back(i);
    int nd = static_cast<int>(dset.size());
    // orbit coweight sums and the Gram-style matrix <sum_{i in O'} w_i^vee, w_O>
    std::vector<Vec> orbit_covec(nd, Vec(d.rank(), Rat(0)));
    std::vector<Vec> orbit_func(nd, Vec(d.rank(), Rat(0)));
    for (int a = 0; a < nd; ++a)
      for (int i : orbits[dset[a]]) {
        orbit_covec[a] = vec_add(orbit_covec[a], d.fundamental_coweight(i));
        orbit_func[a] = vec_add(orbit_func[a], d.fundamental_weight_func(i));
      }
    QMat g(nd, Vec(nd));
    for (int a = 0; a < nd; ++a)
      for (int b = 0; b < nd; ++b) g[a][b] = RootDatum::pair(orbit_covec[a], orbit_func[b]);
    std::vector<Rat> frac(nd), upper(nd);
    for (int b = 0; b < nd; ++b) {
      frac[b] = rat_frac(RootDatum::pair(vec_add(inst.mu, sigma_zero), orbit_func[b]));
      upper[b] = RootDatum::pair(inst.mu, orbit_func[b]);
    }
    // enumerate z_O in (frac + Z) cap (0, upper]
    std::vector<std::vector<Rat>> choices(nd);
    for (int b = 0; b < nd; ++b) {
      Rat z = frac[b] == 0 ? Rat(1) : frac[b];
      for (; z <= upper[b]; z = z + Rat(1)) choices[b].push_back(z);
      if (choices[b].empty()) break;
    }
    bool any_empty = false;
    for (int b = 0; b < nd; ++b) any_empty |= choices[b].empty();
    if (any_empty) continue;
    std::vector<size_t> pick(nd, 0);
    for (;;) {
      Vec z(nd);
      for (int b = 0; b < nd; ++b) z[b] = choices[b][pick[b]];
      Vec y;
      if (solve_linear(g, z, y)) {
        bool pos = std::all_of(y.begin(), y.end(), [](const Rat& x) { return x > 0; });
        if (pos) {
          Vec v(d.rank(), Rat(0));
          for (int a = 0; a < nd; ++a) v = vec_add(v, vec_scale(orbit_covec[a], y[a]));
          out.insert(SigmaClass{mu_kappa, v});
        }
      }
      int carry = nd - 1;
      while (carry >= 0) {
        if (++pick[carry] < choices[carry].size()) break;
        pick[carry] = 0;
        --carry;
      }
      if (carry < 0) break;
    }
  }
  return std::vector<SigmaClass>(out.begin(), out.end());
}

}  // namespace hncomb
