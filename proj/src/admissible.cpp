#include "hncomb/admissible.hpp"

#include <set>
#include <stdexcept>
#include <unordered_set>

namespace hncomb {

namespace {

// union of the subword order-ideals of the translations; tolerates mu = 0
// (the degenerate case of the additivity statements)
std::vector<ExtAffElt> adm_core(const AffineWeyl& weyl, const Vec& mu) {
  if (!weyl.datum().is_dominant(mu)) throw std::invalid_argument("adm_set: mu must be dominant");
  std::set<ExtAffElt> out;
  for (const Vec& lam : weyl.datum().w0_orbit(mu)) {
    for (const ExtAffElt& x : weyl.lower_ideal(weyl.translation(lam))) out.insert(x);
  }
  return std::vector<ExtAffElt>(out.begin(), out.end());
}

}  // namespace

std::vector<ExtAffElt> adm_set(const AffineWeyl& weyl, const Vec& mu) {
  if (vec_is_zero(mu)) throw std::invalid_argument("adm_set: mu must be nonzero");
  return adm_core(weyl, mu);
}

std::vector<ExtAffElt> adm_cap_kw(const AffineWeyl& weyl, const Vec& mu, const NodeSet& k) {
  std::vector<ExtAffElt> out;
  for (const ExtAffElt& x : adm_set(weyl, mu))
    if (weyl.is_min_coset_rep(k, x)) out.push_back(x);
  return out;
}

std::vector<ExtAffElt> adm_spade(const AffineWeyl& weyl, const Vec& mu, const NodeSet& k) {
  std::set<ExtAffElt> out;
  std::vector<ExtAffElt> wk = weyl.enumerate_parabolic(k);
  for (const Vec& lam : weyl.datum().w0_orbit(mu)) {
    ExtAffElt t = weyl.translation(lam);
    for (const ExtAffElt& u : wk) {
      ExtAffElt x = weyl.mult(t, u);
      if (weyl.is_min_coset_rep(k, x)) out.insert(x);
    }
  }
  return std::vector<ExtAffElt>(out.begin(), out.end());
}

std::vector<ExtAffElt> adm_k(const AffineWeyl& weyl, const Vec& mu, const NodeSet& k) {
  std::set<ExtAffElt> out;
  std::vector<ExtAffElt> wk = weyl.enumerate_parabolic(k);
  std::vector<ExtAffElt> adm = adm_core(weyl, mu);
  for (const ExtAffElt& u : wk)
    for (const ExtAffElt& a : adm) {
      ExtAffElt ua = weyl.mult(u, a);
      for (const ExtAffElt& v : wk) out.insert(weyl.mult(ua, v));
    }
  return std::vector<ExtAffElt>(out.begin(), out.end());
}

bool verify_additivity(const AffineWeyl& weyl, const NodeSet& k, const Vec& lam1, const Vec& lam2) {
  std::vector<ExtAffElt> a = adm_k(weyl, lam1, k);
  std::vector<ExtAffElt> b = adm_k(weyl, lam2, k);
  std::set<ExtAffElt> lhs;
  for (const ExtAffElt& x : a)
    for (const ExtAffElt& y : b) lhs.insert(weyl.mult(x, y));
  std::vector<ExtAffElt> rhs = adm_k(weyl, vec_add(lam1, lam2), k);
  return lhs == std::set<ExtAffElt>(rhs.begin(), rhs.end());
}

bool verify_weak_additivity_spade(const AffineWeyl& weyl, const NodeSet& k, const Vec& lam1,
                                  const Vec& lam2) {
  std::vector<ExtAffElt> s1 = adm_spade(weyl, lam1, k);
  std::vector<ExtAffElt> s2 = adm_spade(weyl, lam2, k);
  std::set<ExtAffElt> products;
  for (const ExtAffElt& x : s1)
    for (const ExtAffElt& y : s2) products.insert(weyl.mult(x, y));
  for (const ExtAffElt& w : adm_spade(weyl, vec_add(lam1, lam2), k))
    if (!products.count(w)) return false;
  return true;
}

}  // namespace hncomb
