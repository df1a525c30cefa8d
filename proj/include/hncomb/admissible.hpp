#pragma once

#include "hncomb/frobenius.hpp"

namespace hncomb {

/// Adm({mu}) = { w : w <= t^{x(mu)} for some x in W_0 }, sorted.
std::vector<ExtAffElt> adm_set(const AffineWeyl& weyl, const Vec& mu);

/// Adm({mu}) cap ^K W~.
std::vector<ExtAffElt> adm_cap_kw(const AffineWeyl& weyl, const Vec& mu, const NodeSet& k);

/// ^K Adm({mu})_spade = union over lam in W_0 mu of (^K W~ cap t^lam W_K).
std::vector<ExtAffElt> adm_spade(const AffineWeyl& weyl, const Vec& mu, const NodeSet& k);

/// Adm^K({mu}) = W_K Adm({mu}) W_K.
std::vector<ExtAffElt> adm_k(const AffineWeyl& weyl, const Vec& mu, const NodeSet& k);

/// Adm^K({l1}) Adm^K({l2}) == Adm^K({l1+l2}) ?
bool verify_additivity(const AffineWeyl& weyl, const NodeSet& k, const Vec& lam1, const Vec& lam2);

/// Every w in ^K Adm({l1+l2})_spade factors as w1 w2 with wi in ^K Adm({li})_spade ?
bool verify_weak_additivity_spade(const AffineWeyl& weyl, const NodeSet& k, const Vec& lam1,
                                  const Vec& lam2);

}  // namespace hncomb
