#pragma once

#include "hncomb/hn_theory.hpp"

namespace hncomb {

/// Dominant sigma0-fixed direction cutting out the witness Levi.
struct VFlat {
  Vec v;       // v-flat
  NodeSet j;   // finite nodes fixing it: J = { i : s_i(v) = v }
};

VFlat choose_v_flat(const GroupInstance& inst, const SigmaClass& c);

/// (v, sigma)-alcove element test: p(w sigma) fixes v, and for every root
/// positive against v the infimum over the alcove of w sigma is at least the
/// infimum over the base alcove.
bool is_alcove_element(const GroupInstance& inst, const ExtAffElt& w, const Vec& v);

/// x <=_v y: reachability by reflections of W~_v increasing the ambient
/// Bruhat order. Both arguments must have linear part fixing v.
bool bruhat_leq_v(const AffineWeyl& weyl, const Vec& v, const ExtAffElt& x, const ExtAffElt& y);

/// The full <=_v lower ideal of y.
std::vector<ExtAffElt> lower_ideal_v(const AffineWeyl& weyl, const Vec& v, const ExtAffElt& y);

/// z in W_0^J with p(sigma)(z(v)) = z(v), plus its W_K^sigma-class id.
struct ParabolicOrbitRep {
  W0Elt z;
  Vec zv;        // z(v-flat)
  int group_id;  // W_K^sigma-class, ids are 0-based in enumeration order
};

/// All parabolic indices for the decomposition, grouped by the coset
/// criterion; the three equivalent groupings (parabolic conjugation, coset
/// equality, sigma-fixed conjugation) are computed independently and must
/// agree.
std::vector<ParabolicOrbitRep> enumerate_parabolic_orbits(const GroupInstance& inst,
                                                          const VFlat& vflat);

/// Levi admissible set for the orbit rep z: union of <=_{z(v)} ideals of the
/// translations t^{z(u(mu))}, u in W_J.
std::vector<ExtAffElt> levi_adm_set(const GroupInstance& inst, const VFlat& vflat, const W0Elt& z);

struct AdmDecompReport {
  bool ok = false;
  SigmaClass cls;
  VFlat vflat;
  size_t adm_mu_b_size = 0;
  std::vector<std::pair<std::string, std::vector<std::string>>> blocks;  // z -> members
  std::vector<std::string> failures;
};

/// Checks that the oracle-filtered Adm({mu}, b) is partitioned exactly by the
/// Levi admissible sets, that every member is a (z(v-flat), sigma)-alcove
/// element, and that the alcove direction is unique per member.
AdmDecompReport verify_adm_decomposition(const GroupInstance& inst, const SigmaClass& c,
                                         const DLOracle& oracle);

}  // namespace hncomb
