#pragma once

#include "hncomb/affine_weyl.hpp"

#include <memory>

namespace hncomb {

/// Length-preserving automorphism of the extended affine Weyl group fixing
/// the base alcove, carried with its affine action on V. Built as
/// (conjugation by tau in Omega) composed with a finite diagram automorphism.
struct FrobeniusMap {
  AffMap map;                    // affine action on V; p(sigma) = map.a, sigma(0) = map.b / L
  int order = 1;                 // order of the affine map
  IMat sigma0;                   // L-action: dominance-preserving normalization of p(sigma)
  W0Elt correcting_w;            // sigma0 = correcting_w o p(sigma)
  std::vector<int> node_perm;    // induced permutation of S~ (labels 0..rank)
  std::vector<int> finite_perm;  // sigma0 on finite nodes, finite_perm[i] for i in 1..rank
  std::vector<int16_t> root_perm;      // action of p(sigma) on the root list
  std::vector<int16_t> root_perm_inv;  //   and its inverse
  int tau_idx = 0;               // the Omega part used to build it
  std::vector<int> diagram_perm;  // the finite diagram automorphism used to build it (1..rank)

  bool operator==(const FrobeniusMap& o) const { return map == o.map; }
  bool operator<(const FrobeniusMap& o) const { return map < o.map; }

  Vec sigma_zero(const AffineWeyl& weyl) const { return to_vec(map.b, weyl.datum().lattice_scale()); }
  bool is_identity() const { return imat_is_identity(map.a) && std::all_of(map.b.begin(), map.b.end(), [](long long x) { return x == 0; }); }
};

/// All permutations of the finite nodes preserving the Cartan matrix.
std::vector<std::vector<int>> finite_diagram_automorphisms(const RootDatum& datum);

/// Identity automorphism of the finite diagram.
std::vector<int> identity_diagram_perm(int rank);

FrobeniusMap build_sigma(const AffineWeyl& weyl, int tau_idx, const std::vector<int>& finite_diagram_aut);

/// All base-alcove-preserving automorphisms (tau compositions with finite
/// diagram automorphisms), deduplicated as affine maps.
std::vector<FrobeniusMap> enumerate_sigmas(const AffineWeyl& weyl);

ExtAffElt sigma_apply(const AffineWeyl& weyl, const FrobeniusMap& sigma, const ExtAffElt& x);

/// sigma0-orbits on the finite nodes {1..rank}, each orbit sorted.
std::vector<std::vector<int>> sigma0_orbits(const FrobeniusMap& sigma, int rank);

bool node_set_sigma_stable(const FrobeniusMap& sigma, const NodeSet& k);

/// The bundle every decomposability predicate is evaluated on.
struct GroupInstance {
  const RootDatum* datum = nullptr;
  const AffineWeyl* weyl = nullptr;
  FrobeniusMap sigma;
  Vec mu;     // dominant coweight
  NodeSet k;  // level structure, sigma-stable, W_K finite

  void validate(bool require_nonzero_mu = true) const;
  std::string describe_key() const;  // deterministic identifier for reports
};

/// Owns the immutable group data a family of instances shares.
struct Context {
  RootDatum datum;
  AffineWeyl weyl;
  Context(CartanType type, int rank) : datum(type, rank), weyl(datum) {}
};

}  // namespace hncomb
