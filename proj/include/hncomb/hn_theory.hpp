#pragma once

#include "hncomb/adlv_oracle.hpp"

#include <optional>

namespace hncomb {

/// Per-orbit report of the minute test: exact value of
/// <mu, omega_O> + {<sigma(0), omega_O>} for each sigma0-orbit O.
struct MinuteReport {
  bool minute = false;
  std::vector<std::pair<std::vector<int>, Rat>> orbit_values;
};

MinuteReport is_minute(const GroupInstance& inst);

/// Minimal witness Levi for a Hodge-Newton decomposable class: the
/// sigma0-closure of { i : <nu_bar, alpha_i> = 0 } together with the support
/// of mu^diamond - nu_bar, when proper and the defect is a nonnegative
/// combination of simple coroots.
std::optional<NodeSet> is_hn_decomposable(const GroupInstance& inst, const SigmaClass& c);

bool is_fully_hn(const GroupInstance& inst);

/// supp_sigma(w): minimal tau-sigma stable subset of S~ supporting the
/// W_a-part of w.
NodeSet supp_sigma(const GroupInstance& inst, const ExtAffElt& w);

/// I(K, w, sigma): maximal K' <= K with Ad(w) sigma(K') = K', by the
/// shrinking fixpoint.
NodeSet max_adapted_subset(const GroupInstance& inst, const NodeSet& k, const ExtAffElt& w);

/// Two independent computations that must agree: finiteness of
/// W_{supp_sigma(w)} and exact feasibility of the fixed-point system of
/// w o sigma inside the closed base alcove. Disagreement is a hard error.
bool has_fixed_point_in_closed_alcove(const GroupInstance& inst, const ExtAffElt& w,
                                      Vec* witness = nullptr);

/// Condition (FC): every w in Adm cap ^K W~ with central Newton point fixes a
/// point of the closed alcove.
bool fc_condition(const GroupInstance& inst);

/// (FC_spade): same with the spade subset.
bool fc_spade_condition(const GroupInstance& inst);

/// Root system built from K by reading node 0 as -theta.
struct UnderlineRoots {
  NodeSet k;
  std::vector<int> alias;        // alias[position in k] = root index of underline alpha
  std::vector<int> pos_roots;    // indices of Phi_K+ in the ambient root list
  std::vector<NodeSet> components;  // connected components of the K-diagram
  Vec e_k;                       // barycenter of the facet for S~ - K
  Vec theta_k_func;              // sum of the highest roots of the components, as a functional

  int alias_of(int node) const;
};

UnderlineRoots build_underline_roots(const AffineWeyl& weyl, const NodeSet& k);

/// Fundamental weight omega_{j,K} of Phi_K as a pairing vector.
Vec underline_weight_func(const AffineWeyl& weyl, const UnderlineRoots& ur, int node);

/// Orthogonal projection of v onto the span of Phi_K^vee.
Vec project_onto_underline(const AffineWeyl& weyl, const UnderlineRoots& ur, const Vec& v);

/// Twisted Coxeter element c_{Gamma,i} built layer by layer from graph
/// distance, with the closed-formula action cross-checked against the direct
/// product. Returns the group element.
ExtAffElt build_coxeter_witness(const AffineWeyl& weyl, const UnderlineRoots& ur,
                                const NodeSet& gamma, const NodeSet& based);

struct PermissibleTriple {
  Vec lambda;
  NodeSet gamma;
  NodeSet based;
  ExtAffElt elt;  // t^lambda c_{gamma, based}
};

/// Enumerates permissible triples for the instance and returns the first one
/// whose element has no fixed point in the closed alcove; none when mu is
/// minute.
std::optional<PermissibleTriple> witness_search_non_minute(const GroupInstance& inst);

/// All permissible triples (used by the property suites).
std::vector<PermissibleTriple> enumerate_permissible_triples(const GroupInstance& inst);

struct ScanRow {
  std::string group;  // e.g. "C2"
  std::string mu;     // coefficients in fundamental-coweight coordinates
  std::string sigma;  // "t<idx>;<diagram images>"
  bool minute = false;
  bool fully_hn = false;
  bool in_table = false;
};

struct ScanOptions {
  std::vector<std::pair<CartanType, int>> groups;  // defaults to the rank <= 4 classical list
  Rat mu_bound = Rat(6);                           // 0 < <mu, 2rho> <= bound
  int jobs = 1;
};

struct ScanResult {
  std::vector<ScanRow> rows;
  bool all_agree = false;
  std::vector<std::string> disagreements;
};

/// Exhaustive classification scan: records (minute, fully-HN,
/// table-membership) per instance and asserts three-way agreement.
ScanResult classification_scan(const ScanOptions& opts);

/// Membership in the fully Hodge-Newton decomposable classification list,
/// read up to isomorphism of triples (diagram automorphisms of the affine
/// Dynkin diagram).
bool in_classification_table(const Context& ctx, const Vec& mu, const FrobeniusMap& sigma);

std::vector<Vec> dominant_coweights_up_to(const RootDatum& datum, const Rat& bound);

}  // namespace hncomb
