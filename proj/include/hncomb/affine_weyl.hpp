#pragma once

#include "hncomb/root_datum.hpp"

#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace hncomb {

/// Element of the extended affine Weyl group: t^{lam/L} * w, where L is the
/// datum's lattice_scale. lam must lie in L * (coweight lattice).
struct ExtAffElt {
  IVec lam;
  W0Elt w;
  bool operator==(const ExtAffElt& o) const { return lam == o.lam && w == o.w; }
  bool operator<(const ExtAffElt& o) const {
    if (lam != o.lam) return lam < o.lam;
    return w.p < o.w.p;
  }
};

struct ExtAffEltHash {
  size_t operator()(const ExtAffElt& e) const {
    size_t h = 0xcbf29ce484222325ULL;
    auto mix = [&](long long x) { h = (h ^ static_cast<size_t>(x)) * 0x100000001b3ULL; };
    for (auto x : e.lam) mix(x);
    for (auto x : e.w.p) mix(x);
    return h;
  }
};

/// Affine transformation of V: x -> A x + b/L (A integral in the coroot
/// basis, b scaled by L).
struct AffMap {
  IMat a;
  IVec b;
  bool operator==(const AffMap& o) const { return a == o.a && b == o.b; }
  bool operator<(const AffMap& o) const {
    if (a != o.a) return a < o.a;
    return b < o.b;
  }
};

/// A subset of the affine simple reflections S~ = {0, 1, ..., rank}.
using NodeSet = std::vector<int>;  // sorted, deduplicated

NodeSet make_node_set(std::vector<int> nodes, int rank);
bool node_set_contains(const NodeSet& k, int node);

/// The extended affine Weyl group of a root datum: multiplication, length,
/// reduced words, Omega, Bruhat order and coset representatives. Immutable
/// group data; internal memo caches are guarded, so concurrent calls are safe
/// and deterministic.
class AffineWeyl {
 public:
  explicit AffineWeyl(const RootDatum& datum);

  const RootDatum& datum() const { return datum_; }
  int rank() const { return datum_.rank(); }

  ExtAffElt identity() const;
  ExtAffElt simple(int node) const;  // node in 0..rank
  ExtAffElt translation(const Vec& coweight) const;
  ExtAffElt translation_scaled(const IVec& lam) const;
  ExtAffElt from_w0(const W0Elt& w) const;
  Vec translation_part(const ExtAffElt& e) const;

  ExtAffElt mult(const ExtAffElt& a, const ExtAffElt& b) const;
  ExtAffElt inverse(const ExtAffElt& a) const;
  Vec act_on_point(const ExtAffElt& e, const Vec& v) const;
  AffMap affine_map(const ExtAffElt& e) const;

  AffMap compose(const AffMap& f, const AffMap& g) const;  // f after g
  AffMap aff_identity() const;
  AffMap aff_inverse(const AffMap& f) const;
  Vec aff_apply(const AffMap& f, const Vec& v) const;
  int aff_order(const AffMap& f, int guard = 4096) const;

  /// Iwahori-Matsumoto length.
  int length(const ExtAffElt& e) const;
  bool has_left_descent(const ExtAffElt& e, int node) const;
  /// Smallest left descent, or -1 when length 0.
  int first_left_descent(const ExtAffElt& e) const;

  // -- Omega, the length-zero subgroup
  int omega_order() const { return static_cast<int>(omega_.size()); }
  const ExtAffElt& omega_element(int idx) const { return omega_[idx]; }
  /// Index of the Omega-part of e (e lies in W_a * omega_[idx]).
  int omega_part(const ExtAffElt& e) const;
  ExtAffElt wa_part(const ExtAffElt& e) const;  // e * omega_part(e)^{-1}
  bool in_wa(const ExtAffElt& e) const;

  /// Lexicographically least reduced word of the W_a-part (list of nodes).
  std::vector<int> reduced_word(const ExtAffElt& e) const;
  ExtAffElt word_to_element(const std::vector<int>& word, int omega_idx = 0) const;
  /// "s0.s1*t1" style serialization; "e" for the identity.
  std::string to_string(const ExtAffElt& e) const;

  bool bruhat_leq(const ExtAffElt& x, const ExtAffElt& y) const;
  /// All z <= y: products of subwords of a fixed reduced word of y.
  std::vector<ExtAffElt> lower_ideal(const ExtAffElt& y) const;

  ExtAffElt min_coset_rep(const NodeSet& k, const ExtAffElt& e) const;
  bool is_min_coset_rep(const NodeSet& k, const ExtAffElt& e) const;
  bool is_finite_parabolic(const NodeSet& k) const;
  /// Enumerates W_K by closure (throws if the guard is exceeded).
  std::vector<ExtAffElt> enumerate_parabolic(const NodeSet& k, size_t guard = 2000000) const;

  /// Node permutation induced by conjugation with a length-0 element.
  std::vector<int> omega_node_action(int omega_idx) const;

 private:
  const RootDatum& datum_;
  long long scale_;
  std::vector<ExtAffElt> simple_;
  std::vector<ExtAffElt> omega_;
  std::vector<IVec> root_func_scaled_;  // func vectors for quick pairing

  long long pair_scaled(const IVec& lam, int root_idx) const;  // <lam/L, alpha>, exact

  mutable std::mutex memo_mu_;
  mutable std::unordered_map<ExtAffElt, int, ExtAffEltHash> id_of_;
  mutable std::vector<ExtAffElt> elt_of_;
  mutable std::unordered_map<uint64_t, bool> bruhat_memo_;
  int intern(const ExtAffElt& e) const;
  bool bruhat_leq_wa(const ExtAffElt& x, int lx, const ExtAffElt& y, int ly) const;
};

}  // namespace hncomb
