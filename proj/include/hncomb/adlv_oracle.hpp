#pragma once

#include "hncomb/sigma_conj.hpp"

#include <map>
#include <optional>

namespace hncomb {

/// Classes with X_w(b) nonempty, mapped to dim X_w(b).
using DimMap = std::map<SigmaClass, int>;

/// Ground truth for nonemptiness and dimension of X_w(b), computed by the
/// reduction recursion
///   dim X_w(b) = max{dim X_{s w'}(b), dim X_{s w' sigma(s)}(b)} + 1
/// along length-preserving shifts w ~ w', with the minimal-length base case
/// X_w(b) nonempty only for [b] = class(w), of dimension l(w) - <nu_bar, 2rho>.
/// The base case is adopted as an axiom of the oracle; it is where the
/// geometry enters and it is not re-derived here. The shift relation used for
/// "same class, same length" is closure under the moves x -> s x sigma(s)
/// with l unchanged.
class DLOracle {
 public:
  DLOracle(const AffineWeyl& weyl, const FrobeniusMap& sigma);

  const KottwitzTable& kappa_table() const { return kappa_; }

  /// Closure of {w} under length-preserving moves x -> s x sigma(s).
  std::vector<ExtAffElt> cyclic_shift_orbit(const ExtAffElt& w) const;

  /// True iff no shorter element is reachable by non-length-increasing moves.
  bool is_minimal_in_class(const ExtAffElt& w) const;

  DimMap dl_dimension(const ExtAffElt& w) const;

  /// dim X(mu, b)_K = max over w in Adm cap ^K W~ of dim X_w(b); nullopt when
  /// X_w(b) is empty for every such w.
  std::optional<int> dim_x_mu_b_k(const GroupInstance& inst, const SigmaClass& c) const;

  /// Condition: every w in Adm cap ^K W~ meets exactly one class of B(G,{mu}).
  bool ekor_newton_uniqueness(const GroupInstance& inst) const;

 private:
  const AffineWeyl& weyl_;
  FrobeniusMap sigma_;
  KottwitzTable kappa_;

  mutable std::mutex mu_;
  mutable std::map<ExtAffElt, DimMap> memo_;  // keyed by canonical orbit representative

  DimMap compute(const ExtAffElt& w, int depth) const;
};

}  // namespace hncomb
