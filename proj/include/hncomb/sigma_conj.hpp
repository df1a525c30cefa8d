#pragma once

#include "hncomb/admissible.hpp"
#include "hncomb/frobenius.hpp"

namespace hncomb {

/// Newton vector of an element: (w sigma)^n = t^{n nu_w}.
struct NewtonVector {
  Vec nu;      // not necessarily dominant
  Vec nu_bar;  // dominant representative
};

/// sigma-conjugacy class invariant (kappa, nu_bar). kappa is a class index
/// in Omega/(1-sigma)Omega relative to a fixed KottwitzTable.
struct SigmaClass {
  int kappa = 0;
  Vec nu_bar;
  bool operator==(const SigmaClass& o) const { return kappa == o.kappa && nu_bar == o.nu_bar; }
  bool operator<(const SigmaClass& o) const {
    if (kappa != o.kappa) return kappa < o.kappa;
    return nu_bar < o.nu_bar;
  }
};

/// Cosets of (1-sigma)Omega in Omega; class ids are the smallest member index.
class KottwitzTable {
 public:
  KottwitzTable(const AffineWeyl& weyl, const FrobeniusMap& sigma);
  int class_of_omega(int omega_idx) const { return class_of_[omega_idx]; }
  int num_classes() const { return num_classes_; }

 private:
  std::vector<int> class_of_;
  int num_classes_ = 0;
};

NewtonVector newton_vector(const AffineWeyl& weyl, const FrobeniusMap& sigma, const ExtAffElt& w);

bool is_straight(const AffineWeyl& weyl, const FrobeniusMap& sigma, const ExtAffElt& w);

SigmaClass sigma_class_of(const AffineWeyl& weyl, const FrobeniusMap& sigma,
                          const KottwitzTable& kappa, const ExtAffElt& w);

bool is_basic(const SigmaClass& c);

/// Dominance order: equal kappa and nu_bar difference a nonnegative rational
/// combination of simple coroots.
bool leq_dominance(const SigmaClass& a, const SigmaClass& b);

/// B(G,{mu}) collected from the sigma-straight elements of Adm({mu}).
std::vector<SigmaClass> b_g_mu_via_straight(const GroupInstance& inst, const KottwitzTable& kappa);

/// B(G,{mu}) from the orbit-wise integrality/positivity criterion; kappa is
/// the fixed class of t^mu.
std::vector<SigmaClass> b_g_mu_via_criterion(const GroupInstance& inst, const KottwitzTable& kappa);

/// mu^diamond: average of mu over its sigma0-orbit.
Vec mu_diamond(const RootDatum& datum, const FrobeniusMap& sigma, const Vec& mu);

}  // namespace hncomb
