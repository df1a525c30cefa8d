#include "hncomb/adlv_oracle.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace hncomb {

DLOracle::DLOracle(const AffineWeyl& weyl, const FrobeniusMap& sigma)
    : weyl_(weyl), sigma_(sigma), kappa_(weyl, sigma) {}

std::vector<ExtAffElt> DLOracle::cyclic_shift_orbit(const ExtAffElt& w) const {
  int len = weyl_.length(w);
  std::set<ExtAffElt> seen{w};
  std::vector<ExtAffElt> queue{w};
  while (!queue.empty()) {
    ExtAffElt cur = queue.back();
    queue.pop_back();
    for (int s = 0; s <= weyl_.rank(); ++s) {
      ExtAffElt img = weyl_.mult(weyl_.mult(weyl_.simple(s), cur), weyl_.simple(sigma_.node_perm[s]));
      if (weyl_.length(img) == len && seen.insert(img).second) queue.push_back(img);
    }
  }
  return std::vector<ExtAffElt>(seen.begin(), seen.end());
}

bool DLOracle::is_minimal_in_class(const ExtAffElt& w) const {
  int len = weyl_.length(w);
  std::set<ExtAffElt> seen{w};
  std::vector<ExtAffElt> queue{w};
  while (!queue.empty()) {
    ExtAffElt cur = queue.back();
    queue.pop_back();
    for (int s = 0; s <= weyl_.rank(); ++s) {
      ExtAffElt img = weyl_.mult(weyl_.mult(weyl_.simple(s), cur), weyl_.simple(sigma_.node_perm[s]));
      if (weyl_.length(img) < len) return false;
      if (weyl_.length(img) == len && seen.insert(img).second) queue.push_back(img);
    }
  }
  return true;
}

DimMap DLOracle::dl_dimension(const ExtAffElt& w) const { return compute(w, weyl_.length(w) + 1); }

DimMap DLOracle::compute(const ExtAffElt& w, int depth) const {
  if (depth < 0) throw std::logic_error("reduction recursion exceeds the length bound");
  std::vector<ExtAffElt> orbit = cyclic_shift_orbit(w);
  ExtAffElt canon = *std::min_element(orbit.begin(), orbit.end());
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = memo_.find(canon);
    if (it != memo_.end()) return it->second;
  }
  int len = weyl_.length(w);
  // reduction spots: w' in the shift orbit, s with l(s w' sigma(s)) = l(w') - 2
  std::vector<std::pair<ExtAffElt, int>> spots;
  for (const ExtAffElt& wp : orbit)
    for (int s = 0; s <= weyl_.rank(); ++s) {
      ExtAffElt both = weyl_.mult(weyl_.mult(weyl_.simple(s), wp), weyl_.simple(sigma_.node_perm[s]));
      if (weyl_.length(both) == len - 2) spots.emplace_back(wp, s);
    }
  DimMap result;
  if (spots.empty()) {
    if (!is_minimal_in_class(w))
      throw std::logic_error("no reduction spot on a non-minimal element");
    NewtonVector nu = newton_vector(weyl_, sigma_, w);
    Rat def = Rat(len) - weyl_.datum().pair_two_rho(nu.nu_bar);
    if (!rat_is_int(def) || def < 0) throw std::logic_error("defect must be a natural number");
    SigmaClass c = sigma_class_of(weyl_, sigma_, kappa_, w);
    result[c] = static_cast<int>(def.numerator());
  } else {
    auto eval = [&](const std::pair<ExtAffElt, int>& spot) {
      const auto& [wp, s] = spot;
      ExtAffElt child1 = weyl_.mult(weyl_.simple(s), wp);
      ExtAffElt child2 = weyl_.mult(child1, weyl_.simple(sigma_.node_perm[s]));
      DimMap d1 = compute(child1, depth - 1);
      DimMap d2 = compute(child2, depth - 1);
      DimMap merged;
      for (const auto& [c, v] : d1) merged[c] = v + 1;
      for (const auto& [c, v] : d2) {
        auto it = merged.find(c);
        if (it == merged.end() || it->second < v + 1) merged[c] = v + 1;
      }
      return merged;
    };
    result = eval(spots.front());
    if (spots.size() > 1) {
      // the reduction must not depend on the chosen spot
      DimMap other = eval(spots.back());
      if (other != result) throw std::logic_error("reduction is path dependent");
    }
  }
  {
    std::lock_guard<std::mutex> lock(mu_);
    memo_.emplace(canon, result);
  }
  return result;
}

std::optional<int> DLOracle::dim_x_mu_b_k(const GroupInstance& inst, const SigmaClass& c) const {
  std::optional<int> best;
  for (const ExtAffElt& w : adm_cap_kw(weyl_, inst.mu, inst.k)) {
    DimMap dm = dl_dimension(w);
    auto it = dm.find(c);
    if (it != dm.end() && (!best || *best < it->second)) best = it->second;
  }
  return best;
}

bool DLOracle::ekor_newton_uniqueness(const GroupInstance& inst) const {
  std::vector<SigmaClass> bgmu = b_g_mu_via_criterion(inst, kappa_);
  std::set<SigmaClass> bset(bgmu.begin(), bgmu.end());
  for (const ExtAffElt& w : adm_cap_kw(weyl_, inst.mu, inst.k)) {
    int hits = 0;
    for (const auto& [c, v] : dl_dimension(w))
      if (bset.count(c)) ++hits;
    if (hits != 1) return false;
  }
  return true;
}

}  // namespace hncomb
