#include "hncomb/affine_weyl.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace hncomb {

NodeSet make_node_set(std::vector<int> nodes, int rank) {
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  for (int n : nodes)
    if (n < 0 || n > rank)
      throw std::invalid_argument("node index out of range: " + std::to_string(n));
  return nodes;
}

bool node_set_contains(const NodeSet& k, int node) {
  return std::binary_search(k.begin(), k.end(), node);
}

AffineWeyl::AffineWeyl(const RootDatum& datum) : datum_(datum), scale_(datum.lattice_scale()) {
  int r = datum_.rank();
  root_func_scaled_.resize(datum_.num_roots());
  for (int i = 0; i < datum_.num_roots(); ++i) root_func_scaled_[i] = datum_.root(i).func;

  simple_.resize(r + 1);
  for (int i = 1; i <= r; ++i) simple_[i] = ExtAffElt{IVec(r, 0), datum_.simple_reflection(i)};
  // s_0 = t^{theta^vee} s_theta
  int theta = datum_.highest_root_index();
  IVec theta_check = datum_.root(theta).coroot;
  for (auto& x : theta_check) x *= scale_;
  simple_[0] = ExtAffElt{theta_check, datum_.reflection(theta)};

  // Omega: identity plus, for every node with mark 1, the unique length-0
  // element of t^{omega_i^vee} W_0, found by greedy descent.
  omega_.push_back(identity());
  for (int i = 1; i <= r; ++i) {
    if (datum_.mark(i) != 1) continue;
    ExtAffElt x = translation_scaled(datum_.fundamental_coweight_scaled(i));
    for (;;) {
      int len = length(x);
      if (len == 0) break;
      bool moved = false;
      for (int j = 1; j <= r && !moved; ++j) {
        ExtAffElt y = mult(x, simple_[j]);
        if (length(y) < len) {
          x = y;
          moved = true;
        }
      }
      if (!moved) throw std::logic_error("no length-0 element in t^omega * W_0");
    }
    omega_.push_back(x);
  }
}

ExtAffElt AffineWeyl::identity() const {
  return ExtAffElt{IVec(datum_.rank(), 0), datum_.w0_identity()};
}

ExtAffElt AffineWeyl::simple(int node) const {
  if (node < 0 || node > datum_.rank())
    throw std::invalid_argument("simple reflection index out of range");
  return simple_[node];
}

ExtAffElt AffineWeyl::translation_scaled(const IVec& lam) const {
  return ExtAffElt{lam, datum_.w0_identity()};
}

ExtAffElt AffineWeyl::translation(const Vec& coweight) const {
  IVec lam(datum_.rank());
  for (int k = 0; k < datum_.rank(); ++k) {
    Rat s = coweight[k] * Rat(scale_);
    if (!rat_is_int(s)) throw std::invalid_argument("vector is not in the coweight lattice");
    lam[k] = s.numerator();
  }
  ExtAffElt e{lam, datum_.w0_identity()};
  // lattice membership: integral pairing with every simple root
  for (int i = 1; i <= datum_.rank(); ++i) pair_scaled(lam, datum_.simple_root_index(i));
  return e;
}

ExtAffElt AffineWeyl::from_w0(const W0Elt& w) const {
  return ExtAffElt{IVec(datum_.rank(), 0), w};
}

Vec AffineWeyl::translation_part(const ExtAffElt& e) const {
  return to_vec(e.lam, scale_);
}

ExtAffElt AffineWeyl::mult(const ExtAffElt& a, const ExtAffElt& b) const {
  return ExtAffElt{ivec_add(a.lam, datum_.act(a.w, b.lam)), datum_.mult(a.w, b.w)};
}

ExtAffElt AffineWeyl::inverse(const ExtAffElt& a) const {
  W0Elt wi = datum_.inverse(a.w);
  return ExtAffElt{ivec_neg(datum_.act(wi, a.lam)), wi};
}

Vec AffineWeyl::act_on_point(const ExtAffElt& e, const Vec& v) const {
  return vec_add(to_vec(e.lam, scale_), datum_.act(e.w, v));
}

AffMap AffineWeyl::affine_map(const ExtAffElt& e) const {
  return AffMap{datum_.matrix(e.w), e.lam};
}

AffMap AffineWeyl::compose(const AffMap& f, const AffMap& g) const {
  return AffMap{imat_mul(f.a, g.a), ivec_add(f.b, imat_apply(f.a, g.b))};
}

AffMap AffineWeyl::aff_identity() const {
  return AffMap{imat_identity(datum_.rank()), IVec(datum_.rank(), 0)};
}

AffMap AffineWeyl::aff_inverse(const AffMap& f) const {
  IMat ai = imat_inverse(f.a);
  return AffMap{ai, ivec_neg(imat_apply(ai, f.b))};
}

Vec AffineWeyl::aff_apply(const AffMap& f, const Vec& v) const {
  return vec_add(to_vec(f.b, scale_), imat_apply(f.a, v));
}

int AffineWeyl::aff_order(const AffMap& f, int guard) const {
  AffMap cur = f;
  for (int n = 1; n <= guard; ++n) {
    if (cur == aff_identity()) return n;
    cur = compose(f, cur);
  }
  throw std::logic_error("affine map order exceeds guard");
}

long long AffineWeyl::pair_scaled(const IVec& lam, int root_idx) const {
  const IVec& f = root_func_scaled_[root_idx];
  long long s = 0;
  for (size_t k = 0; k < lam.size(); ++k) s += lam[k] * f[k];
  if (s % scale_ != 0) throw std::logic_error("non-integral pairing: element not in the lattice");
  return s / scale_;
}

int AffineWeyl::length(const ExtAffElt& e) const {
  // l(t^lam w) = sum_{alpha>0, w^{-1}alpha>0} |<lam,alpha>|
  //            + sum_{alpha>0, w^{-1}alpha<0} |<lam,alpha>-1|
  W0Elt wi = datum_.inverse(e.w);
  long long len = 0;
  for (int a = 0; a < datum_.num_positive(); ++a) {
    long long p = pair_scaled(e.lam, a);
    if (wi.p[a] < datum_.num_positive())
      len += std::abs(p);
    else
      len += std::abs(p - 1);
  }
  return static_cast<int>(len);
}

bool AffineWeyl::has_left_descent(const ExtAffElt& e, int node) const {
  return length(mult(simple_[node], e)) < length(e);
}

int AffineWeyl::first_left_descent(const ExtAffElt& e) const {
  int len = length(e);
  if (len == 0) return -1;
  for (int s = 0; s <= datum_.rank(); ++s)
    if (length(mult(simple_[s], e)) < len) return s;
  throw std::logic_error("positive-length element with no descent");
}

int AffineWeyl::omega_part(const ExtAffElt& e) const {
  for (int i = 0; i < omega_order(); ++i) {
    ExtAffElt rest = mult(e, inverse(omega_[i]));
    if (in_wa(rest)) return i;
  }
  throw std::logic_error("element has no Omega decomposition");
}

ExtAffElt AffineWeyl::wa_part(const ExtAffElt& e) const {
  return mult(e, inverse(omega_[omega_part(e)]));
}

bool AffineWeyl::in_wa(const ExtAffElt& e) const {
  // W_a = Q^vee rtimes W_0; coroot-lattice points are the integer vectors
  for (auto x : e.lam)
    if (x % scale_ != 0) return false;
  return true;
}

std::vector<int> AffineWeyl::reduced_word(const ExtAffElt& e) const {
  ExtAffElt cur = wa_part(e);
  std::vector<int> word;
  int len = length(cur);
  while (len > 0) {
    int s = -1;
    for (int j = 0; j <= datum_.rank(); ++j) {
      ExtAffElt y = mult(simple_[j], cur);
      if (length(y) < len) {
        s = j;
        cur = y;
        break;
      }
    }
    if (s < 0) throw std::logic_error("stuck while building reduced word");
    word.push_back(s);
    --len;
  }
  return word;
}

ExtAffElt AffineWeyl::word_to_element(const std::vector<int>& word, int omega_idx) const {
  ExtAffElt out = identity();
  for (int s : word) out = mult(out, simple_[s]);
  return mult(out, omega_[omega_idx]);
}

std::string AffineWeyl::to_string(const ExtAffElt& e) const {
  std::vector<int> word = reduced_word(e);
  int tau = omega_part(e);
  std::string out;
  if (word.empty()) {
    out = "e";
  } else {
    for (size_t i = 0; i < word.size(); ++i) {
      if (i) out += ".";
      out += "s" + std::to_string(word[i]);
    }
  }
  if (tau != 0) out += "*t" + std::to_string(tau);
  return out;
}

int AffineWeyl::intern(const ExtAffElt& e) const {
  auto it = id_of_.find(e);
  if (it != id_of_.end()) return it->second;
  int id = static_cast<int>(elt_of_.size());
  elt_of_.push_back(e);
  id_of_.emplace(e, id);
  return id;
}

bool AffineWeyl::bruhat_leq_wa(const ExtAffElt& x, int lx, const ExtAffElt& y, int ly) const {
  if (lx > ly) return false;
  if (lx == 0) return true;
  if (lx == ly) return x == y;
  uint64_t key;
  {
    std::lock_guard<std::mutex> lock(memo_mu_);
    key = (static_cast<uint64_t>(intern(x)) << 32) | static_cast<uint32_t>(intern(y));
    auto it = bruhat_memo_.find(key);
    if (it != bruhat_memo_.end()) return it->second;
  }
  int s = first_left_descent(y);
  ExtAffElt sy = mult(simple_[s], y);
  ExtAffElt sx = mult(simple_[s], x);
  bool ans;
  if (length(sx) < lx)
    ans = bruhat_leq_wa(sx, lx - 1, sy, ly - 1);
  else
    ans = bruhat_leq_wa(x, lx, sy, ly - 1);
  {
    std::lock_guard<std::mutex> lock(memo_mu_);
    bruhat_memo_.emplace(key, ans);
  }
  return ans;
}

bool AffineWeyl::bruhat_leq(const ExtAffElt& x, const ExtAffElt& y) const {
  int tx = omega_part(x), ty = omega_part(y);
  if (tx != ty) return false;
  ExtAffElt xa = mult(x, inverse(omega_[tx]));
  ExtAffElt ya = mult(y, inverse(omega_[ty]));
  return bruhat_leq_wa(xa, length(xa), ya, length(ya));
}

std::vector<ExtAffElt> AffineWeyl::lower_ideal(const ExtAffElt& y) const {
  std::vector<int> word = reduced_word(y);
  int tau = omega_part(y);
  if (word.size() > 24) throw std::invalid_argument("lower_ideal: word too long");
  std::set<ExtAffElt> out;
  size_t n = word.size();
  for (size_t mask = 0; mask < (size_t{1} << n); ++mask) {
    ExtAffElt cur = identity();
    for (size_t i = 0; i < n; ++i)
      if (mask & (size_t{1} << i)) cur = mult(cur, simple_[word[i]]);
    out.insert(mult(cur, omega_[tau]));
  }
  return std::vector<ExtAffElt>(out.begin(), out.end());
}

ExtAffElt AffineWeyl::min_coset_rep(const NodeSet& k, const ExtAffElt& e) const {
  ExtAffElt cur = e;
  int len = length(cur);
  for (;;) {
    bool moved = false;
    for (int s : k) {
      ExtAffElt y = mult(simple_[s], cur);
      int ly = length(y);
      if (ly < len) {
        cur = y;
        len = ly;
        moved = true;
        break;
      }
    }
    if (!moved) return cur;
  }
}

bool AffineWeyl::is_min_coset_rep(const NodeSet& k, const ExtAffElt& e) const {
  int len = length(e);
  for (int s : k)
    if (length(mult(simple_[s], e)) < len) return false;
  return true;
}

bool AffineWeyl::is_finite_parabolic(const NodeSet& k) const {
  // the affine diagram of an irreducible datum is connected, so W_K is
  // finite exactly when K omits at least one node
  return static_cast<int>(k.size()) <= datum_.rank();
}

std::vector<ExtAffElt> AffineWeyl::enumerate_parabolic(const NodeSet& k, size_t guard) const {
  std::set<ExtAffElt> seen;
  std::vector<ExtAffElt> queue{identity()};
  seen.insert(identity());
  while (!queue.empty()) {
    ExtAffElt cur = queue.back();
    queue.pop_back();
    for (int s : k) {
      ExtAffElt y = mult(cur, simple_[s]);
      if (seen.insert(y).second) {
        if (seen.size() > guard) throw std::runtime_error("parabolic subgroup enumeration exceeded guard");
        queue.push_back(y);
      }
    }
  }
  return std::vector<ExtAffElt>(seen.begin(), seen.end());
}

std::vector<int> AffineWeyl::omega_node_action(int omega_idx) const {
  const ExtAffElt& tau = omega_[omega_idx];
  ExtAffElt taui = inverse(tau);
  std::vector<int> perm(datum_.rank() + 1, -1);
  for (int s = 0; s <= datum_.rank(); ++s) {
    ExtAffElt conj = mult(mult(tau, simple_[s]), taui);
    int found = -1;
    for (int t = 0; t <= datum_.rank(); ++t)
      if (conj == simple_[t]) {
        found = t;
        break;
      }
    if (found < 0) throw std::logic_error("Omega conjugation does not permute the simple reflections");
    perm[s] = found;
  }
  return perm;
}

}  // namespace hncomb
