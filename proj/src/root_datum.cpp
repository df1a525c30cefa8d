#include "hncomb/root_datum.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

namespace hncomb {

CartanType cartan_type_from_char(char c) {
  switch (c) {
    case 'A':
      return CartanType::A;
    case 'B':
      return CartanType::B;
    case 'C':
      return CartanType::C;
    case 'D':
      return CartanType::D;
    default:
      throw std::invalid_argument(std::string("unsupported Cartan type '") + c +
                                  "' (expected A, B, C or D)");
  }
}

RootDatum::RootDatum(CartanType type, int rank) : type_(type), rank_(rank) {
  int min_rank = 1;
  switch (type) {
    case CartanType::A:
      min_rank = 1;
      break;
    case CartanType::B:
    case CartanType::C:
      min_rank = 2;
      break;
    case CartanType::D:
      min_rank = 3;
      break;
  }
  if (rank < min_rank)
    throw std::invalid_argument("type " + std::string(1, static_cast<char>(type)) + " needs rank >= " +
                                std::to_string(min_rank) + ", got " + std::to_string(rank));
  if (rank > 9) throw std::invalid_argument("rank > 9 not supported");
  build_cartan();
  build_roots();
  build_weights();
  build_gram();
  build_reflections();
}

std::string RootDatum::name() const {
  return std::string(1, static_cast<char>(type_)) + std::to_string(rank_);
}

void RootDatum::build_cartan() {
  // Bourbaki conventions throughout.
  int r = rank_;
  cartan_.assign(r, IVec(r, 0));
  for (int i = 0; i < r; ++i) cartan_[i][i] = 2;
  for (int i = 0; i + 1 < r; ++i) {
    cartan_[i][i + 1] = -1;
    cartan_[i + 1][i] = -1;
  }
  switch (type_) {
    case CartanType::A:
      break;
    case CartanType::B:
      // alpha_r short: <alpha_r^vee, alpha_{r-1}> = -2
      cartan_[r - 1][r - 2] = -2;
      break;
    case CartanType::C:
      // alpha_r long: <alpha_{r-1}^vee, alpha_r> = -2
      cartan_[r - 2][r - 1] = -2;
      break;
    case CartanType::D:
      cartan_[r - 2][r - 1] = 0;
      cartan_[r - 1][r - 2] = 0;
      cartan_[r - 3][r - 1] = -1;
      cartan_[r - 1][r - 3] = -1;
      break;
  }
}

void RootDatum::build_roots() {
  int r = rank_;
  auto pairing_vec = [&](const IVec& m) {
    // func[i] = <alpha_{i+1}^vee, alpha> = sum_j m_j C[i][j]
    IVec f(r, 0);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) f[i] += m[j] * cartan_[i][j];
    return f;
  };
  std::map<IVec, Root> seen;  // keyed by m
  std::vector<IVec> queue;
  for (int j = 0; j < r; ++j) {
    Root rt;
    rt.m.assign(r, 0);
    rt.m[j] = 1;
    rt.coroot.assign(r, 0);
    rt.coroot[j] = 1;
    rt.func = pairing_vec(rt.m);
    seen[rt.m] = rt;
    queue.push_back(rt.m);
  }
  while (!queue.empty()) {
    IVec m = queue.back();
    queue.pop_back();
    Root cur = seen[m];
    for (int i = 0; i < r; ++i) {
      // s_i(alpha) = alpha - <alpha_i^vee, alpha> alpha_i
      long long p = cur.func[i];
      Root img = cur;
      img.m[i] -= p;
      // s_i(alpha^vee) = alpha^vee - <alpha^vee, alpha_i> alpha_i^vee
      long long q = 0;
      for (int k = 0; k < r; ++k) q += cur.coroot[k] * cartan_[k][i];
      img.coroot[i] -= q;
      img.func = pairing_vec(img.m);
      if (!seen.count(img.m)) {
        seen[img.m] = img;
        queue.push_back(img.m);
      }
    }
  }
  // positives first, sorted by height then coordinates for determinism
  std::vector<Root> pos, neg;
  for (auto& [m, rt] : seen) {
    bool is_pos = std::all_of(m.begin(), m.end(), [](long long x) { return x >= 0; });
    Root cp = rt;
    cp.positive = is_pos;
    (is_pos ? pos : neg).push_back(cp);
  }
  auto height = [](const Root& rt) {
    return std::accumulate(rt.m.begin(), rt.m.end(), 0LL);
  };
  std::sort(pos.begin(), pos.end(), [&](const Root& a, const Root& b) {
    return std::make_pair(height(a), a.m) < std::make_pair(height(b), b.m);
  });
  roots_ = pos;
  num_positive_ = static_cast<int>(pos.size());
  for (auto& rt : pos) {
    Root n = rt;
    for (auto& x : n.m) x = -x;
    for (auto& x : n.coroot) x = -x;
    for (auto& x : n.func) x = -x;
    n.positive = false;
    roots_.push_back(n);
  }
  neg_of_.resize(roots_.size());
  for (int i = 0; i < num_positive_; ++i) {
    neg_of_[i] = i + num_positive_;
    neg_of_[i + num_positive_] = i;
  }
  for (int i = 0; i < static_cast<int>(roots_.size()); ++i) root_lookup_[roots_[i].coroot] = i;
  simple_idx_.assign(r, -1);
  for (int i = 0; i < num_positive_; ++i) {
    long long h = std::accumulate(roots_[i].m.begin(), roots_[i].m.end(), 0LL);
    if (h == 1) {
      for (int j = 0; j < r; ++j)
        if (roots_[i].m[j] == 1) simple_idx_[j] = i;
    }
  }
  theta_idx_ = num_positive_ - 1;  // maximal height, ties impossible at the top
  // theta is the unique maximum in the root order
  for (int i = 0; i < num_positive_; ++i) {
    for (int j = 0; j < r; ++j)
      if (roots_[theta_idx_].m[j] < roots_[i].m[j])
        throw std::logic_error("highest root is not maximal in root order");
  }
}

void RootDatum::build_weights() {
  int r = rank_;
  // omega_i^vee solves <omega_i^vee, alpha_j> = sum_k x_k C[k][j] = delta_ij,
  // i.e. row i of the inverse Cartan matrix.
  QMat tcols(r, Vec(r));
  for (int k = 0; k < r; ++k)
    for (int j = 0; j < r; ++j) tcols[k][j] = Rat(cartan_[k][j]);
  omega_check_.assign(r, Vec(r, Rat(0)));
  for (int i = 0; i < r; ++i) {
    Vec rhs(r, Rat(0)), x;
    rhs[i] = 1;
    if (!solve_linear(tcols, rhs, x)) throw std::logic_error("Cartan matrix singular");
    omega_check_[i] = x;
  }
  scale_ = 1;
  for (auto& w : omega_check_)
    for (auto& c : w) scale_ = std::lcm(scale_, c.denominator());
  omega_check_scaled_.assign(r, IVec(r, 0));
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) {
      Rat s = omega_check_[i][j] * Rat(scale_);
      omega_check_scaled_[i][j] = s.numerator();
    }
}

void RootDatum::build_gram() {
  int r = rank_;
  // (e_i, e_j) = C[i][j] * c_j with c_j = (alpha_j^vee, alpha_j^vee)/2;
  // symmetry forces c_i / c_j = C[i][j] / C[j][i] on edges.
  std::vector<Rat> c(r, Rat(0));
  c[0] = 1;
  std::vector<int> todo{0};
  while (!todo.empty()) {
    int i = todo.back();
    todo.pop_back();
    for (int j = 0; j < r; ++j) {
      if (j == i || cartan_[i][j] == 0 || c[j] != 0) continue;
      c[j] = c[i] * Rat(cartan_[j][i]) / Rat(cartan_[i][j]);
      todo.push_back(j);
    }
  }
  Rat cmin = *std::min_element(c.begin(), c.end());
  for (auto& x : c) x /= cmin;  // short coroots get squared length 2
  gram_.assign(r, Vec(r, Rat(0)));
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) gram_[j][i] = Rat(cartan_[i][j]) * c[j];
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j)
      if (gram_[j][i] != gram_[i][j]) throw std::logic_error("Gram matrix not symmetric");
}

void RootDatum::build_reflections() {
  int n = num_roots();
  w0_id_.p.resize(n);
  for (int i = 0; i < n; ++i) w0_id_.p[i] = static_cast<int16_t>(i);
  simple_refl_.clear();
  for (int i = 1; i <= rank_; ++i) simple_refl_.push_back(reflection(simple_idx_[i - 1]));
}

Vec RootDatum::fundamental_weight_func(int i) const {
  Vec f(rank_, Rat(0));
  f[i - 1] = 1;
  return f;
}

int RootDatum::root_index(const IVec& coroot) const {
  auto it = root_lookup_.find(coroot);
  return it == root_lookup_.end() ? -1 : it->second;
}

Rat RootDatum::pair(const Vec& v, const Vec& func) {
  Rat out(0);
  for (size_t k = 0; k < v.size(); ++k) out += v[k] * func[k];
  return out;
}

Rat RootDatum::pair_root(const Vec& v, int root_idx) const {
  Rat out(0);
  const IVec& f = roots_[root_idx].func;
  for (size_t k = 0; k < v.size(); ++k) out += v[k] * Rat(f[k]);
  return out;
}

Rat RootDatum::pair_two_rho(const Vec& v) const {
  Rat out(0);
  for (auto& x : v) out += x;
  return out * 2;
}

Rat RootDatum::inner(const Vec& v, const Vec& w) const {
  Rat out(0);
  for (int i = 0; i < rank_; ++i)
    for (int j = 0; j < rank_; ++j) out += v[i] * w[j] * gram_[j][i];
  return out;
}

W0Elt RootDatum::reflection(int root_idx) const {
  const Root& alpha = roots_[root_idx];
  W0Elt out;
  out.p.resize(num_roots());
  for (int b = 0; b < num_roots(); ++b) {
    // s_alpha(beta^vee) = beta^vee - <beta^vee, alpha> alpha^vee
    const Root& beta = roots_[b];
    long long q = 0;
    for (int k = 0; k < rank_; ++k) q += beta.coroot[k] * alpha.func[k];
    // note <beta^vee, alpha> uses alpha's pairing against beta's coroot via
    // the Cartan pairing: sum_k beta.coroot[k] * <e_k, alpha>
    IVec img = beta.coroot;
    for (int k = 0; k < rank_; ++k) img[k] -= q * alpha.coroot[k];
    int idx = root_index(img);
    if (idx < 0) throw std::logic_error("reflection image not a root");
    out.p[b] = static_cast<int16_t>(idx);
  }
  return out;
}

W0Elt RootDatum::mult(const W0Elt& a, const W0Elt& b) const {
  W0Elt out;
  out.p.resize(a.p.size());
  for (size_t i = 0; i < a.p.size(); ++i) out.p[i] = a.p[b.p[i]];
  return out;
}

W0Elt RootDatum::inverse(const W0Elt& a) const {
  W0Elt out;
  out.p.resize(a.p.size());
  for (size_t i = 0; i < a.p.size(); ++i) out.p[a.p[i]] = static_cast<int16_t>(i);
  return out;
}

int RootDatum::w0_length(const W0Elt& a) const {
  int len = 0;
  for (int i = 0; i < num_positive_; ++i)
    if (a.p[i] >= num_positive_) ++len;
  return len;
}

IMat RootDatum::matrix(const W0Elt& a) const {
  IMat m(rank_);
  for (int i = 1; i <= rank_; ++i) m[i - 1] = roots_[a.p[simple_idx_[i - 1]]].coroot;
  return m;
}

Vec RootDatum::act(const W0Elt& a, const Vec& v) const {
  return imat_apply(matrix(a), v);
}

IVec RootDatum::act(const W0Elt& a, const IVec& v) const {
  return imat_apply(matrix(a), v);
}

W0Elt RootDatum::from_matrix(const IMat& m) const {
  W0Elt out;
  out.p.resize(num_roots());
  for (int b = 0; b < num_roots(); ++b) {
    int idx = root_index(imat_apply(m, roots_[b].coroot));
    if (idx < 0) throw std::invalid_argument("matrix does not permute the coroots");
    out.p[b] = static_cast<int16_t>(idx);
  }
  return out;
}

bool RootDatum::is_dominant(const Vec& v) const {
  for (int i = 1; i <= rank_; ++i)
    if (pair_root(v, simple_idx_[i - 1]) < 0) return false;
  return true;
}

std::pair<Vec, std::vector<int>> RootDatum::dominant_representative(const Vec& v) const {
  Vec cur = v;
  std::vector<int> applied;
  for (;;) {
    int neg = -1;
    for (int i = 1; i <= rank_; ++i)
      if (pair_root(cur, simple_idx_[i - 1]) < 0) {
        neg = i;
        break;
      }
    if (neg < 0) break;
    cur = act(simple_refl_[neg - 1], cur);
    applied.push_back(neg);
  }
  // element s_{i_k} ... s_{i_1} maps v to cur; leftmost factor first
  std::vector<int> word(applied.rbegin(), applied.rend());
  return {cur, word};
}

W0Elt RootDatum::word_to_element(const std::vector<int>& word) const {
  W0Elt out = w0_id_;
  for (int i : word) out = mult(out, simple_refl_[i - 1]);
  return out;
}

std::vector<Vec> RootDatum::w0_orbit(const Vec& v) const {
  std::set<Vec> seen{v};
  std::vector<Vec> queue{v};
  while (!queue.empty()) {
    Vec cur = queue.back();
    queue.pop_back();
    for (int i = 1; i <= rank_; ++i) {
      Vec img = act(simple_refl_[i - 1], cur);
      if (seen.insert(img).second) queue.push_back(img);
    }
  }
  return std::vector<Vec>(seen.begin(), seen.end());
}

Vec RootDatum::weight_orbit_sum(const std::vector<int>& nodes) const {
  Vec f(rank_, Rat(0));
  for (int i : nodes) {
    if (i < 1 || i > rank_) throw std::invalid_argument("finite node out of range: " + std::to_string(i));
    f[i - 1] += 1;
  }
  return f;
}

Vec RootDatum::alcove_barycenter() const {
  Vec e(rank_, Rat(0));
  for (int j = 1; j <= rank_; ++j) e = vec_add(e, alcove_vertex(j));
  return vec_scale(e, Rat(1, rank_ + 1));
}

Vec RootDatum::alcove_vertex(int j) const {
  if (j == 0) return Vec(rank_, Rat(0));
  return vec_scale(fundamental_coweight(j), Rat(1, mark(j)));
}

}  // namespace hncomb
