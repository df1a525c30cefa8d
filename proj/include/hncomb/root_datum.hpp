#pragma once

#include "hncomb/linalg.hpp"
#include "hncomb/rational.hpp"

#include <map>
#include <string>
#include <vector>

namespace hncomb {

enum class CartanType : char { A = 'A', B = 'B', C = 'C', D = 'D' };

CartanType cartan_type_from_char(char c);

/// One root together with its coroot. Coordinates:
///   func[k]   = <alpha_{k+1}^vee, alpha>   (pairing vector; <v, alpha> = sum v_k func[k])
///   coroot[k] = coordinate of alpha^vee in the simple-coroot basis
///   m[k]      = coordinate of alpha in the simple-root basis
struct Root {
  IVec func;
  IVec coroot;
  IVec m;
  bool positive = false;
};

/// Finite Weyl group element, stored as its permutation of the root list.
struct W0Elt {
  std::vector<int16_t> p;
  bool operator==(const W0Elt& o) const { return p == o.p; }
  bool operator<(const W0Elt& o) const { return p < o.p; }
};

/// Exact-rational root datum of an irreducible classical type, with the
/// coweight lattice taken to be the full fundamental-coweight lattice
/// (adjoint group). Immutable after construction.
class RootDatum {
 public:
  RootDatum(CartanType type, int rank);

  CartanType type() const { return type_; }
  int rank() const { return rank_; }
  std::string name() const;

  // -- Cartan data (finite node labels 1..rank; vector coordinate k <-> node k+1)
  long long cartan(int i, int j) const { return cartan_[i - 1][j - 1]; }
  const Vec& fundamental_coweight(int i) const { return omega_check_[i - 1]; }
  const IVec& fundamental_coweight_scaled(int i) const { return omega_check_scaled_[i - 1]; }
  Vec fundamental_weight_func(int i) const;  // as a pairing vector
  /// lcm of the coordinate denominators of the fundamental coweights; every
  /// coweight-lattice point is (integer vector)/lattice_scale.
  long long lattice_scale() const { return scale_; }

  // -- roots
  int num_roots() const { return static_cast<int>(roots_.size()); }
  int num_positive() const { return num_positive_; }
  const Root& root(int idx) const { return roots_[idx]; }
  int root_index(const IVec& coroot) const;
  int negative_of(int idx) const { return neg_of_[idx]; }
  int simple_root_index(int i) const { return simple_idx_[i - 1]; }
  int highest_root_index() const { return theta_idx_; }
  long long mark(int i) const { return roots_[theta_idx_].m[i - 1]; }  // a_i; a_0 := 1

  // -- pairings
  /// Canonical pairing of v in V with a functional (e.g. a root or weight).
  static Rat pair(const Vec& v, const Vec& func);
  Rat pair_root(const Vec& v, int root_idx) const;
  /// <v, 2 rho> = twice the sum of the coroot-basis coordinates.
  Rat pair_two_rho(const Vec& v) const;
  /// W0- and diagram-invariant inner product; short coroots have squared length 2.
  Rat inner(const Vec& v, const Vec& w) const;

  // -- finite Weyl group
  const W0Elt& w0_identity() const { return w0_id_; }
  const W0Elt& simple_reflection(int i) const { return simple_refl_[i - 1]; }
  W0Elt reflection(int root_idx) const;
  W0Elt mult(const W0Elt& a, const W0Elt& b) const;
  W0Elt inverse(const W0Elt& a) const;
  int w0_length(const W0Elt& a) const;
  /// Integer matrix of the element in the coroot basis (columns = images).
  IMat matrix(const W0Elt& a) const;
  Vec act(const W0Elt& a, const Vec& v) const;
  IVec act(const W0Elt& a, const IVec& v) const;
  /// Builds the W0 element with the given action matrix; the matrix must
  /// permute the coroots.
  W0Elt from_matrix(const IMat& m) const;

  bool is_dominant(const Vec& v) const;
  /// Unique dominant representative, plus a word w (list of finite labels,
  /// leftmost factor first) with w(v) = dominant rep.
  std::pair<Vec, std::vector<int>> dominant_representative(const Vec& v) const;
  W0Elt word_to_element(const std::vector<int>& word) const;
  std::vector<Vec> w0_orbit(const Vec& v) const;

  /// omega_O = sum of fundamental weights over a set of finite nodes, as a
  /// pairing vector.
  Vec weight_orbit_sum(const std::vector<int>& nodes) const;

  /// Barycenter of the base alcove.
  Vec alcove_barycenter() const;
  /// Vertex of the closed base alcove for node j (0 -> origin, else omega_j/a_j).
  Vec alcove_vertex(int j) const;

 private:
  void build_cartan();
  void build_roots();
  void build_weights();
  void build_gram();
  void build_reflections();

  CartanType type_;
  int rank_;
  IMat cartan_;  // cartan_[i][j] = <alpha_{i+1}^vee, alpha_{j+1}>
  std::vector<Root> roots_;
  int num_positive_ = 0;
  std::map<IVec, int> root_lookup_;
  std::vector<int> neg_of_;
  std::vector<int> simple_idx_;
  int theta_idx_ = -1;
  std::vector<Vec> omega_check_;
  std::vector<IVec> omega_check_scaled_;
  long long scale_ = 1;
  QMat gram_;  // columns: gram_[j][i] = (e_i, e_j) in the coroot basis
  W0Elt w0_id_;
  std::vector<W0Elt> simple_refl_;
};

}  // namespace hncomb
