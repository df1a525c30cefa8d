#include "hncomb/root_datum.hpp"

#include <doctest.h>

using namespace hncomb;

namespace {

// Bourbaki Cartan matrices, written out independently of the construction.
const long long kA2[2][2] = {{2, -1}, {-1, 2}};
const long long kB3[3][3] = {{2, -1, 0}, {-1, 2, -1}, {0, -2, 2}};
const long long kC2[2][2] = {{2, -2}, {-1, 2}};
const long long kD4[4][4] = {{2, -1, 0, 0}, {-1, 2, -1, -1}, {0, -1, 2, 0}, {0, -1, 0, 2}};

Rat pair_omega(const RootDatum& d, int i, int j) {
  return RootDatum::pair(d.fundamental_coweight(i), d.fundamental_weight_func(j));
}

}  // namespace

TEST_CASE("Cartan matrices match the Bourbaki tables") {
  RootDatum a2(CartanType::A, 2);
  for (int i = 1; i <= 2; ++i)
    for (int j = 1; j <= 2; ++j) CHECK(a2.cartan(i, j) == kA2[i - 1][j - 1]);
  RootDatum b3(CartanType::B, 3);
  for (int i = 1; i <= 3; ++i)
    for (int j = 1; j <= 3; ++j) CHECK(b3.cartan(i, j) == kB3[i - 1][j - 1]);
  RootDatum c2(CartanType::C, 2);
  for (int i = 1; i <= 2; ++i)
    for (int j = 1; j <= 2; ++j) CHECK(c2.cartan(i, j) == kC2[i - 1][j - 1]);
  RootDatum d4(CartanType::D, 4);
  for (int i = 1; i <= 4; ++i)
    for (int j = 1; j <= 4; ++j) CHECK(d4.cartan(i, j) == kD4[i - 1][j - 1]);
}

TEST_CASE("coweight pairings from the inverse Cartan matrix") {
  RootDatum a1(CartanType::A, 1);
  CHECK(pair_omega(a1, 1, 1) == Rat(1, 2));
  RootDatum a2(CartanType::A, 2);
  CHECK(pair_omega(a2, 1, 1) == Rat(2, 3));
  CHECK(pair_omega(a2, 1, 2) == Rat(1, 3));
  // independent route: solve the transposed Cartan system by hand for A2
  QMat cols(2, Vec(2));
  for (int k = 0; k < 2; ++k)
    for (int j = 0; j < 2; ++j) cols[k][j] = Rat(kA2[k][j]);
  Vec rhs{Rat(1), Rat(0)}, x;
  REQUIRE(solve_linear(cols, rhs, x));
  CHECK(x == a2.fundamental_coweight(1));
}

TEST_CASE("defining pairings and highest root") {
  for (auto [t, r] : std::vector<std::pair<CartanType, int>>{{CartanType::A, 3},
                                                             {CartanType::B, 3},
                                                             {CartanType::C, 2},
                                                             {CartanType::D, 4}}) {
    RootDatum d(t, r);
    for (int i = 1; i <= r; ++i)
      for (int j = 1; j <= r; ++j) {
        CHECK(d.pair_root(d.fundamental_coweight(i), d.simple_root_index(j)) ==
              Rat(i == j ? 1 : 0));
        CHECK(RootDatum::pair(to_vec(d.root(d.simple_root_index(i)).coroot),
                              d.fundamental_weight_func(j)) == Rat(i == j ? 1 : 0));
      }
    // theta = sum a_i alpha_i with the stored marks; maximal in root order
    const Root& theta = d.root(d.highest_root_index());
    for (int i = 1; i <= r; ++i) CHECK(theta.m[i - 1] == d.mark(i));
    for (int idx = 0; idx < d.num_positive(); ++idx)
      for (int i = 0; i < r; ++i) CHECK(d.root(idx).m[i] <= theta.m[i]);
    // rho is half the sum of the positive roots
    Vec sum(r, Rat(0));
    for (int idx = 0; idx < d.num_positive(); ++idx)
      sum = vec_add(sum, to_vec(d.root(idx).func));
    for (int i = 0; i < r; ++i) CHECK(sum[i] == Rat(2));
  }
}

TEST_CASE("invariant inner product, positive definite") {
  for (auto [t, r] : std::vector<std::pair<CartanType, int>>{{CartanType::A, 2},
                                                             {CartanType::B, 3},
                                                             {CartanType::C, 3},
                                                             {CartanType::D, 4}}) {
    RootDatum d(t, r);
    // W0-invariance on basis pairs
    for (int s = 1; s <= r; ++s)
      for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) {
          Vec ei(r, Rat(0)), ej(r, Rat(0));
          ei[i] = 1;
          ej[j] = 1;
          CHECK(d.inner(d.act(d.simple_reflection(s), ei), d.act(d.simple_reflection(s), ej)) ==
                d.inner(ei, ej));
        }
    // positive definiteness: all leading principal minors of the Gram matrix
    for (int m = 1; m <= r; ++m) {
      // exact determinant by fraction-free expansion over the nested minor
      std::vector<Vec> g(m, Vec(m));
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
          Vec ei(r, Rat(0)), ej(r, Rat(0));
          ei[i] = 1;
          ej[j] = 1;
          g[i][j] = d.inner(ei, ej);
        }
      // Gaussian elimination, tracking the determinant
      Rat det(1);
      for (int c = 0; c < m; ++c) {
        int sel = -1;
        for (int rr = c; rr < m; ++rr)
          if (g[rr][c] != 0) {
            sel = rr;
            break;
          }
        REQUIRE(sel >= 0);
        if (sel != c) {
          std::swap(g[sel], g[c]);
          det = -det;
        }
        det *= g[c][c];
        for (int rr = c + 1; rr < m; ++rr) {
          Rat f = g[rr][c] / g[c][c];
          for (int cc = c; cc < m; ++cc) g[rr][cc] -= f * g[c][cc];
        }
      }
      CHECK(det > 0);
    }
    // short coroots have squared length 2
    Rat min_len(0);
    bool first = true;
    for (int idx = 0; idx < d.num_positive(); ++idx) {
      Vec cr = to_vec(d.root(idx).coroot);
      Rat len = d.inner(cr, cr);
      if (first || len < min_len) min_len = len;
      first = false;
    }
    CHECK(min_len == Rat(2));
  }
}

TEST_CASE("dominant representative") {
  RootDatum a1(CartanType::A, 1);
  Vec neg = vec_scale(a1.fundamental_coweight(1), Rat(-1));
  auto [dom1, word1] = a1.dominant_representative(neg);
  CHECK(dom1 == a1.fundamental_coweight(1));
  CHECK(word1 == std::vector<int>{1});

  RootDatum a2(CartanType::A, 2);
  auto [dom2, word2] = a2.dominant_representative(vec_scale(a2.fundamental_coweight(1), Rat(-1)));
  CHECK(dom2 == a2.fundamental_coweight(2));
  CHECK(a2.act(a2.word_to_element(word2), vec_scale(a2.fundamental_coweight(1), Rat(-1))) == dom2);

  // identity case and idempotence / orbit invariance
  Vec mu = vec_add(a2.fundamental_coweight(1), a2.fundamental_coweight(2));
  auto [dom3, word3] = a2.dominant_representative(mu);
  CHECK(dom3 == mu);
  CHECK(word3.empty());
  for (const Vec& v : a2.w0_orbit(mu)) CHECK(a2.dominant_representative(v).first == mu);
}

TEST_CASE("weight orbit sums") {
  RootDatum a2(CartanType::A, 2);
  CHECK(a2.weight_orbit_sum({1, 2}) == Vec{Rat(1), Rat(1)});  // rho in A2
  CHECK(a2.weight_orbit_sum({1}) == a2.fundamental_weight_func(1));
  RootDatum b3(CartanType::B, 3);
  CHECK(b3.weight_orbit_sum({1, 2, 3}) == Vec{Rat(1), Rat(1), Rat(1)});
  CHECK_THROWS_AS(b3.weight_orbit_sum({4}), std::invalid_argument);
}

TEST_CASE("open alcove pairing bounds") {
  for (auto [t, r] : std::vector<std::pair<CartanType, int>>{{CartanType::A, 2},
                                                             {CartanType::C, 2},
                                                             {CartanType::B, 3}}) {
    RootDatum d(t, r);
    Vec e = d.alcove_barycenter();
    for (int idx = 0; idx < d.num_positive(); ++idx) {
      Rat p = d.pair_root(e, idx);
      CHECK(p > 0);
      CHECK(p < 1);
    }
  }
}

TEST_CASE("pairing with 2rho equals the sum over positive roots") {
  RootDatum c2(CartanType::C, 2);
  Vec lam = vec_add(c2.fundamental_coweight(1), c2.fundamental_coweight(2));
  Rat sum(0);
  for (int idx = 0; idx < c2.num_positive(); ++idx) sum += c2.pair_root(lam, idx);
  CHECK(sum == c2.pair_two_rho(lam));
}

TEST_CASE("unsupported inputs are rejected") {
  CHECK_THROWS_AS(RootDatum(CartanType::D, 2), std::invalid_argument);
  CHECK_THROWS_AS(RootDatum(CartanType::B, 1), std::invalid_argument);
  CHECK_THROWS_AS(cartan_type_from_char('E'), std::invalid_argument);
}
