#include "hncomb/frobenius.hpp"

#include <doctest.h>

#include <set>

using namespace hncomb;

TEST_CASE("identity and Omega-twisted automorphisms") {
  Context a1(CartanType::A, 1);
  FrobeniusMap id = build_sigma(a1.weyl, 0, identity_diagram_perm(1));
  CHECK(id.is_identity());
  CHECK(id.sigma_zero(a1.weyl) == Vec{Rat(0)});
  FrobeniusMap tau1 = build_sigma(a1.weyl, 1, identity_diagram_perm(1));
  CHECK(tau1.sigma_zero(a1.weyl) == a1.datum.fundamental_coweight(1));
  CHECK(tau1.order == 2);
  CHECK(imat_is_identity(tau1.sigma0));  // L-action trivial in rank 1
}

TEST_CASE("fixed-origin automorphism acts linearly") {
  Context a2(CartanType::A, 2);
  std::vector<int> swap12{0, 2, 1};
  FrobeniusMap s = build_sigma(a2.weyl, 0, swap12);
  CHECK(s.sigma_zero(a2.weyl) == Vec(2, Rat(0)));
  // p(sigma) = sigma0 when the origin is fixed
  CHECK(s.map.a == s.sigma0);
  CHECK(s.finite_perm == std::vector<int>{0, 2, 1});
  // sigma(t^{omega_1}) = t^{omega_2}
  ExtAffElt img = sigma_apply(a2.weyl, s, a2.weyl.translation(a2.datum.fundamental_coweight(1)));
  CHECK(img == a2.weyl.translation(a2.datum.fundamental_coweight(2)));
}

TEST_CASE("sigma permutes the simple reflections and preserves length") {
  Context a2(CartanType::A, 2);
  for (const FrobeniusMap& s : enumerate_sigmas(a2.weyl)) {
    for (int node = 0; node <= 2; ++node) {
      CHECK(sigma_apply(a2.weyl, s, a2.weyl.simple(node)) == a2.weyl.simple(s.node_perm[node]));
    }
    ExtAffElt sample = a2.weyl.mult(a2.weyl.simple(0), a2.weyl.mult(a2.weyl.simple(1), a2.weyl.simple(2)));
    CHECK(a2.weyl.length(sigma_apply(a2.weyl, s, sample)) == a2.weyl.length(sample));
  }
}

TEST_CASE("automorphism counts") {
  Context a1(CartanType::A, 1);
  CHECK(enumerate_sigmas(a1.weyl).size() == 2);
  Context a2(CartanType::A, 2);
  CHECK(enumerate_sigmas(a2.weyl).size() == 6);
  Context c2(CartanType::C, 2);
  CHECK(enumerate_sigmas(c2.weyl).size() == 2);
  Context b3(CartanType::B, 3);
  CHECK(enumerate_sigmas(b3.weyl).size() == 2);
  Context d4(CartanType::D, 4);
  CHECK(enumerate_sigmas(d4.weyl).size() == 24);
}

TEST_CASE("the automorphisms form a group") {
  Context a3(CartanType::A, 3);
  std::vector<FrobeniusMap> all = enumerate_sigmas(a3.weyl);
  std::set<AffMap> maps;
  for (const FrobeniusMap& s : all) maps.insert(s.map);
  for (const FrobeniusMap& s : all)
    for (const FrobeniusMap& t : all) CHECK(maps.count(a3.weyl.compose(s.map, t.map)));
}

TEST_CASE("sigma0 orbits") {
  Context a2(CartanType::A, 2);
  FrobeniusMap id = build_sigma(a2.weyl, 0, identity_diagram_perm(2));
  CHECK(sigma0_orbits(id, 2) == std::vector<std::vector<int>>{{1}, {2}});
  FrobeniusMap s = build_sigma(a2.weyl, 0, std::vector<int>{0, 2, 1});
  CHECK(sigma0_orbits(s, 2) == std::vector<std::vector<int>>{{1, 2}});
  Context d4(CartanType::D, 4);
  FrobeniusMap sw = build_sigma(d4.weyl, 0, std::vector<int>{0, 1, 2, 4, 3});
  CHECK(sigma0_orbits(sw, 4) == std::vector<std::vector<int>>{{1}, {2}, {3, 4}});
}

TEST_CASE("sigma0 normalization is dominance preserving") {
  Context d4(CartanType::D, 4);
  for (const FrobeniusMap& s : enumerate_sigmas(d4.weyl)) {
    // sigma0 maps simple coroots to simple coroots
    for (int i = 1; i <= 4; ++i) {
      IVec img = imat_apply(s.sigma0, d4.datum.root(d4.datum.simple_root_index(i)).coroot);
      CHECK(d4.datum.root_index(img) == d4.datum.simple_root_index(s.finite_perm[i]));
    }
    // sigma0 = correcting_w o p(sigma)
    CHECK(imat_mul(d4.datum.matrix(s.correcting_w), s.map.a) == s.sigma0);
  }
}

TEST_CASE("invalid diagram permutations are rejected") {
  Context c2(CartanType::C, 2);
  CHECK_THROWS_AS(build_sigma(c2.weyl, 0, std::vector<int>{0, 2, 1}), std::invalid_argument);
}
