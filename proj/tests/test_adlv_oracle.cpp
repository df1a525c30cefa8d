#include "hncomb/adlv_oracle.hpp"

#include "hncomb/hn_theory.hpp"

#include <doctest.h>

#include <set>

using namespace hncomb;

namespace {

GroupInstance instance_of(Context& ctx, const FrobeniusMap& s, const Vec& mu, NodeSet k = {}) {
  return GroupInstance{&ctx.datum, &ctx.weyl, s, mu, std::move(k)};
}

}  // namespace

TEST_CASE("cyclic shift orbits") {
  Context a1(CartanType::A, 1);
  FrobeniusMap id = build_sigma(a1.weyl, 0, identity_diagram_perm(1));
  DLOracle oracle(a1.weyl, id);
  // s1 is alone at its length in its class: s0 s1 s0 has length 3
  std::vector<ExtAffElt> orbit = oracle.cyclic_shift_orbit(a1.weyl.simple(1));
  CHECK(orbit == std::vector<ExtAffElt>{a1.weyl.simple(1)});
  CHECK(oracle.is_minimal_in_class(a1.weyl.simple(1)));
  // length-zero elements are minimal
  CHECK(oracle.is_minimal_in_class(a1.weyl.omega_element(1)));
  // orbit of tau-conjugate pair in rank: s0 <-> s1 under the nontrivial tau
  FrobeniusMap tau = build_sigma(a1.weyl, 1, identity_diagram_perm(1));
  DLOracle oracle_tau(a1.weyl, tau);
  std::vector<ExtAffElt> pair = oracle_tau.cyclic_shift_orbit(a1.weyl.simple(1));
  CHECK(pair.size() == 2);
}

TEST_CASE("straight elements give singleton zero-dimensional maps") {
  Context a2(CartanType::A, 2);
  FrobeniusMap id = build_sigma(a2.weyl, 0, identity_diagram_perm(2));
  DLOracle oracle(a2.weyl, id);
  Vec mu = a2.datum.fundamental_coweight(1);
  for (const ExtAffElt& w : adm_set(a2.weyl, mu)) {
    REQUIRE(is_straight(a2.weyl, id, w));
    DimMap dm = oracle.dl_dimension(w);
    REQUIRE(dm.size() == 1);
    CHECK(dm.begin()->second == 0);
    CHECK(dm.begin()->first == sigma_class_of(a2.weyl, id, oracle.kappa_table(), w));
  }
  // tau in Omega
  DimMap dm = oracle.dl_dimension(a2.weyl.omega_element(1));
  REQUIRE(dm.size() == 1);
  CHECK(is_basic(dm.begin()->first));
  CHECK(dm.begin()->second == 0);
}

TEST_CASE("golden reduction tree in rank one") {
  Context a1(CartanType::A, 1);
  FrobeniusMap id = build_sigma(a1.weyl, 0, identity_diagram_perm(1));
  DLOracle oracle(a1.weyl, id);
  ExtAffElt w = a1.weyl.word_to_element({0, 1, 0});
  REQUIRE(a1.weyl.length(w) == 3);
  DimMap dm = oracle.dl_dimension(w);
  // golden values pinned after the first full reduction-tree run, with the
  // second path cross-checked internally
  Vec alpha_check = to_vec(a1.datum.root(a1.datum.simple_root_index(1)).coroot);
  REQUIRE(dm.size() == 2);
  CHECK(dm.at(SigmaClass{0, Vec{Rat(0)}}) == 2);
  CHECK(dm.at(SigmaClass{0, alpha_check}) == 1);
}

TEST_CASE("Kottwitz consistency of the keys") {
  Context c2(CartanType::C, 2);
  FrobeniusMap id = build_sigma(c2.weyl, 0, identity_diagram_perm(2));
  DLOracle oracle(c2.weyl, id);
  KottwitzTable kappa(c2.weyl, id);
  for (const ExtAffElt& w : adm_set(c2.weyl, c2.datum.fundamental_coweight(2))) {
    int kw = kappa.class_of_omega(c2.weyl.omega_part(w));
    for (const auto& [c, dim] : oracle.dl_dimension(w)) {
      CHECK(c.kappa == kw);
      CHECK(dim >= 0);
    }
  }
}

TEST_CASE("zero dimension happens exactly at straight elements of the class") {
  Context a2(CartanType::A, 2);
  FrobeniusMap id = build_sigma(a2.weyl, 0, identity_diagram_perm(2));
  DLOracle oracle(a2.weyl, id);
  Vec mu = vec_add(a2.datum.fundamental_coweight(1), a2.datum.fundamental_coweight(2));
  for (const ExtAffElt& w : adm_set(a2.weyl, mu)) {
    DimMap dm = oracle.dl_dimension(w);
    SigmaClass own = sigma_class_of(a2.weyl, id, oracle.kappa_table(), w);
    for (const auto& [c, dim] : dm) {
      if (dim == 0) {
        CHECK(is_straight(a2.weyl, id, w));
        CHECK(c == own);
      }
    }
    if (is_straight(a2.weyl, id, w)) CHECK(dm.at(own) == 0);
  }
}

TEST_CASE("dimension of the union over the level structure") {
  Context a2(CartanType::A, 2);
  FrobeniusMap id = build_sigma(a2.weyl, 0, identity_diagram_perm(2));
  DLOracle oracle(a2.weyl, id);
  KottwitzTable kappa(a2.weyl, id);

  SUBCASE("all classes zero-dimensional in the minuscule case") {
    GroupInstance inst = instance_of(a2, id, a2.datum.fundamental_coweight(1));
    for (const SigmaClass& c : b_g_mu_via_criterion(inst, kappa)) {
      auto dim = oracle.dim_x_mu_b_k(inst, c);
      REQUIRE(dim);
      CHECK(*dim == 0);
    }
    CHECK(oracle.ekor_newton_uniqueness(inst));
  }

  SUBCASE("a non-minute control fails") {
    GroupInstance inst = instance_of(a2, id, vec_scale(a2.datum.fundamental_coweight(1), Rat(2)));
    bool some_positive = false;
    for (const SigmaClass& c : b_g_mu_via_criterion(inst, kappa)) {
      if (is_basic(c)) continue;
      auto dim = oracle.dim_x_mu_b_k(inst, c);
      if (dim && *dim >= 1) some_positive = true;
    }
    CHECK(some_positive);
    CHECK_FALSE(oracle.ekor_newton_uniqueness(inst));
  }
}

TEST_CASE("frozen dimensions on the rank-two symplectic instance") {
  // golden values from the first full oracle run; the hyperspecial level
  // reproduces the classical dimension one of the supersingular locus of the
  // Siegel threefold
  Context c2(CartanType::C, 2);
  FrobeniusMap id = build_sigma(c2.weyl, 0, identity_diagram_perm(2));
  DLOracle oracle(c2.weyl, id);
  KottwitzTable kappa(c2.weyl, id);
  Vec mu = c2.datum.fundamental_coweight(2);
  std::map<NodeSet, int> basic_dim = {
      {NodeSet{}, 2}, {NodeSet{1}, 2}, {NodeSet{0, 2}, 1}, {NodeSet{1, 2}, 1}, {NodeSet{0, 1}, 1}};
  for (const auto& [k, expected] : basic_dim) {
    GroupInstance inst = instance_of(c2, id, mu, k);
    for (const SigmaClass& c : b_g_mu_via_criterion(inst, kappa)) {
      auto dim = oracle.dim_x_mu_b_k(inst, c);
      REQUIRE(dim);
      CHECK(*dim == (is_basic(c) ? expected : 0));
    }
  }
}

TEST_CASE("support finiteness shadows") {
  Context c2(CartanType::C, 2);
  FrobeniusMap id = build_sigma(c2.weyl, 0, identity_diagram_perm(2));
  DLOracle oracle(c2.weyl, id);
  KottwitzTable kappa(c2.weyl, id);
  Vec mu = c2.datum.fundamental_coweight(2);
  GroupInstance inst = instance_of(c2, id, mu, NodeSet{1});
  for (const ExtAffElt& w : adm_cap_kw(c2.weyl, mu, inst.k)) {
    DimMap dm = oracle.dl_dimension(w);
    bool only_basic = dm.size() == 1 && is_basic(dm.begin()->first);
    bool finite_supp = c2.weyl.is_finite_parabolic(supp_sigma(inst, w));
    CHECK(only_basic == finite_supp);
    if (finite_supp) {
      NodeSet joined = supp_sigma(inst, w);
      for (int node : max_adapted_subset(inst, inst.k, w))
        if (!node_set_contains(joined, node)) joined.push_back(node);
      std::sort(joined.begin(), joined.end());
      CHECK(c2.weyl.is_finite_parabolic(joined));
    }
  }
}
