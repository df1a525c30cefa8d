#include "hncomb/hn_theory.hpp"

#include <doctest.h>

#include <set>

using namespace hncomb;

namespace {

GroupInstance instance_of(Context& ctx, const FrobeniusMap& s, const Vec& mu, NodeSet k = {}) {
  return GroupInstance{&ctx.datum, &ctx.weyl, s, mu, std::move(k)};
}

FrobeniusMap id_sigma(Context& ctx) {
  return build_sigma(ctx.weyl, 0, identity_diagram_perm(ctx.datum.rank()));
}

}  // namespace

TEST_CASE("minute values per orbit") {
  SUBCASE("twisted odd orthogonal case has every orbit value exactly 1") {
    Context b3(CartanType::B, 3);
    FrobeniusMap tau1 = build_sigma(b3.weyl, 1, identity_diagram_perm(3));
    GroupInstance inst = instance_of(b3, tau1, b3.datum.fundamental_coweight(1));
    MinuteReport rep = is_minute(inst);
    CHECK(rep.minute);
    for (const auto& [orbit, val] : rep.orbit_values) CHECK(val == Rat(1));
  }
  SUBCASE("rank two special linear values") {
    Context a2(CartanType::A, 2);
    FrobeniusMap id = id_sigma(a2);
    MinuteReport rep = is_minute(instance_of(a2, id, a2.datum.fundamental_coweight(1)));
    CHECK(rep.minute);
    std::set<Rat> vals;
    for (const auto& [orbit, val] : rep.orbit_values) vals.insert(val);
    CHECK(vals == std::set<Rat>{Rat(1, 3), Rat(2, 3)});
    MinuteReport rep2 =
        is_minute(instance_of(a2, id, vec_scale(a2.datum.fundamental_coweight(1), Rat(2))));
    CHECK_FALSE(rep2.minute);
    bool found = false;
    for (const auto& [orbit, val] : rep2.orbit_values)
      if (orbit == std::vector<int>{1} && val == Rat(4, 3)) found = true;
    CHECK(found);
  }
}

TEST_CASE("the strictly-minute type A family") {
  // (A_{n-1}, omega_1, id): every orbit value < 1 and every admissible
  // element straight
  for (int rank : {1, 2, 3, 4}) {
    Context ctx(CartanType::A, rank);
    FrobeniusMap id = build_sigma(ctx.weyl, 0, identity_diagram_perm(rank));
    GroupInstance inst{&ctx.datum, &ctx.weyl, id, ctx.datum.fundamental_coweight(1), {}};
    for (const auto& [orbit, val] : is_minute(inst).orbit_values) CHECK(val < 1);
    for (const ExtAffElt& w : adm_set(ctx.weyl, inst.mu)) CHECK(is_straight(ctx.weyl, id, w));
  }
}

TEST_CASE("decomposability of single classes") {
  Context a1(CartanType::A, 1);
  FrobeniusMap id = id_sigma(a1);
  Vec omega = a1.datum.fundamental_coweight(1);
  GroupInstance inst = instance_of(a1, id, omega);
  KottwitzTable kappa(a1.weyl, id);
  for (const SigmaClass& c : b_g_mu_via_criterion(inst, kappa)) {
    if (is_basic(c)) {
      CHECK_THROWS_AS(is_hn_decomposable(inst, c), std::invalid_argument);
    } else {
      auto j = is_hn_decomposable(inst, c);
      REQUIRE(j);
      CHECK(j->empty());  // torus Levi
    }
  }
  // the non-minute control has a non-decomposable class
  Context a2(CartanType::A, 2);
  FrobeniusMap id2 = id_sigma(a2);
  Vec mu2 = vec_scale(a2.datum.fundamental_coweight(1), Rat(2));
  GroupInstance bad = instance_of(a2, id2, mu2);
  KottwitzTable kappa2(a2.weyl, id2);
  bool some_undec = false;
  for (const SigmaClass& c : b_g_mu_via_criterion(bad, kappa2))
    if (!is_basic(c) && !is_hn_decomposable(bad, c)) some_undec = true;
  CHECK(some_undec);
}

TEST_CASE("fully decomposable instances") {
  Context a3(CartanType::A, 3);
  CHECK(is_fully_hn(instance_of(a3, id_sigma(a3), a3.datum.fundamental_coweight(2))));
  Context a2(CartanType::A, 2);
  CHECK_FALSE(is_fully_hn(instance_of(a2, id_sigma(a2),
                                      vec_scale(a2.datum.fundamental_coweight(1), Rat(2)))));
  Context c2(CartanType::C, 2);
  FrobeniusMap tau2 = build_sigma(c2.weyl, 1, identity_diagram_perm(2));
  CHECK(is_fully_hn(instance_of(c2, tau2, c2.datum.fundamental_coweight(2))));
}

TEST_CASE("twisted support") {
  Context a2(CartanType::A, 2);
  FrobeniusMap id = id_sigma(a2);
  GroupInstance inst = instance_of(a2, id, a2.datum.fundamental_coweight(1));
  CHECK(supp_sigma(inst, a2.weyl.omega_element(1)).empty());
  CHECK(supp_sigma(inst, a2.weyl.simple(1)) == NodeSet{1});
  // s1 * tau: conjugation by tau cycles the nodes, so the closure is everything
  ExtAffElt w = a2.weyl.mult(a2.weyl.simple(1), a2.weyl.omega_element(1));
  CHECK(supp_sigma(inst, w) == NodeSet{0, 1, 2});
}

TEST_CASE("maximal adapted subsets by brute force") {
  Context c2(CartanType::C, 2);
  FrobeniusMap id = id_sigma(c2);
  NodeSet k{1};
  GroupInstance inst = instance_of(c2, id, c2.datum.fundamental_coweight(2), k);
  CHECK(max_adapted_subset(inst, k, c2.weyl.identity()) == k);
  CHECK(max_adapted_subset(inst, NodeSet{}, c2.weyl.identity()).empty());
  for (const ExtAffElt& w : adm_cap_kw(c2.weyl, inst.mu, k)) {
    NodeSet fast = max_adapted_subset(inst, k, w);
    // exhaustive scan over subsets of K
    NodeSet best;
    for (int mask = 0; mask < (1 << k.size()); ++mask) {
      NodeSet sub;
      for (size_t i = 0; i < k.size(); ++i)
        if (mask & (1 << i)) sub.push_back(k[i]);
      bool adapted = true;
      for (int node : sub) {
        ExtAffElt conj = c2.weyl.mult(
            c2.weyl.mult(w, c2.weyl.simple(inst.sigma.node_perm[node])), c2.weyl.inverse(w));
        bool hit = false;
        for (int other : sub) hit = hit || (conj == c2.weyl.simple(other));
        adapted = adapted && hit;
      }
      if (adapted && sub.size() >= best.size()) best = sub;
    }
    CHECK(fast == best);
  }
}

TEST_CASE("fixed points in the closed alcove") {
  Context a1(CartanType::A, 1);
  FrobeniusMap id = id_sigma(a1);
  GroupInstance inst = instance_of(a1, id, a1.datum.fundamental_coweight(1));
  CHECK(has_fixed_point_in_closed_alcove(inst, a1.weyl.identity()));
  CHECK(has_fixed_point_in_closed_alcove(inst, a1.weyl.omega_element(1)));
  Vec alpha_check = to_vec(a1.datum.root(a1.datum.simple_root_index(1)).coroot);
  CHECK_FALSE(has_fixed_point_in_closed_alcove(inst, a1.weyl.translation(alpha_check)));
  // witness point lies in the closed alcove and is fixed
  Vec pt;
  REQUIRE(has_fixed_point_in_closed_alcove(inst, a1.weyl.simple(1), &pt));
  CHECK(a1.weyl.act_on_point(a1.weyl.simple(1), pt) == pt);
}

TEST_CASE("fixed point condition") {
  Context a1(CartanType::A, 1);
  FrobeniusMap id = id_sigma(a1);
  for (const NodeSet& k : {NodeSet{}, NodeSet{0}, NodeSet{1}})
    CHECK(fc_condition(instance_of(a1, id, a1.datum.fundamental_coweight(1), k)));

  Context a2(CartanType::A, 2);
  FrobeniusMap id2 = id_sigma(a2);
  Vec mu2 = vec_scale(a2.datum.fundamental_coweight(1), Rat(2));
  CHECK_FALSE(fc_condition(instance_of(a2, id2, mu2)));
  CHECK_FALSE(fc_spade_condition(instance_of(a2, id2, mu2, NodeSet{1, 2})));

  Context c2(CartanType::C, 2);
  FrobeniusMap idc = id_sigma(c2);
  GroupInstance figure = instance_of(c2, idc, c2.datum.fundamental_coweight(2), NodeSet{1});
  CHECK(fc_condition(figure));
  CHECK(fc_spade_condition(figure));
}

TEST_CASE("fc is constant over the valid level structures") {
  Context a2(CartanType::A, 2);
  FrobeniusMap id = id_sigma(a2);
  for (const Vec& mu : {a2.datum.fundamental_coweight(1),
                        vec_scale(a2.datum.fundamental_coweight(1), Rat(2))}) {
    std::set<bool> vals;
    for (int mask = 0; mask < 7; ++mask) {
      NodeSet k;
      for (int node = 0; node <= 2; ++node)
        if (mask & (1 << node)) k.push_back(node);
      vals.insert(fc_condition(instance_of(a2, id, mu, k)));
    }
    CHECK(vals.size() == 1);
  }
}

TEST_CASE("twisted Coxeter witnesses") {
  Context a3(CartanType::A, 3);
  UnderlineRoots ur = build_underline_roots(a3.weyl, NodeSet{1, 2, 3});
  // singleton: one reflection
  CHECK(build_coxeter_witness(a3.weyl, ur, NodeSet{2}, NodeSet{2}) == a3.weyl.simple(2));
  // two nodes: layered product s2 s3
  ExtAffElt c = build_coxeter_witness(a3.weyl, ur, NodeSet{2, 3}, NodeSet{2});
  CHECK(c == a3.weyl.mult(a3.weyl.simple(2), a3.weyl.simple(3)));
  // based set must meet every component
  CHECK_THROWS_AS(build_coxeter_witness(a3.weyl, ur, NodeSet{1, 3}, NodeSet{1}),
                  std::invalid_argument);
}

TEST_CASE("based sub-diagrams exist for every twisted diagram") {
  // one element per sigma-orbit can always be completed to a full transversal
  for (auto [t, r] : std::vector<std::pair<CartanType, int>>{{CartanType::A, 3},
                                                             {CartanType::D, 4}}) {
    Context ctx(t, r);
    for (const FrobeniusMap& s : enumerate_sigmas(ctx.weyl)) {
      NodeSet k;
      for (int node = 0; node <= r; ++node) k.push_back(node);
      // drop one sigma-orbit of nodes to get a proper stable K
      NodeSet orbit0{0};
      for (int cur = s.node_perm[0]; cur != 0; cur = s.node_perm[cur]) orbit0.push_back(cur);
      std::sort(orbit0.begin(), orbit0.end());
      NodeSet kk;
      for (int node : k)
        if (!node_set_contains(orbit0, node)) kk.push_back(node);
      if (kk.empty()) continue;
      GroupInstance inst{&ctx.datum, &ctx.weyl, s, ctx.datum.fundamental_coweight(1), kk};
      UnderlineRoots ur = build_underline_roots(ctx.weyl, kk);
      // transversal: smallest node of each orbit; must build without errors
      std::set<int> seen;
      NodeSet gamma;
      for (int node : kk) {
        NodeSet orbit{node};
        for (int cur = s.node_perm[node]; cur != node; cur = s.node_perm[cur]) orbit.push_back(cur);
        std::sort(orbit.begin(), orbit.end());
        if (seen.count(orbit[0])) continue;
        seen.insert(orbit[0]);
        gamma.push_back(orbit[0]);
      }
      std::sort(gamma.begin(), gamma.end());
      // pick one based node per component of gamma
      // (build_coxeter_witness validates internally)
      std::vector<NodeSet> comps = build_underline_roots(ctx.weyl, gamma).components;
      NodeSet based;
      for (const NodeSet& comp : comps) based.push_back(comp.front());
      std::sort(based.begin(), based.end());
      CHECK_NOTHROW(build_coxeter_witness(ctx.weyl, ur, gamma, based));
    }
  }
}

TEST_CASE("permissible triples on the controls") {
  Context a2(CartanType::A, 2);
  FrobeniusMap id = id_sigma(a2);
  Vec mu2 = vec_scale(a2.datum.fundamental_coweight(1), Rat(2));
  GroupInstance inst = instance_of(a2, id, mu2, NodeSet{1, 2});
  // every constructed element lands in the spade set with central Newton point
  std::vector<ExtAffElt> spade = adm_spade(a2.weyl, mu2, inst.k);
  std::set<ExtAffElt> spade_set(spade.begin(), spade.end());
  std::vector<PermissibleTriple> triples = enumerate_permissible_triples(inst);
  CHECK(!triples.empty());
  for (const PermissibleTriple& t : triples) {
    CHECK(spade_set.count(t.elt));
    CHECK(vec_is_zero(newton_vector(a2.weyl, id, t.elt).nu_bar));
  }
  auto witness = witness_search_non_minute(inst);
  REQUIRE(witness);
  CHECK_FALSE(has_fixed_point_in_closed_alcove(inst, witness->elt));

  // minute instance: no witness
  GroupInstance good = instance_of(a2, id, a2.datum.fundamental_coweight(1), NodeSet{1, 2});
  CHECK_FALSE(witness_search_non_minute(good));
}

TEST_CASE("projected fixed points stay below the highest K-root") {
  // for permissible triples with a fixed point, <v_K, theta_K> <= 1
  Context c2(CartanType::C, 2);
  FrobeniusMap id = id_sigma(c2);
  GroupInstance inst = instance_of(c2, id, c2.datum.fundamental_coweight(2), NodeSet{1, 2});
  UnderlineRoots ur = build_underline_roots(c2.weyl, inst.k);
  for (const PermissibleTriple& t : enumerate_permissible_triples(inst)) {
    Vec pt;
    if (!has_fixed_point_in_closed_alcove(inst, t.elt, &pt)) continue;
    Vec vk = project_onto_underline(c2.weyl, ur, vec_sub(pt, ur.e_k));
    CHECK(RootDatum::pair(vk, ur.theta_k_func) <= 1);
  }
}

TEST_CASE("central translations against twisted Coxeter elements have central Newton points") {
  Context a3(CartanType::A, 3);
  for (const FrobeniusMap& s : enumerate_sigmas(a3.weyl)) {
    NodeSet k{1, 2, 3};
    if (!node_set_sigma_stable(s, k)) continue;
    GroupInstance inst{&a3.datum, &a3.weyl, s, a3.datum.fundamental_coweight(1), k};
    UnderlineRoots ur = build_underline_roots(a3.weyl, k);
    // K' = K, lambda central on K - K' = empty: any lattice point works
    std::vector<NodeSet> orbits;
    {
      std::set<int> left(k.begin(), k.end());
      while (!left.empty()) {
        int start = *left.begin();
        NodeSet orbit;
        int cur = start;
        do {
          orbit.push_back(cur);
          left.erase(cur);
          cur = s.node_perm[cur];
        } while (cur != start);
        std::sort(orbit.begin(), orbit.end());
        orbits.push_back(orbit);
      }
    }
    NodeSet gamma;
    for (const NodeSet& orbit : orbits) gamma.push_back(orbit.front());
    std::sort(gamma.begin(), gamma.end());
    std::vector<NodeSet> comps = build_underline_roots(a3.weyl, gamma).components;
    NodeSet based;
    for (const NodeSet& comp : comps) based.push_back(comp.front());
    ExtAffElt c = build_coxeter_witness(a3.weyl, ur, gamma, based);
    for (const Vec& lam : a3.datum.w0_orbit(a3.datum.fundamental_coweight(2))) {
      ExtAffElt x = a3.weyl.mult(a3.weyl.translation(lam), c);
      CHECK(vec_is_zero(newton_vector(a3.weyl, s, x).nu_bar));
    }
  }
}

TEST_CASE("the length-zero twist on the rank-four orthogonal vector case") {
  // (D4, omega_1, tau_1): sigma has node action (0 1)(3 4) with trivial
  // L-action and every minute orbit value exactly 1; all six conditions
  // agree on it, so it belongs to the classification list
  Context d4(CartanType::D, 4);
  FrobeniusMap tau1 = build_sigma(d4.weyl, 1, identity_diagram_perm(4));
  CHECK(tau1.node_perm == std::vector<int>{1, 0, 2, 4, 3});
  CHECK(imat_is_identity(tau1.sigma0));
  GroupInstance inst{&d4.datum, &d4.weyl, tau1, d4.datum.fundamental_coweight(1), {}};
  MinuteReport rep = is_minute(inst);
  CHECK(rep.minute);
  for (const auto& [orbit, val] : rep.orbit_values) CHECK(val == Rat(1));
  CHECK(is_fully_hn(inst));
  CHECK(in_classification_table(d4, inst.mu, tau1));
  CHECK(fc_condition(inst));
  // and its triality images are recognized through isomorphism closure
  FrobeniusMap tau3 = build_sigma(d4.weyl, 2, identity_diagram_perm(4));
  CHECK(in_classification_table(d4, d4.datum.fundamental_coweight(3), tau3));
  CHECK_FALSE(in_classification_table(d4, d4.datum.fundamental_coweight(1), tau3));

  // reduction-oracle conditions confirm the same verdict
  KottwitzTable kappa(d4.weyl, tau1);
  DLOracle oracle(d4.weyl, tau1);
  auto classes = b_g_mu_via_criterion(inst, kappa);
  CHECK(classes == b_g_mu_via_straight(inst, kappa));
  CHECK(classes.size() == 3);
  for (const SigmaClass& c : classes) {
    if (is_basic(c)) continue;
    auto dim = oracle.dim_x_mu_b_k(inst, c);
    REQUIRE(dim);
    CHECK(*dim == 0);
  }
  CHECK(oracle.ekor_newton_uniqueness(inst));
}

TEST_CASE("scan output does not depend on the worker count") {
  ScanOptions seq, par;
  seq.groups = par.groups = {{CartanType::A, 2}, {CartanType::C, 2}};
  seq.mu_bound = par.mu_bound = Rat(4);
  seq.jobs = 1;
  par.jobs = 3;
  ScanResult a = classification_scan(seq);
  ScanResult b = classification_scan(par);
  REQUIRE(a.rows.size() == b.rows.size());
  for (size_t i = 0; i < a.rows.size(); ++i) {
    CHECK(a.rows[i].group == b.rows[i].group);
    CHECK(a.rows[i].mu == b.rows[i].mu);
    CHECK(a.rows[i].sigma == b.rows[i].sigma);
    CHECK(a.rows[i].minute == b.rows[i].minute);
    CHECK(a.rows[i].fully_hn == b.rows[i].fully_hn);
    CHECK(a.rows[i].in_table == b.rows[i].in_table);
  }
}

TEST_CASE("classification scan at reduced scale") {
  ScanOptions opts;
  opts.groups = {{CartanType::A, 1}, {CartanType::A, 2}, {CartanType::C, 2}};
  opts.mu_bound = Rat(4);
  ScanResult res = classification_scan(opts);
  CHECK(res.all_agree);
  // expected table membership spot checks
  auto find = [&](const std::string& group, const std::string& mu, const std::string& sigma) {
    for (const ScanRow& row : res.rows)
      if (row.group == group && row.mu == mu && row.sigma == sigma) return row.in_table;
    FAIL("row not found: ", group, " ", mu, " ", sigma);
    return false;
  };
  CHECK(find("A1", "1", "t0;1"));
  CHECK(find("A1", "2", "t0;1"));       // omega + omega is in the list
  CHECK_FALSE(find("A1", "3", "t0;1"));
  CHECK(find("A2", "1,0", "t0;12"));
  CHECK(find("A2", "1,0", "t0;21"));    // diagram flip
  CHECK_FALSE(find("A2", "2,0", "t0;12"));
  CHECK(find("C2", "0,1", "t0;12"));
  CHECK(find("C2", "0,1", "t1;12"));
  CHECK(find("C2", "1,0", "t0;12"));
  CHECK_FALSE(find("C2", "1,0", "t1;12"));

  // rank-three spot checks of the classification membership
  Context a3(CartanType::A, 3);
  CHECK(in_classification_table(a3, a3.datum.fundamental_coweight(2),
                                build_sigma(a3.weyl, 2, identity_diagram_perm(3))));
  Context b3(CartanType::B, 3);
  FrobeniusMap id_b3 = build_sigma(b3.weyl, 0, identity_diagram_perm(3));
  CHECK(in_classification_table(b3, b3.datum.fundamental_coweight(1), id_b3));
  CHECK_FALSE(in_classification_table(b3, b3.datum.fundamental_coweight(2), id_b3));
}
