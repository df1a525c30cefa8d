#include "hncomb/acceptance.hpp"
#include "hncomb/hn_decomp.hpp"
#include "hncomb/instance_config.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

namespace {

using hncomb::Rat;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitPropertyFailure = 1;
constexpr int kExitInputError = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw hncomb::ConfigError("cannot open config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json instance_json(const hncomb::InstanceConfig& cfg) {
  json mu = json::array();
  for (const Rat& c : cfg.mu_coeffs) mu.push_back(hncomb::format_rat(c));
  json k = json::array();
  for (int node : cfg.k_nodes) k.push_back(node);
  return json{{"type", std::string(1, static_cast<char>(cfg.type))},
              {"rank", cfg.rank},
              {"mu", mu},
              {"sigma", json{{"omega", cfg.sigma_omega}, {"diagram", cfg.sigma_diagram}}},
              {"K", k}};
}

json base_report(const std::string& command, const hncomb::InstanceConfig& cfg) {
  return json{{"version", hncomb::version_string()},
              {"command", command},
              {"instance", instance_json(cfg)}};
}

void emit(const json& report, bool as_json) {
  if (as_json) {
    std::cout << report.dump(2) << "\n";
  } else {
    // compact human-readable rendering of the same data
    std::function<void(const json&, int)> render = [&](const json& j, int indent) {
      std::string pad(indent, ' ');
      if (j.is_object()) {
        for (auto it = j.begin(); it != j.end(); ++it) {
          if (it.value().is_object() || (it.value().is_array() && !it.value().empty() &&
                                         (it.value()[0].is_object() || it.value()[0].is_array()))) {
            std::cout << pad << it.key() << ":\n";
            render(it.value(), indent + 2);
          } else {
            std::cout << pad << it.key() << ": " << it.value().dump() << "\n";
          }
        }
      } else if (j.is_array()) {
        for (const json& v : j) render(v, indent);
      } else {
        std::cout << pad << j.dump() << "\n";
      }
    };
    render(report, 0);
  }
}

void elt_list_json(const hncomb::AffineWeyl& weyl, const std::vector<hncomb::ExtAffElt>& v,
                   json& out) {
  std::vector<std::string> names;
  for (const auto& e : v) names.push_back(weyl.to_string(e));
  std::sort(names.begin(), names.end());
  out = names;
}

json class_json(const hncomb::RootDatum& d, const hncomb::SigmaClass& c) {
  json nu = json::array();
  for (const Rat& x : c.nu_bar) nu.push_back(hncomb::format_rat(x));
  (void)d;
  return json{{"kappa", c.kappa}, {"nu_bar", nu}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact combinatorics of admissible sets, sigma-conjugacy classes and "
               "Hodge-Newton decomposability in extended affine Weyl groups"};
  app.require_subcommand(1);

  std::string config_path;
  bool as_json = false;
  int jobs = 1;
  std::string mu_bound = "6";
  std::string criterion;
  std::string data_dir = "data";
  int class_index = -1;
  std::string types = "A1,A2,A3,A4,B3,C2,C3,D4";

  auto add_config = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_path, "instance config file (JSON)")->required();
    cmd->add_flag("--json", as_json, "emit the canonical JSON report");
  };

  CLI::App* describe = app.add_subcommand("describe", "root datum, sigma and admissible-set counts");
  add_config(describe);
  CLI::App* decide =
      app.add_subcommand("decide", "evaluate the six equivalent decomposability conditions");
  add_config(decide);
  CLI::App* adm = app.add_subcommand("adm", "admissible set and its K-variants");
  add_config(adm);
  CLI::App* bgmu = app.add_subcommand("bgmu", "B(G,{mu}) by both routes");
  add_config(bgmu);
  CLI::App* dim_table = app.add_subcommand("dim-table", "oracle dimensions per class");
  add_config(dim_table);
  CLI::App* hn_dec = app.add_subcommand("hn-decompose", "partition of Adm({mu},b) for a class");
  add_config(hn_dec);
  hn_dec->add_option("--class-index", class_index,
                     "index into the sorted class list (default: all non-basic)");

  CLI::App* scan = app.add_subcommand("scan", "classification scan over small-rank classical types");
  scan->add_flag("--json", as_json, "emit the canonical JSON report");
  scan->add_option("--jobs", jobs, "worker threads");
  scan->add_option("--mu-bound", mu_bound, "bound on <mu, 2rho>");
  scan->add_option("--types", types, "comma-separated group list, e.g. A2,C2");

  CLI::App* verify = app.add_subcommand("verify", "run the acceptance suite");
  verify->add_option("--criterion", criterion, "run a single criterion");
  verify->add_option("--jobs", jobs, "worker threads");
  verify->add_option("--data-dir", data_dir, "directory holding golden files");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInputError;
  }

  try {
    if (verify->parsed()) {
      auto results = hncomb::run_acceptance(criterion, data_dir, jobs);
      bool all = true;
      for (const auto& r : results) {
        all = all && r.pass;
        std::ostringstream line;
        line.setf(std::ios::fixed);
        line.precision(2);
        line << (r.pass ? "PASS" : "FAIL") << "  " << r.name << "  (" << r.seconds << "s)";
        if (!r.detail.empty()) line << "  " << r.detail;
        std::cout << line.str() << "\n";
      }
      std::cout << (all ? "acceptance: all criteria pass" : "acceptance: FAILURES above") << "\n";
      return all ? kExitOk : kExitPropertyFailure;
    }

    if (scan->parsed()) {
      hncomb::ScanOptions opts;
      opts.jobs = jobs;
      opts.mu_bound = hncomb::parse_rat(mu_bound);
      std::stringstream ss(types);
      std::string tok;
      while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        if (tok.size() < 2) throw hncomb::ConfigError("bad group name '" + tok + "'");
        opts.groups.emplace_back(hncomb::cartan_type_from_char(tok[0]), std::stoi(tok.substr(1)));
      }
      hncomb::ScanResult res = hncomb::classification_scan(opts);
      json rows = json::array();
      for (const auto& row : res.rows)
        rows.push_back(json{{"group", row.group},
                            {"mu", row.mu},
                            {"sigma", row.sigma},
                            {"minute", row.minute},
                            {"fully_hn", row.fully_hn},
                            {"in_table", row.in_table}});
      json rep{{"version", hncomb::version_string()},
               {"command", "scan"},
               {"all_agree", res.all_agree},
               {"disagreements", res.disagreements},
               {"rows", rows}};
      emit(rep, as_json);
      return res.all_agree ? kExitOk : kExitPropertyFailure;
    }

    hncomb::InstanceConfig cfg = hncomb::parse_instance_config(read_file(config_path));
    hncomb::BoundInstance bound = hncomb::bind_instance(cfg);
    const hncomb::GroupInstance& inst = bound.inst;
    const hncomb::AffineWeyl& weyl = *inst.weyl;
    const hncomb::RootDatum& datum = *inst.datum;

    if (describe->parsed()) {
      json rep = base_report("describe", cfg);
      rep["root_datum"] = json{{"name", datum.name()},
                               {"positive_roots", datum.num_positive()},
                               {"omega_order", weyl.omega_order()},
                               {"lattice_scale", datum.lattice_scale()}};
      json orbits = json::array();
      for (const auto& orbit : hncomb::sigma0_orbits(inst.sigma, datum.rank())) orbits.push_back(orbit);
      rep["sigma"] = json{{"order", inst.sigma.order},
                          {"sigma0_orbits", orbits},
                          {"sigma_zero", [&] {
                             json v = json::array();
                             for (const Rat& x : inst.sigma.sigma_zero(weyl))
                               v.push_back(hncomb::format_rat(x));
                             return v;
                           }()}};
      rep["counts"] = json{{"adm", hncomb::adm_set(weyl, inst.mu).size()},
                           {"adm_min_coset", hncomb::adm_cap_kw(weyl, inst.mu, inst.k).size()},
                           {"spade", hncomb::adm_spade(weyl, inst.mu, inst.k).size()}};
      emit(rep, as_json);
      return kExitOk;
    }

    if (adm->parsed()) {
      json rep = base_report("adm", cfg);
      json a, b, s;
      elt_list_json(weyl, hncomb::adm_set(weyl, inst.mu), a);
      elt_list_json(weyl, hncomb::adm_cap_kw(weyl, inst.mu, inst.k), b);
      elt_list_json(weyl, hncomb::adm_spade(weyl, inst.mu, inst.k), s);
      rep["adm"] = a;
      rep["adm_min_coset"] = b;
      rep["spade"] = s;
      rep["counts"] = json{{"adm", a.size()}, {"adm_min_coset", b.size()}, {"spade", s.size()}};
      emit(rep, as_json);
      return kExitOk;
    }

    hncomb::KottwitzTable kappa(weyl, inst.sigma);

    if (bgmu->parsed()) {
      auto straight = hncomb::b_g_mu_via_straight(inst, kappa);
      auto criterion_route = hncomb::b_g_mu_via_criterion(inst, kappa);
      json rep = base_report("bgmu", cfg);
      json s = json::array(), cr = json::array();
      for (const auto& c : straight) s.push_back(class_json(datum, c));
      for (const auto& c : criterion_route) cr.push_back(class_json(datum, c));
      bool agree = straight == criterion_route;
      rep["via_straight"] = s;
      rep["via_criterion"] = cr;
      rep["agree"] = agree;
      emit(rep, as_json);
      return agree ? kExitOk : kExitPropertyFailure;
    }

    if (dim_table->parsed()) {
      hncomb::DLOracle oracle(weyl, inst.sigma);
      json rep = base_report("dim-table", cfg);
      json rows = json::array();
      for (const auto& c : hncomb::b_g_mu_via_criterion(inst, kappa)) {
        auto dim = oracle.dim_x_mu_b_k(inst, c);
        json row = class_json(datum, c);
        row["basic"] = hncomb::is_basic(c);
        row["dim_x_mu_b_k"] = dim ? json(*dim) : json(nullptr);
        rows.push_back(row);
      }
      rep["classes"] = rows;
      emit(rep, as_json);
      return kExitOk;
    }

    if (decide->parsed()) {
      hncomb::DLOracle oracle(weyl, inst.sigma);
      hncomb::MinuteReport minute = hncomb::is_minute(inst);
      bool fully = hncomb::is_fully_hn(inst);
      auto classes = hncomb::b_g_mu_via_criterion(inst, kappa);
      bool dims_zero = true;
      for (const auto& c : classes) {
        if (hncomb::is_basic(c)) continue;
        auto dim = oracle.dim_x_mu_b_k(inst, c);
        if (!dim || *dim != 0) dims_zero = false;
      }
      bool unique = oracle.ekor_newton_uniqueness(inst);
      hncomb::SigmaClass basic{kappa.class_of_omega(weyl.omega_part(weyl.translation(inst.mu))),
                               hncomb::Vec(datum.rank(), Rat(0))};
      bool basic_fixed = true;
      for (const auto& w : hncomb::adm_cap_kw(weyl, inst.mu, inst.k))
        if (oracle.dl_dimension(w).count(basic) &&
            !hncomb::has_fixed_point_in_closed_alcove(inst, w))
          basic_fixed = false;
      bool fc = hncomb::fc_condition(inst);

      json rep = base_report("decide", cfg);
      rep["conditions"] = json{{"1_fully_hn", fully},        {"2_minute", minute.minute},
                               {"3_nonbasic_dim_zero", dims_zero}, {"4_ekor_newton_unique", unique},
                               {"5_basic_fixed_points", basic_fixed}, {"6_fixed_point_condition", fc}};
      json orbit_vals = json::array();
      for (const auto& [orbit, val] : minute.orbit_values)
        orbit_vals.push_back(json{{"orbit", orbit}, {"value", hncomb::format_rat(val)}});
      rep["minute_orbit_values"] = orbit_vals;
      bool agree = (fully == minute.minute) && (fully == dims_zero) && (fully == unique) &&
                   (fully == basic_fixed) && (fully == fc);
      rep["agree"] = agree;
      if (!agree) rep["error"] = "the six conditions disagree; this falsifies the build";
      if (!fc) {
        // search the instance's K, falling back to a maximal sigma-stable one
        // (drop one sigma-orbit of nodes)
        hncomb::GroupInstance search = inst;
        for (int drop = 0; drop <= datum.rank() && search.k.empty(); ++drop) {
          std::set<int> orbit{drop};
          for (int cur = inst.sigma.node_perm[drop]; cur != drop; cur = inst.sigma.node_perm[cur])
            orbit.insert(cur);
          hncomb::NodeSet k;
          for (int node = 0; node <= datum.rank(); ++node)
            if (!orbit.count(node)) k.push_back(node);
          search.k = k;
        }
        auto witness = hncomb::witness_search_non_minute(search);
        if (witness) rep["fc_witness"] = weyl.to_string(witness->elt);
      }
      emit(rep, as_json);
      return agree ? kExitOk : kExitPropertyFailure;
    }

    if (hn_dec->parsed()) {
      hncomb::DLOracle oracle(weyl, inst.sigma);
      auto classes = hncomb::b_g_mu_via_criterion(inst, kappa);
      std::vector<hncomb::SigmaClass> selected;
      if (class_index >= 0) {
        if (class_index >= static_cast<int>(classes.size()))
          throw hncomb::ConfigError("class index out of range: B(G,{mu}) has " +
                                    std::to_string(classes.size()) + " classes");
        selected.push_back(classes[class_index]);
      } else {
        for (const auto& c : classes)
          if (!hncomb::is_basic(c)) selected.push_back(c);
      }
      json rep = base_report("hn-decompose", cfg);
      json blocks_out = json::array();
      bool all_ok = true;
      for (const auto& c : selected) {
        if (hncomb::is_basic(c))
          throw hncomb::ConfigError("selected class is basic; decomposition applies to non-basic classes");
        if (!hncomb::is_hn_decomposable(inst, c))
          throw hncomb::ConfigError("selected class is not Hodge-Newton decomposable");
        hncomb::AdmDecompReport r = hncomb::verify_adm_decomposition(inst, c, oracle);
        json entry = class_json(datum, c);
        json vflat = json::array();
        for (const Rat& x : r.vflat.v) vflat.push_back(hncomb::format_rat(x));
        entry["v_flat"] = vflat;
        entry["witness_levi"] = r.vflat.j;
        json blocks = json::array();
        for (const auto& [direction, members] : r.blocks)
          blocks.push_back(json{{"direction", direction}, {"members", members}});
        entry["blocks"] = blocks;
        entry["verified"] = r.ok;
        entry["failures"] = r.failures;
        all_ok = all_ok && r.ok;
        blocks_out.push_back(entry);
      }
      rep["decompositions"] = blocks_out;
      rep["verified"] = all_ok;
      emit(rep, as_json);
      return all_ok ? kExitOk : kExitPropertyFailure;
    }

    throw hncomb::ConfigError("no subcommand handled");
  } catch (const hncomb::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::exception& e) {
    std::cerr << "internal failure: " << e.what() << "\n";
    return kExitPropertyFailure;
  }
  return kExitOk;
}
