#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hncomb/acceptance.hpp"
#include "hncomb/hn_decomp.hpp"
#include "hncomb/instance_config.hpp"

#include <sstream>

namespace py = pybind11;
using namespace hncomb;

namespace {

std::vector<std::string> rat_list(const Vec& v) {
  std::vector<std::string> out;
  for (const Rat& x : v) out.push_back(format_rat(x));
  return out;
}

py::dict class_dict(const SigmaClass& c) {
  py::dict d;
  d["kappa"] = c.kappa;
  d["nu_bar"] = rat_list(c.nu_bar);
  d["basic"] = is_basic(c);
  return d;
}

/// Owning wrapper exposing the main operations on one instance.
class Instance {
 public:
  Instance(const std::string& type, int rank, const std::vector<std::string>& mu, int omega,
           const std::string& diagram, const std::vector<int>& k) {
    InstanceConfig cfg;
    if (type.size() != 1) throw ConfigError("type must be one of A, B, C, D");
    cfg.type = cartan_type_from_char(type[0]);
    cfg.rank = rank;
    for (const std::string& c : mu) cfg.mu_coeffs.push_back(parse_rat(c));
    cfg.sigma_omega = omega;
    cfg.sigma_diagram = diagram;
    cfg.k_nodes = k;
    bound_ = bind_instance(cfg);
  }

  py::dict describe() const {
    const auto& inst = bound_.inst;
    py::dict d;
    d["group"] = inst.datum->name();
    d["positive_roots"] = inst.datum->num_positive();
    d["omega_order"] = inst.weyl->omega_order();
    d["sigma_order"] = inst.sigma.order;
    d["sigma0_orbits"] = sigma0_orbits(inst.sigma, inst.datum->rank());
    d["adm"] = adm_set(*inst.weyl, inst.mu).size();
    d["adm_min_coset"] = adm_cap_kw(*inst.weyl, inst.mu, inst.k).size();
    d["spade"] = adm_spade(*inst.weyl, inst.mu, inst.k).size();
    return d;
  }

  std::vector<std::string> adm() const {
    std::vector<std::string> out;
    for (const ExtAffElt& w : adm_set(*bound_.inst.weyl, bound_.inst.mu))
      out.push_back(bound_.inst.weyl->to_string(w));
    std::sort(out.begin(), out.end());
    return out;
  }

  py::dict minute() const {
    MinuteReport rep = is_minute(bound_.inst);
    py::dict d;
    d["minute"] = rep.minute;
    py::list vals;
    for (const auto& [orbit, val] : rep.orbit_values) {
      py::dict row;
      row["orbit"] = orbit;
      row["value"] = format_rat(val);
      vals.append(row);
    }
    d["orbit_values"] = vals;
    return d;
  }

  bool fully_hn() const {
    return is_fully_hn(bound_.inst);
  }

  py::list bgmu() const {
    KottwitzTable kappa(*bound_.inst.weyl, bound_.inst.sigma);
    auto straight = b_g_mu_via_straight(bound_.inst, kappa);
    auto criterion = b_g_mu_via_criterion(bound_.inst, kappa);
    if (straight != criterion)
      throw std::logic_error("the two B(G,{mu}) routes disagree; this falsifies the build");
    py::list out;
    for (const SigmaClass& c : criterion) out.append(class_dict(c));
    return out;
  }

  py::dict decide() const {
    const auto& inst = bound_.inst;
    KottwitzTable kappa(*inst.weyl, inst.sigma);
    DLOracle oracle(*inst.weyl, inst.sigma);
    MinuteReport rep = is_minute(inst);
    bool fully = is_fully_hn(inst);
    bool dims_zero = true;
    for (const SigmaClass& c : b_g_mu_via_criterion(inst, kappa)) {
      if (is_basic(c)) continue;
      auto dim = oracle.dim_x_mu_b_k(inst, c);
      if (!dim || *dim != 0) dims_zero = false;
    }
    bool unique = oracle.ekor_newton_uniqueness(inst);
    SigmaClass basic{kappa.class_of_omega(inst.weyl->omega_part(inst.weyl->translation(inst.mu))),
                     Vec(inst.datum->rank(), Rat(0))};
    bool basic_fixed = true;
    for (const ExtAffElt& w : adm_cap_kw(*inst.weyl, inst.mu, inst.k))
      if (oracle.dl_dimension(w).count(basic) && !has_fixed_point_in_closed_alcove(inst, w))
        basic_fixed = false;
    bool fc = fc_condition(inst);
    py::dict d;
    d["fully_hn"] = fully;
    d["minute"] = rep.minute;
    d["nonbasic_dim_zero"] = dims_zero;
    d["ekor_newton_unique"] = unique;
    d["basic_fixed_points"] = basic_fixed;
    d["fixed_point_condition"] = fc;
    d["agree"] = fully == rep.minute && fully == dims_zero && fully == unique &&
                 fully == basic_fixed && fully == fc;
    return d;
  }

  py::list dim_table() const {
    KottwitzTable kappa(*bound_.inst.weyl, bound_.inst.sigma);
    DLOracle oracle(*bound_.inst.weyl, bound_.inst.sigma);
    py::list out;
    for (const SigmaClass& c : b_g_mu_via_criterion(bound_.inst, kappa)) {
      py::dict row = class_dict(c);
      auto dim = oracle.dim_x_mu_b_k(bound_.inst, c);
      row["dim_x_mu_b_k"] = dim ? py::object(py::int_(*dim)) : py::object(py::none());
      out.append(row);
    }
    return out;
  }

  py::dict hn_decompose(int class_index) const {
    KottwitzTable kappa(*bound_.inst.weyl, bound_.inst.sigma);
    auto classes = b_g_mu_via_criterion(bound_.inst, kappa);
    if (class_index < 0 || class_index >= static_cast<int>(classes.size()))
      throw std::out_of_range("class index out of range");
    DLOracle oracle(*bound_.inst.weyl, bound_.inst.sigma);
    AdmDecompReport rep = verify_adm_decomposition(bound_.inst, classes[class_index], oracle);
    py::dict d;
    d["class"] = class_dict(rep.cls);
    d["v_flat"] = rat_list(rep.vflat.v);
    d["witness_levi"] = rep.vflat.j;
    py::list blocks;
    for (const auto& [dir, members] : rep.blocks) {
      py::dict b;
      b["direction"] = dir;
      b["members"] = members;
      blocks.append(b);
    }
    d["blocks"] = blocks;
    d["verified"] = rep.ok;
    d["failures"] = rep.failures;
    return d;
  }

 private:
  BoundInstance bound_;
};

py::dict scan_py(const std::string& types, const std::string& mu_bound, int jobs) {
  ScanOptions opts;
  opts.jobs = jobs;
  opts.mu_bound = parse_rat(mu_bound);
  std::stringstream ss(types);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    opts.groups.emplace_back(cartan_type_from_char(tok[0]), std::stoi(tok.substr(1)));
  }
  ScanResult res = classification_scan(opts);
  py::dict d;
  d["all_agree"] = res.all_agree;
  d["disagreements"] = res.disagreements;
  py::list rows;
  for (const ScanRow& row : res.rows) {
    py::dict r;
    r["group"] = row.group;
    r["mu"] = row.mu;
    r["sigma"] = row.sigma;
    r["minute"] = row.minute;
    r["fully_hn"] = row.fully_hn;
    r["in_table"] = row.in_table;
    rows.append(r);
  }
  d["rows"] = rows;
  return d;
}

py::list verify_py(const std::string& criterion, const std::string& data_dir, int jobs) {
  py::list out;
  for (const CriterionResult& r : run_acceptance(criterion, data_dir, jobs)) {
    py::dict d;
    d["name"] = r.name;
    d["pass"] = r.pass;
    d["detail"] = r.detail;
    d["seconds"] = r.seconds;
    out.append(d);
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_hncomb, m) {
  m.doc() = "exact combinatorics of admissible sets, sigma-conjugacy classes and "
            "Hodge-Newton decomposability in extended affine Weyl groups";

  py::register_exception<ConfigError>(m, "ConfigError");

  py::class_<Instance>(m, "Instance")
      .def(py::init<const std::string&, int, const std::vector<std::string>&, int,
                    const std::string&, const std::vector<int>&>(),
           py::arg("type"), py::arg("rank"), py::arg("mu"), py::arg("omega") = 0,
           py::arg("diagram") = "id", py::arg("K") = std::vector<int>{})
      .def("describe", &Instance::describe)
      .def("adm", &Instance::adm)
      .def("minute", &Instance::minute)
      .def("fully_hn", &Instance::fully_hn)
      .def("bgmu", &Instance::bgmu)
      .def("decide", &Instance::decide)
      .def("dim_table", &Instance::dim_table)
      .def("hn_decompose", &Instance::hn_decompose, py::arg("class_index"));

  m.def("scan", &scan_py, py::arg("types") = "A1,A2,A3,A4,B3,C2,C3,D4",
        py::arg("mu_bound") = "6", py::arg("jobs") = 1);
  m.def("verify", &verify_py, py::arg("criterion") = "", py::arg("data_dir") = "data",
        py::arg("jobs") = 1);
  m.attr("__version__") = version_string();
}
