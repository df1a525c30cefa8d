#include "hncomb/instance_config.hpp"

#include <json.hpp>

#include <algorithm>
#include <set>

namespace hncomb {

using nlohmann::json;

std::string version_string() { return "hncomb 0.1.0"; }

namespace {

std::pair<int, int> line_col(const std::string& text, size_t byte) {
  int line = 1, col = 1;
  for (size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

Rat rat_from_json(const json& v, const std::string& what) {
  if (v.is_number_integer()) return Rat(v.get<long long>());
  if (v.is_string()) {
    try {
      return parse_rat(v.get<std::string>());
    } catch (const std::invalid_argument& e) {
      throw ConfigError(what + ": " + e.what());
    }
  }
  throw ConfigError(what + ": expected an integer or a \"p/q\" string");
}

}  // namespace

InstanceConfig parse_instance_config(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    auto [line, col] = line_col(text, e.byte > 0 ? e.byte - 1 : 0);
    throw ConfigError("config parse error at line " + std::to_string(line) + ", column " +
                      std::to_string(col) + ": " + e.what());
  }
  if (!root.is_object()) throw ConfigError("config must be a JSON object");
  static const std::set<std::string> allowed{"type", "rank", "mu", "sigma", "K"};
  for (auto it = root.begin(); it != root.end(); ++it)
    if (!allowed.count(it.key())) throw ConfigError("unknown config key: '" + it.key() + "'");
  for (const char* key : {"type", "rank", "mu"})
    if (!root.contains(key)) throw ConfigError(std::string("missing config key: '") + key + "'");

  InstanceConfig cfg;
  if (!root["type"].is_string() || root["type"].get<std::string>().size() != 1)
    throw ConfigError("'type' must be one of \"A\", \"B\", \"C\", \"D\"");
  try {
    cfg.type = cartan_type_from_char(root["type"].get<std::string>()[0]);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  if (!root["rank"].is_number_integer()) throw ConfigError("'rank' must be an integer");
  cfg.rank = root["rank"].get<int>();
  if (!root["mu"].is_array()) throw ConfigError("'mu' must be an array of rationals");
  for (size_t i = 0; i < root["mu"].size(); ++i)
    cfg.mu_coeffs.push_back(rat_from_json(root["mu"][i], "mu[" + std::to_string(i) + "]"));
  if (root.contains("sigma")) {
    const json& s = root["sigma"];
    if (!s.is_object()) throw ConfigError("'sigma' must be an object");
    static const std::set<std::string> sig_allowed{"omega", "diagram"};
    for (auto it = s.begin(); it != s.end(); ++it)
      if (!sig_allowed.count(it.key())) throw ConfigError("unknown sigma key: '" + it.key() + "'");
    if (s.contains("omega")) {
      if (!s["omega"].is_number_integer()) throw ConfigError("'sigma.omega' must be an integer");
      cfg.sigma_omega = s["omega"].get<int>();
    }
    if (s.contains("diagram")) {
      if (!s["diagram"].is_string()) throw ConfigError("'sigma.diagram' must be a string");
      cfg.sigma_diagram = s["diagram"].get<std::string>();
    }
  }
  if (root.contains("K")) {
    if (!root["K"].is_array()) throw ConfigError("'K' must be an array of node indices");
    for (const json& v : root["K"]) {
      if (!v.is_number_integer()) throw ConfigError("'K' entries must be integers");
      cfg.k_nodes.push_back(v.get<int>());
    }
  }
  return cfg;
}

std::vector<int> resolve_diagram_name(const RootDatum& datum, const std::string& name) {
  int r = datum.rank();
  std::vector<int> perm = identity_diagram_perm(r);
  auto swap_nodes = [&](int a, int b) { std::swap(perm[a], perm[b]); };
  if (name == "id") return perm;
  if (name == "flip") {
    if (datum.type() == CartanType::A && r >= 2) {
      for (int i = 1; i <= r; ++i) perm[i] = r + 1 - i;
      return perm;
    }
    if (datum.type() == CartanType::D) {
      swap_nodes(r - 1, r);
      return perm;
    }
    throw ConfigError("'flip' is not a diagram automorphism of " + datum.name());
  }
  if (datum.type() == CartanType::D && r == 4) {
    if (name == "swap34") {
      swap_nodes(3, 4);
      return perm;
    }
    if (name == "swap13") {
      swap_nodes(1, 3);
      return perm;
    }
    if (name == "swap14") {
      swap_nodes(1, 4);
      return perm;
    }
    if (name == "rot134") {
      perm[1] = 3;
      perm[3] = 4;
      perm[4] = 1;
      return perm;
    }
    if (name == "rot143") {
      perm[1] = 4;
      perm[4] = 3;
      perm[3] = 1;
      return perm;
    }
  }
  throw ConfigError("unknown diagram automorphism '" + name + "' for " + datum.name());
}

BoundInstance bind_instance(const InstanceConfig& cfg, bool require_nonzero_mu) {
  std::shared_ptr<Context> ctx;
  try {
    ctx = std::make_shared<Context>(cfg.type, cfg.rank);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  const RootDatum& d = ctx->datum;
  if (static_cast<int>(cfg.mu_coeffs.size()) != d.rank())
    throw ConfigError("'mu' must have exactly " + std::to_string(d.rank()) + " entries");
  Vec mu(d.rank(), Rat(0));
  for (int i = 1; i <= d.rank(); ++i) {
    const Rat& c = cfg.mu_coeffs[i - 1];
    if (!rat_is_int(c) || c < 0)
      throw ConfigError("mu[" + std::to_string(i - 1) +
                        "] must be a nonnegative integer: dominant coweights have integral "
                        "fundamental-coweight coordinates");
    mu = vec_add(mu, vec_scale(d.fundamental_coweight(i), c));
  }
  if (cfg.sigma_omega < 0 || cfg.sigma_omega >= ctx->weyl.omega_order())
    throw ConfigError("sigma.omega out of range: Omega has order " +
                      std::to_string(ctx->weyl.omega_order()));
  std::vector<int> diagram = resolve_diagram_name(d, cfg.sigma_diagram);
  FrobeniusMap sigma;
  try {
    sigma = build_sigma(ctx->weyl, cfg.sigma_omega, diagram);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  NodeSet k;
  try {
    k = make_node_set(cfg.k_nodes, d.rank());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  GroupInstance inst{&ctx->datum, &ctx->weyl, sigma, mu, k};
  try {
    inst.validate(require_nonzero_mu);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return BoundInstance{ctx, inst};
}

}  // namespace hncomb
