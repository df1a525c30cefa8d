#pragma once

#include "hncomb/frobenius.hpp"

#include <memory>
#include <stdexcept>
#include <string>

namespace hncomb {

/// Input error (bad config, bad flags): maps to exit code 2.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Parsed instance description. mu is given in fundamental-coweight
/// coordinates; sigma as an Omega index plus a named finite diagram
/// automorphism; K as affine node indices (0 = affine node).
struct InstanceConfig {
  CartanType type = CartanType::A;
  int rank = 1;
  std::vector<Rat> mu_coeffs;
  int sigma_omega = 0;
  std::string sigma_diagram = "id";
  std::vector<int> k_nodes;
};

/// Parses a JSON config document; unknown keys are rejected and syntax errors
/// carry line/column positions.
InstanceConfig parse_instance_config(const std::string& text);

/// Resolves a named finite diagram automorphism ("id", "flip", and for D4
/// also "swap13", "swap14", "swap34", "rot134", "rot143").
std::vector<int> resolve_diagram_name(const RootDatum& datum, const std::string& name);

/// An owning bundle: context plus instance.
struct BoundInstance {
  std::shared_ptr<Context> ctx;
  GroupInstance inst;
};

BoundInstance bind_instance(const InstanceConfig& cfg, bool require_nonzero_mu = true);

std::string version_string();

}  // namespace hncomb
