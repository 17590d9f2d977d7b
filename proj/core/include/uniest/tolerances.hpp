// Copyright 2026 The uniest Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

namespace uniest {

/// Numerical thresholds used across the library. Every check reads from one
/// of these records; callers that need different thresholds pass their own.
struct Tolerances {
  double generator = 1e-12;            // hermiticity, trace, orthonormality of T_a
  double unitarity = 1e-10;
  double normalization = 1e-12;        // tr RR^dagger = 1
  double max_entangled = 1e-10;        // |RR^dagger - 1/d|_max
  double state = 1e-10;                // <psi|psi> = 1, Re<psi_a|psi> = 0
  double chart_boundary = 1e-6;        // distance of polar coordinates to 0 and pi
  double povm_psd = 1e-10;
  double povm_completeness = 1e-10;
  double povm_load_completeness = 1e-8;
  double product_structure = 1e-12;
  double fisher_symmetry = 1e-10;
  double fisher_psd = 1e-9;
  double positive_definite = 1e-10;    // gate for inverting H
  double zero_probability = 1e-12;
  double zero_derivative = 1e-9;
  double qcrb = 1e-9;
  double sld_support = 1e-10;
  double sld_ill_posed = 1e-8;
  double achievability = 1e-8;
};

const Tolerances& default_tolerances();

}  // namespace uniest
