// Copyright 2026 The Unravel Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>

#include "unravel/model.hpp"

namespace unravel {

/// Exactly unitary step operator exp(-i H dt) for one fixed dt.
struct UnitaryPropagator {
  Matrix matrix;
  double dt = 0.0;
  std::uint64_t source_hash = 0;  // opaque identifier of (H, dt)
};

/// Cached eigendecomposition H = V diag(e) V^dagger. Decompose once, then
/// exponentiate eigenvalues per requested dt; the jump engine uses the
/// two-matvec evolve path for its irregular inter-event intervals. Immutable
/// after construction, so concurrent readers are safe.
class SpectralPropagator {
 public:
  explicit SpectralPropagator(const Matrix& hamiltonian);

  /// Materialized exp(-i H dt); worth it only for a dt reused many times.
  UnitaryPropagator propagator(double dt) const;

  /// psi <- exp(-i H dt) psi without materializing the matrix.
  void evolve_in_place(Vector& psi, double dt) const;

  const RealVector& energies() const { return energies_; }
  double spectral_norm() const { return spectral_norm_; }
  std::uint64_t hamiltonian_hash() const { return hash_; }
  int dim() const { return static_cast<int>(energies_.size()); }

 private:
  Matrix vectors_;
  RealVector energies_;
  double spectral_norm_ = 0.0;
  std::uint64_t hash_ = 0;
  bool diagonal_ = false;  // diagonal H: exponentials taken entrywise, exact
};

/// Spec-level convenience: decompose H and materialize exp(-i H dt).
UnitaryPropagator precompute_propagator(const Matrix& hamiltonian, double dt);

WaveFunction unitary_step(const UnitaryPropagator& u, const WaveFunction& psi);

/// exp(+i G) for Hermitian G, exactly unitary via the spectral method.
/// Diagonal G is exponentiated entrywise.
Matrix hermitian_expi(const Matrix& g);

}  // namespace unravel
