// Copyright 2026 The qscatter Authors
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

#include <string>

#include "qscatter/circuit.hpp"
#include "qscatter/linalg.hpp"

namespace qscatter {

inline DensityMatrix basis_state(std::size_t label, std::size_t n) {
    if (label >= n)
        fail(ErrorCode::InvalidArgument,
             "basis label " + std::to_string(label) + " out of range for dim " +
                 std::to_string(n));
    ComplexMatrix m(n);
    m.set(label, label, 1.0);
    return DensityMatrix::assume_valid(std::move(m));
}

/// I/N.
inline DensityMatrix maximally_mixed(std::size_t n) {
    return DensityMatrix::assume_valid(
        scaled(ComplexMatrix::identity(n), 1.0 / static_cast<double>(n)));
}

/// Ideal pseudo-pure state |label><label|, optionally mixed with I/N.
inline DensityMatrix pseudo_pure(std::size_t label, std::size_t n,
                                 double noise_p = 0.0) {
    return depolarize(basis_state(label, n), noise_p);
}

} // namespace qscatter
