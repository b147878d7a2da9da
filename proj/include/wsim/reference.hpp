// Copyright 2026 The wsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#pragma once

#include <vector>

#include "wsim/boolean_fourier.hpp"
#include "wsim/oracle.hpp"
#include "wsim/simulators.hpp"

namespace wsim::reference {

/// Dense values of the driver targets, for verification at small n.

double expectation(const DenseState &s, const PauliSum &o);
DenseState run_stages(const CtState &input, const std::vector<Stage> &stages);
double composed(const CtState &input, const std::vector<Stage> &stages, const PauliSum &o);
double sparse_circuit(const std::vector<EcsOperator> &ops, const CtState &input, const PauliSum &o);
double cnot_expx(const Circuit &circuit, const CtState &input, int qubit = 0);
/// Probability that the first k qubits read 0 after V3 V2 V1 |0...0>.
double dj_class(const Circuit &v1, const EcsOperator &v2, const Circuit &v3, int k);
/// E[(-1)^{g(u)}] over the measured bits.
double five_round(const FiveRoundCircuit &c, const BooleanOracle &g);
/// <phi| A [|xi><chi| (x) I] B |psi>.
Amplitude partial_projected(const CtState &phi, const EcsOperator &a, const CtState &xi, const CtState &chi,
                            const EcsOperator &b, const CtState &psi);

}  // namespace wsim::reference
