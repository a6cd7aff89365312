// Copyright 2026 The TernaryLab Authors
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

#ifndef TERNARYLAB_ATTACKS_HPP_
#define TERNARYLAB_ATTACKS_HPP_

#include <vector>

#include "ternarylab/compressors.hpp"

namespace ternarylab {

// Byzantine gradient fabrication. Every attack returns a gradient estimate
// that the simulator then clips and compresses exactly like an honest
// message, so the server only ever receives well-formed messages. Attackers
// compress with magnitude A = c and add no mini-batch noise.

// Negates the true global gradient (the attacker is granted oracle access).
Gradient attack_blind(const Gradient& true_grad);

// Negates the attacker's own honestly computed mini-batch gradient.
Gradient attack_flip_sign(const Gradient& own_grad);

// Returns -scale * (mean gradient of the honest workers this round).
Gradient attack_foe(const Gradient& honest_mean, double scale);

// Shifts the honest mean by a calibrated multiple of the honest per-
// coordinate standard deviation: mu_i - z * sigma_i with
// z = Phi^{-1}((n - f - s) / (n - f)), s = floor(n/2) + 1 - f, where n is
// the total worker count and f the byzantine count. sigma uses the
// population (divide-by-n) convention. Requires >= 2 honest gradients.
Gradient attack_lie(const std::vector<Gradient>& honest_grads, int total,
                    int byzantine);

}  // namespace ternarylab

#endif  // TERNARYLAB_ATTACKS_HPP_
