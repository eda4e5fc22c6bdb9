// SPDX-License-Identifier: Apache-2.0
//
// rdars-mimo: statistical-CSI transceiver design for RDARS-aided massive MIMO
// Copyright (C) 2026 The rdars-mimo authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

// Umbrella header.

#ifndef RDARS_RDARS_HPP
#define RDARS_RDARS_HPP

#include "rdars/analytic_rate.hpp"
#include "rdars/channel.hpp"
#include "rdars/config_io.hpp"
#include "rdars/couplings.hpp"
#include "rdars/estimation.hpp"
#include "rdars/experiments.hpp"
#include "rdars/fp_bcd.hpp"
#include "rdars/fp_objective.hpp"
#include "rdars/lambda_max.hpp"
#include "rdars/mc_oracle.hpp"
#include "rdars/phase_coefficients.hpp"
#include "rdars/phase_mm.hpp"
#include "rdars/phase_rga.hpp"
#include "rdars/regression.hpp"
#include "rdars/scenario.hpp"
#include "rdars/steering.hpp"
#include "rdars/types.hpp"

#endif  // RDARS_RDARS_HPP
