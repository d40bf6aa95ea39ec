// Copyright 2026 The solvcirc Authors
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

#include "solvcirc/channel.hpp"
#include "solvcirc/errors.hpp"
#include "solvcirc/evolve.hpp"
#include "solvcirc/gates.hpp"
#include "solvcirc/io.hpp"
#include "solvcirc/mps.hpp"
#include "solvcirc/numerics.hpp"
#include "solvcirc/oracle.hpp"
#include "solvcirc/renyi.hpp"
#include "solvcirc/solvable.hpp"
#include "solvcirc/tensor.hpp"
