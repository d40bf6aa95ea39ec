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

#include <stdexcept>
#include <string>

namespace solvcirc {

// Every library failure derives from Error so callers (the CLI in
// particular) can map categories onto exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define SOLVCIRC_ERROR(Name)             \
  class Name : public Error {            \
   public:                               \
    using Error::Error;                  \
  };

SOLVCIRC_ERROR(ArgumentError)
SOLVCIRC_ERROR(ShapeError)
SOLVCIRC_ERROR(DimensionError)
SOLVCIRC_ERROR(CapacityError)
SOLVCIRC_ERROR(PreconditionError)
SOLVCIRC_ERROR(PositivityError)
SOLVCIRC_ERROR(DominanceError)
SOLVCIRC_ERROR(DriftError)
SOLVCIRC_ERROR(DegenerateInputError)

#undef SOLVCIRC_ERROR

}  // namespace solvcirc
