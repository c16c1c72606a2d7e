// Copyright 2026 The qkdcd Authors
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

#include <stdexcept>
#include <string>

namespace qkdcd {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NonUnitaryError : Error {
  using Error::Error;
};
struct NoConvergenceError : Error {
  using Error::Error;
};
struct DimensionMismatchError : Error {
  using Error::Error;
};
struct DependentSeedError : Error {
  using Error::Error;
};
struct UnknownEncodingError : Error {
  using Error::Error;
};
struct OddQubitCountError : Error {
  using Error::Error;
};
struct RecipeInfeasibleError : Error {
  using Error::Error;
};
struct NonUnitaryResultError : Error {
  using Error::Error;
};
struct BadPriorsError : Error {
  using Error::Error;
};
struct BadCountError : Error {
  using Error::Error;
};
struct ConfigError : Error {
  using Error::Error;
};
struct TooLargeError : Error {
  using Error::Error;
};

}  // namespace qkdcd
