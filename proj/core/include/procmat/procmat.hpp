// Copyright 2026 The procmat Authors
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

// Umbrella header.
#include "procmat/basis.hpp"
#include "procmat/effective.hpp"
#include "procmat/eigen.hpp"
#include "procmat/errors.hpp"
#include "procmat/games.hpp"
#include "procmat/hs_basis.hpp"
#include "procmat/instruments.hpp"
#include "procmat/matrix.hpp"
#include "procmat/process.hpp"
#include "procmat/separability.hpp"
#include "procmat/tensor.hpp"
