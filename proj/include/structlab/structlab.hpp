// Copyright 2026 The structlab Authors
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


// Umbrella header for the whole library.

#pragma once

#include "structlab/combine.hpp"
#include "structlab/corpus.hpp"
#include "structlab/error.hpp"
#include "structlab/evaluate.hpp"
#include "structlab/formula.hpp"
#include "structlab/indices.hpp"
#include "structlab/property_rule.hpp"
#include "structlab/regularize.hpp"
#include "structlab/sigalgebra.hpp"
#include "structlab/structure.hpp"
#include "structlab/structure_io.hpp"
#include "structlab/symmetry.hpp"
#include "structlab/types.hpp"
