// Copyright 2026 The treeglass Authors
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

#ifndef TREEGLASS_TREEGLASS_HPP
#define TREEGLASS_TREEGLASS_HPP

#include "treeglass/aggregate.hpp"
#include "treeglass/core.hpp"
#include "treeglass/encoders.hpp"
#include "treeglass/gbdt.hpp"
#include "treeglass/pipeline.hpp"
#include "treeglass/report.hpp"
#include "treeglass/rules.hpp"
#include "treeglass/shapley.hpp"
#include "treeglass/tabular.hpp"

#endif  // TREEGLASS_TREEGLASS_HPP
