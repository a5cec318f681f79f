// Copyright 2026 The fvie Authors.
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


#ifndef FVIE_FVIE_HPP
#define FVIE_FVIE_HPP

#include <fvie/bounds.hpp>
#include <fvie/csv.hpp>
#include <fvie/error.hpp>
#include <fvie/expr.hpp>
#include <fvie/fuzzy_number.hpp>
#include <fvie/grid_function.hpp>
#include <fvie/problem.hpp>
#include <fvie/problem_file.hpp>
#include <fvie/report.hpp>
#include <fvie/solver.hpp>

#endif // FVIE_FVIE_HPP
