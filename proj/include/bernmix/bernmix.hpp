// Copyright 2026 The bernmix Authors
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

#ifndef BERNMIX_BERNMIX_HPP
#define BERNMIX_BERNMIX_HPP

#include "bernmix/basis.hpp"
#include "bernmix/bernstein_operator.hpp"
#include "bernmix/beta.hpp"
#include "bernmix/dataset.hpp"
#include "bernmix/degree.hpp"
#include "bernmix/degree_select.hpp"
#include "bernmix/divergence.hpp"
#include "bernmix/em.hpp"
#include "bernmix/errors.hpp"
#include "bernmix/io.hpp"
#include "bernmix/model.hpp"
#include "bernmix/quadrature.hpp"
#include "bernmix/rng.hpp"
#include "bernmix/simbench.hpp"
#include "bernmix/simplex.hpp"
#include "bernmix/support.hpp"
#include "bernmix/version.hpp"

#endif  // BERNMIX_BERNMIX_HPP
