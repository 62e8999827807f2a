/*
 * Copyright 2026 The metlab Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once
#ifndef METLAB_METLAB_HPP
#define METLAB_METLAB_HPP

// Everything except io.hpp, which additionally needs nlohmann/json.

#include <metlab/constructions.hpp>
#include <metlab/distortion.hpp>
#include <metlab/errors.hpp>
#include <metlab/matrix.hpp>
#include <metlab/metric.hpp>
#include <metlab/search.hpp>
#include <metlab/solver.hpp>
#include <metlab/transforms.hpp>

#endif  // METLAB_METLAB_HPP
