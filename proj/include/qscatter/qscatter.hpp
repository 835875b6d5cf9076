// Copyright 2026 The qscatter Authors
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

#include "qscatter/circuit.hpp"
#include "qscatter/error.hpp"
#include "qscatter/linalg.hpp"
#include "qscatter/phasespace.hpp"
#include "qscatter/random.hpp"
#include "qscatter/scattering.hpp"
#include "qscatter/spectrometer.hpp"
#include "qscatter/states.hpp"
#include "qscatter/synthesis.hpp"
