// Copyright 2026 The medcon Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MEDCON_MEDCON_H_
#define MEDCON_MEDCON_H_

#include "medcon/audit.h"
#include "medcon/error.h"
#include "medcon/format.h"
#include "medcon/graph.h"
#include "medcon/harness.h"
#include "medcon/io.h"
#include "medcon/oracle.h"
#include "medcon/random.h"
#include "medcon/solver.h"
#include "medcon/trace_checks.h"

#endif  // MEDCON_MEDCON_H_
