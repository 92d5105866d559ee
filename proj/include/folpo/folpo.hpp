// Copyright 2026 The folpo Authors
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

#include "folpo/clausify.hpp"
#include "folpo/cnf.hpp"
#include "folpo/dataset.hpp"
#include "folpo/eval.hpp"
#include "folpo/external.hpp"
#include "folpo/fol_story.hpp"
#include "folpo/gen.hpp"
#include "folpo/hash.hpp"
#include "folpo/label.hpp"
#include "folpo/lint.hpp"
#include "folpo/parallel.hpp"
#include "folpo/prover.hpp"
#include "folpo/rng.hpp"
#include "folpo/story.hpp"
#include "folpo/syntax/alpha.hpp"
#include "folpo/syntax/ast.hpp"
#include "folpo/syntax/parser.hpp"
#include "folpo/syntax/printer.hpp"
#include "folpo/unify.hpp"
