//------------------------------------------------------------------------------
//
//   Copyright 2026 The sportscast Authors
//
//   Licensed under the Apache License, Version 2.0 (the "License");
//   you may not use this file except in compliance with the License.
//   You may obtain a copy of the License at
//
//       http://www.apache.org/licenses/LICENSE-2.0
//
//   Unless required by applicable law or agreed to in writing, software
//   distributed under the License is distributed on an "AS IS" BASIS,
//   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//   See the License for the specific language governing permissions and
//   limitations under the License.
//
//------------------------------------------------------------------------------

#pragma once

#include "sportscast/audience.hpp"
#include "sportscast/axioms.hpp"
#include "sportscast/cancellation.hpp"
#include "sportscast/coop_game.hpp"
#include "sportscast/csv.hpp"
#include "sportscast/error.hpp"
#include "sportscast/fan_model.hpp"
#include "sportscast/random.hpp"
#include "sportscast/rules.hpp"
#include "sportscast/season.hpp"
#include "sportscast/voting.hpp"
