// Copyright 2026 The qtrade Authors
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

#ifndef QTRADE_CLI_H_
#define QTRADE_CLI_H_

#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"
#include "qtrade/game.h"
#include "qtrade/lab.h"
#include "qtrade/protocols.h"
#include "qtrade/referee.h"

namespace qtrade {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitValidation = 3;
inline constexpr int kExitIo = 4;

// Runs one command. `args` excludes the program name. Results go to `out` as
// a single JSON document; failures print one JSON line to `err` and return
// kExitUsage, kExitValidation or kExitIo.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

// "<name>" for a built-in game or "@path" for a game file. `params` feeds
// parametrized games such as hawk_dove.
NormalFormGame resolve_game(const std::string& ref,
                            const std::vector<double>& params = {});

// Serializers shared by the command handlers; printing dump_json of these
// reproduces the command output byte for byte.
nlohmann::json pure_nash_json(const NormalFormGame& game);
nlohmann::json mixed_nash_json(const MixedNashResult& result);
nlohmann::json correlated_json(const NormalFormGame& game,
                               const RefereeDistribution& dist,
                               const CorrelatedVerdict& verdict);
nlohmann::json dominant_json(const NormalFormGame& game);
nlohmann::json protocol_json(const OutcomeDistribution& dist,
                             const std::vector<double>& payoffs);
nlohmann::json sweep_json(const SweepResult& result);

}  // namespace qtrade

#endif  // QTRADE_CLI_H_
