// Copyright 2026 The qconf Authors
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

#ifndef QCONF_QCONF_HPP
#define QCONF_QCONF_HPP

// Umbrella header: the whole library.

#include "qconf/adversary.hpp"
#include "qconf/channels.hpp"
#include "qconf/codec.hpp"
#include "qconf/config.hpp"
#include "qconf/errors.hpp"
#include "qconf/events.hpp"
#include "qconf/keysource.hpp"
#include "qconf/protocols.hpp"
#include "qconf/qsim.hpp"
#include "qconf/reference_tables.hpp"
#include "qconf/rng.hpp"
#include "qconf/stats.hpp"
#include "qconf/transcript.hpp"
#include "qconf/types.hpp"

#endif  // QCONF_QCONF_HPP
