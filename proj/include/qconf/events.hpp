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

#ifndef QCONF_EVENTS_HPP
#define QCONF_EVENTS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

namespace qconf {

using json = nlohmann::ordered_json;

/// Who can observe an event.
///
/// `public_` covers the authenticated classical broadcast channel, `quantum` the
/// fact that qubits travelled over a link (their states are not part of the
/// event), `private_` local bookkeeping of one party, and `adversary` actions
/// the eavesdropper took. Anything tagged public, quantum or adversary is
/// treated as eavesdropper-visible.
enum class Visibility : std::uint8_t { public_, quantum, private_, adversary };

inline const char *visibility_name(Visibility v) {
    switch (v) {
        case Visibility::public_:
            return "public";
        case Visibility::quantum:
            return "quantum";
        case Visibility::private_:
            return "private";
        case Visibility::adversary:
            return "adversary";
    }
    return "?";
}

inline bool adversary_visible(Visibility v) {
    return v != Visibility::private_;
}

struct Event {
    std::uint64_t seq = 0;
    std::string stage;
    std::string kind;
    std::string from;
    std::string to;
    Visibility visibility = Visibility::public_;
    json data = json::object();

    json to_json() const {
        return json{{"seq", seq},         {"stage", stage}, {"kind", kind}, {"from", from}, {"to", to},
                    {"visibility", visibility_name(visibility)}, {"data", data}};
    }
};

/// Append-only, totally ordered record of everything that happens in a run.
class EventLog {
   public:
    const Event &emit(std::string stage, std::string kind, std::string from, std::string to, Visibility visibility,
                      json data = json::object()) {
        Event e;
        e.seq = events_.size();
        e.stage = std::move(stage);
        e.kind = std::move(kind);
        e.from = std::move(from);
        e.to = std::move(to);
        e.visibility = visibility;
        e.data = std::move(data);
        events_.push_back(std::move(e));
        return events_.back();
    }

    const std::vector<Event> &events() const {
        return events_;
    }

    std::vector<Event> release() {
        return std::move(events_);
    }

   private:
    std::vector<Event> events_;
};

}  // namespace qconf

#endif  // QCONF_EVENTS_HPP
