#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "mema/automata.hpp"
#include "mema/membership.hpp"

namespace mema {

/// Automaton JSON document: {"formalism": "nu"|"lama"|"hra", "states": [...],
/// "initial": ..., "final": [...], "initial_memory": {...}, formalism-specific
/// variable and transition fields}. Unknown fields raise ParseError with the
/// offending path.
nlohmann::json automaton_to_json(const Automaton& a);
Automaton automaton_from_json(const nlohmann::json& j);

/// Run document: array alternating {"state":..., "memory":{...}} and
/// {"transition_index": k, "letter": text|null} objects.
nlohmann::json run_to_json(const Automaton& a, const Run& run);
Run run_from_json(const Automaton& a, const nlohmann::json& j);

/// Plain structural DOT dump.
std::string to_dot(const Automaton& a);

/// Parses one automaton document from a stream (ParseError on malformed JSON).
Automaton read_automaton(std::istream& in);

} // namespace mema
