#pragma once

#include <iosfwd>
#include <string>

#include "kc/circuit.hpp"
#include "kc/transforms.hpp"

namespace kc {

// Circuit text format:
//   afbdd <numNodes> <rootId>
//   v <name> <id>            one per variable, before any node line
//   scope <name>...          optional; defaults to every declared variable
//   D <id> <var> <lowId> <highId>     var given by name or numeric id
//   A <id> <leftId> <rightId>
//   S <id> <0|1>
// '#' starts a comment.

/// Parses without checking circuit invariants (see build_circuit).
/// Throws ParseError.
CircuitDescription read_circuit_description(std::istream& in);
/// read_circuit_description followed by build_circuit.
Circuit read_circuit(std::istream& in);
void write_circuit(std::ostream& out, const Circuit& z);

void write_circuit_dot(std::ostream& out, const Circuit& z);

/// {"steps":[{"andNode":..,"case":..}],"sizeBefore":..,"sizeAfter":..}
std::string trace_to_json(const TransformTrace& trace);

}  // namespace kc
