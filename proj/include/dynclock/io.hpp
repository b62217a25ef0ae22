#pragma once

#include <string>

#include "dynclock/engine.hpp"

namespace dynclock {

// Line-oriented schedule text: an "n=<count>" header, per-round blocks
// "round <t>: (i,j) (k,l) ..." listing the non-self-loop edges in order, and
// a "cycle:" line before the first repeating round. Blank lines and "#"
// comments are ignored; "init" lines are left to the init parser.
//
// Only prefix-cycle schedules serialize; an empty round block is a
// self-loops-only digraph.

std::string write_schedule(const DynamicGraph& dg);
DynamicGraph parse_schedule(const std::string& text);

// Init-vector section: one line per node.
//   init minmax 0: h=5 C=3 view=(2,0)(7,1)
//   init sap 0: C=3 M=2
//   init sap-fixed 0: C=3
std::string write_init(const InitialStates& init);
InitialStates parse_init(const std::string& text);

/// Line-delimited trace records with stable field ordering: a header record
/// carrying the execution parameters, one record per round, and a summary
/// record with the synchronization verdict. Verbosity 2 additionally dumps
/// full views on minmax rounds.
std::string write_trace(const ExecutionTrace& trace, int verbosity = 1);

}  // namespace dynclock
