#pragma once

#include <string>

#include "agentminer/petri_net.hpp"

namespace am {

/// PNML serialization. Transition labels are written as <name> text; silent
/// transitions carry a toolspecific "invisible" flag. The initial place is
/// marked with an initialMarking of one token.
std::string to_pnml(const WorkflowNet& wfnet);
void write_pnml(const WorkflowNet& wfnet, const std::string& path);

/// Reads a net written by write_pnml (or a compatible subset: place,
/// transition and arc elements with optional names and invisible flags).
/// Initial/final places fall back to the unique source/sink place when no
/// initial marking is present.
WorkflowNet read_pnml(const std::string& path);

/// Graphviz rendering: places as circles, observable transitions as labeled
/// boxes, silent transitions as filled boxes.
std::string to_dot(const WorkflowNet& wfnet, const std::string& graph_name = "net");
void write_dot(const WorkflowNet& wfnet, const std::string& path,
               const std::string& graph_name = "net");

}  // namespace am
