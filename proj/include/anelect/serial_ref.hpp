#pragma once
#include "graph.hpp"
#include "views.hpp"

// Plain reference implementations of the two kernels that have tuned
// counterparts. Kept deliberately simple so disagreements point at the
// tuned code.
namespace anelect::serial {

Refinement refine(const PortGraph& g);
int diameter(const PortGraph& g);

}  // namespace anelect::serial
