#pragma once

#include <string>

#include "helstrom/family.hpp"
#include "helstrom/quantum.hpp"

namespace helstrom::svg {

// Standalone SVG 1.1 diagram of a family over a 2-dimensional state space:
// outline, states, conjugates, reference, construction lines, ratio label.
// Output is byte-identical for identical inputs.
std::string polytope_family_figure(const WeakHelstromFamily& family);

// Great-circle section of the Bloch ball through b1 and b2, with the spectral
// conjugates and reference of a generic binary result projected onto it.
std::string qubit_section_figure(const quantum::BlochVector& b1,
                                 const quantum::BlochVector& b2,
                                 const quantum::QuantumBinaryResult& result);

}  // namespace helstrom::svg
