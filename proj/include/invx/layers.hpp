#pragma once

#include <string>

#include "invx/eideal.hpp"
#include "invx/spaces.hpp"

namespace invx {

/// A compactly layered presentation of the spectrum: a descending chain of
/// inverse-closed sets, each peeling off only maximal points of the previous
/// layer, ending in the empty set.
struct LayerSequence {
  std::vector<PrimeSet> layers;  // Y_0 = all nodes, ..., last = empty
};

/// Coheight layering: Y_i = primes of height at most dim - i.
LayerSequence layer_sequence(const FiniteTreeSpectrum& spec);

/// Checks the layer axioms for an arbitrary candidate sequence.
bool is_layer_sequence(const FiniteTreeSpectrum& spec, const LayerSequence& s);

struct CsdLayer {
  PrimeSet peeled;  // X_alpha = Y_alpha minus Y_{alpha+1}
  long long rank = 0;
  std::string transformed_root;
  long long transformed_size = 0;
};

/// Decomposition of the invertible-ideal group along the layer sequence:
/// iterated transforms, one free summand per layer.
struct CsdDecomposition {
  std::vector<CsdLayer> layers;
  long long total_rank = 0;
};

CsdDecomposition csd_decompose(
    const std::shared_ptr<const FiniteTreeSpectrum>& spec);

/// The integer-valued-polynomial model over a discrete valuation ring at
/// finite precision: the abstract 4-layer spectrum with the unitary maximal
/// layer instantiated as the depth-precision ball space.
struct IntVModel {
  std::vector<std::string> layer_descriptions;  // Y_0 .. Y_3
  BallSpace unitary_space;
  long long unitary_rank = 0;        // p^depth at this precision
  std::string nonunitary_label;      // abstract free part, not computed
};

IntVModel int_v_model(long long p, int depth);

}  // namespace invx
