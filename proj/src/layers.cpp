#include "invx/layers.hpp"

#include <algorithm>

namespace invx {

LayerSequence layer_sequence(const FiniteTreeSpectrum& spec) {
  LayerSequence out;
  int d = spec.dim();
  for (int i = 0; i <= d + 1; ++i) {
    PrimeSet layer;
    for (const auto& p : spec.nodes())
      if (spec.height(p) <= d - i) layer.insert(p);
    out.layers.push_back(std::move(layer));
  }
  if (!is_layer_sequence(spec, out))
    throw std::logic_error("coheight layering violates the layer axioms");
  return out;
}

bool is_layer_sequence(const FiniteTreeSpectrum& spec, const LayerSequence& s) {
  const auto& layers = s.layers;
  if (layers.empty()) return false;
  if (layers.front().size() != spec.nodes().size()) return false;
  if (!layers.back().empty()) return false;
  for (size_t a = 0; a + 1 < layers.size(); ++a) {
    const PrimeSet& cur = layers[a];
    const PrimeSet& next = layers[a + 1];
    if (!std::includes(cur.begin(), cur.end(), next.begin(), next.end()))
      return false;
    if (!spec.is_down_closed(cur)) return false;
    // peeled points must be maximal within the layer
    for (const auto& p : cur) {
      if (next.count(p)) continue;
      for (const auto& c : spec.children(p))
        if (cur.count(c)) return false;
    }
  }
  return true;
}

CsdDecomposition csd_decompose(
    const std::shared_ptr<const FiniteTreeSpectrum>& spec) {
  CsdDecomposition out;
  LayerSequence seq = layer_sequence(*spec);
  std::shared_ptr<const FiniteTreeSpectrum> cur = spec;
  long long total = 0;
  for (size_t a = 0; a + 1 < seq.layers.size(); ++a) {
    CsdLayer layer;
    for (const auto& p : seq.layers[a])
      if (!seq.layers[a + 1].count(p)) layer.peeled.insert(p);
    // rank of the support-in-peeled subgroup over the current transform
    for (const auto& p : cur->nonzero_primes()) {
      PrimeSet up = cur->up_closure({p});
      if (std::all_of(up.begin(), up.end(), [&](const PrimeId& q) {
            return layer.peeled.count(q) > 0;
          }))
        ++layer.rank;
    }
    layer.transformed_root = cur->root();
    layer.transformed_size = static_cast<long long>(cur->nodes().size());
    total += layer.rank;
    out.layers.push_back(std::move(layer));
    // peel the layer off: transform away the removed primes
    PrimeSet removed;
    for (const auto& p : cur->nodes())
      if (!seq.layers[a + 1].count(p)) removed.insert(p);
    cur = nagata_transform(cur, removed).spectrum;
  }
  out.total_rank = total;
  if (total != static_cast<long long>(spec->nonzero_primes().size()))
    throw std::logic_error("layer ranks do not add up to the prime count");
  return out;
}

IntVModel int_v_model(long long p, int depth) {
  if (p < 2) throw NotPrime(p);
  for (long long d = 2; d * d <= p; ++d)
    if (p % d == 0) throw NotPrime(p);
  if (depth < 0) throw InputError("depth must be >= 0");
  IntVModel out;
  out.layer_descriptions = {
      "Y0: all primes of the integer-valued polynomial ring",
      "Y1: primes lying over zero (the non-unitary part)",
      "Y2: the zero ideal",
      "Y3: empty",
  };
  out.unitary_space = BallSpace{p, depth};
  out.unitary_rank = out.unitary_space.leaf_count();
  out.nonunitary_label =
      "free group of the polynomial-ring part (not computed)";
  return out;
}

}  // namespace invx
