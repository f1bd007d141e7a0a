#include "invx/finite_tree.hpp"

#include <algorithm>
#include <deque>

namespace invx {

FiniteTreeSpectrum::FiniteTreeSpectrum(std::vector<PrimeId> nodes,
                                       std::map<PrimeId, PrimeId> parent)
    : nodes_(std::move(nodes)), parent_(std::move(parent)) {
  if (nodes_.empty()) throw InputError("spectrum must have at least one prime");
  for (size_t i = 0; i < nodes_.size(); ++i) {
    if (!index_.emplace(nodes_[i], static_cast<int>(i)).second)
      throw InputError("duplicate prime label: " + nodes_[i]);
  }
  std::vector<PrimeId> roots;
  for (const auto& n : nodes_) {
    auto it = parent_.find(n);
    if (it == parent_.end()) {
      roots.push_back(n);
    } else if (!index_.count(it->second)) {
      throw UnknownPrime(it->second);
    }
  }
  for (const auto& [child, par] : parent_) {
    if (!index_.count(child)) throw UnknownPrime(child);
    children_[par].push_back(child);
  }
  if (roots.size() != 1)
    throw InputError("spectrum must have exactly one minimal prime, found " +
                     std::to_string(roots.size()));
  root_ = roots[0];

  // Heights via walk from the root; detects unreachable nodes and cycles.
  height_[root_] = 0;
  std::deque<PrimeId> queue{root_};
  while (!queue.empty()) {
    PrimeId p = queue.front();
    queue.pop_front();
    auto it = children_.find(p);
    if (it == children_.end()) continue;
    for (const auto& c : it->second) {
      height_[c] = height_[p] + 1;
      dim_ = std::max(dim_, height_[c]);
      queue.push_back(c);
    }
  }
  if (height_.size() != nodes_.size())
    throw InputError("parent map has a cycle or an unreachable prime");
  for (auto& [p, cs] : children_) std::sort(cs.begin(), cs.end());
}

FiniteTreeSpectrum FiniteTreeSpectrum::single_point(PrimeId root_label) {
  return FiniteTreeSpectrum({std::move(root_label)}, {});
}

std::optional<PrimeId> FiniteTreeSpectrum::parent(const PrimeId& p) const {
  require_known(p);
  auto it = parent_.find(p);
  if (it == parent_.end()) return std::nullopt;
  return it->second;
}

const std::vector<PrimeId>& FiniteTreeSpectrum::children(const PrimeId& p) const {
  require_known(p);
  static const std::vector<PrimeId> kEmpty;
  auto it = children_.find(p);
  return it == children_.end() ? kEmpty : it->second;
}

int FiniteTreeSpectrum::height(const PrimeId& p) const {
  require_known(p);
  return height_.at(p);
}

bool FiniteTreeSpectrum::is_maximal(const PrimeId& p) const {
  return children(p).empty();
}

std::vector<PrimeId> FiniteTreeSpectrum::maximal_points() const {
  std::vector<PrimeId> out;
  for (const auto& n : nodes_)
    if (is_maximal(n)) out.push_back(n);
  return out;
}

std::vector<PrimeId> FiniteTreeSpectrum::chain_to(const PrimeId& m) const {
  require_known(m);
  std::vector<PrimeId> chain;
  PrimeId cur = m;
  while (cur != root_) {
    chain.push_back(cur);
    cur = parent_.at(cur);
  }
  std::reverse(chain.begin(), chain.end());
  return chain;
}

std::vector<PrimeId> FiniteTreeSpectrum::nonzero_primes() const {
  std::vector<PrimeId> out;
  for (const auto& n : nodes_)
    if (n != root_) out.push_back(n);
  return out;
}

void FiniteTreeSpectrum::require_known(const PrimeId& p) const {
  if (!has(p)) throw UnknownPrime(p);
}

void FiniteTreeSpectrum::require_known(const PrimeSet& s) const {
  for (const auto& p : s) require_known(p);
}

PrimeSet FiniteTreeSpectrum::up_closure(const PrimeSet& s) const {
  require_known(s);
  PrimeSet out = s;
  std::deque<PrimeId> queue(s.begin(), s.end());
  while (!queue.empty()) {
    PrimeId p = queue.front();
    queue.pop_front();
    for (const auto& c : children(p))
      if (out.insert(c).second) queue.push_back(c);
  }
  return out;
}

PrimeSet FiniteTreeSpectrum::down_closure(const PrimeSet& s) const {
  require_known(s);
  PrimeSet out;
  for (const auto& p : s) {
    PrimeId cur = p;
    while (out.insert(cur).second && cur != root_) cur = parent_.at(cur);
  }
  return out;
}

bool FiniteTreeSpectrum::is_up_closed(const PrimeSet& s) const {
  return up_closure(s) == s;
}

bool FiniteTreeSpectrum::is_down_closed(const PrimeSet& s) const {
  return down_closure(s) == s;
}

SplittingReport is_splitting_set(const FiniteTreeSpectrum& spec,
                                 const PrimeSet& x) {
  spec.require_known(x);
  SplittingReport r;
  r.splitting = spec.is_up_closed(x);

  PrimeSet complement;
  for (const auto& n : spec.nodes())
    if (!x.count(n)) complement.insert(n);

  // (i) is vacuous on a finite spectrum.
  r.complement_compact = true;
  // (ii) X open in the inverse topology = complement closed under generization.
  r.inverse_open = spec.is_down_closed(complement);
  // (iii) the primes surviving in the transform are the inverse closure of
  // the complement; none of them may lie in X.
  PrimeSet survivors = spec.down_closure(complement);
  r.transform_kills_x = true;
  for (const auto& p : x)
    if (survivors.count(p)) r.transform_kills_x = false;

  r.conditions_agree = (r.inverse_open == r.splitting) &&
                       (r.transform_kills_x == r.splitting);
  return r;
}

PrimeSet inverse_closure(const FiniteTreeSpectrum& spec, const PrimeSet& s) {
  return spec.down_closure(s);
}

}  // namespace invx
