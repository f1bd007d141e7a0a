#pragma once

#include <stdexcept>
#include <string>

namespace invx {

// Bad inputs: unknown labels, malformed descriptors, violated preconditions.
// The CLI maps these to exit code 2.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Negative mathematical outcomes (an ideal that cannot be factored, a model
// that fails a required property). The CLI maps these to exit code 1.
struct VerdictError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct UnknownPrime : InputError {
  explicit UnknownPrime(const std::string& label)
      : InputError("unknown prime: " + label) {}
};

struct UnknownPoint : InputError {
  explicit UnknownPoint(const std::string& what)
      : InputError("unknown point: " + what) {}
};

struct MalformedDescriptor : InputError {
  explicit MalformedDescriptor(const std::string& what)
      : InputError("malformed descriptor: " + what) {}
};

struct BackendMismatch : InputError {
  BackendMismatch() : InputError("operands live on different spaces") {}
};

struct SpectrumMismatch : InputError {
  SpectrumMismatch() : InputError("ideals live on different spectra") {}
};

struct RankZero : InputError {
  RankZero() : InputError("space is discrete; no limit points to derive") {}
};

struct NotMaximal : InputError {
  explicit NotMaximal(const std::string& label)
      : InputError("prime is not maximal: " + label) {}
};

struct NotSplitting : InputError {
  NotSplitting() : InputError("set is not a splitting set (not closed under specialization)") {}
};

struct MIsMinimal : InputError {
  explicit MIsMinimal(const std::string& label)
      : InputError("maximal ideal is minimal over the ideal: " + label) {}
};

struct MNotInSupport : InputError {
  explicit MNotInSupport(const std::string& label)
      : InputError("maximal ideal does not contain the ideal: " + label) {}
};

struct NotPrime : InputError {
  explicit NotPrime(long long p)
      : InputError("not a prime number: " + std::to_string(p)) {}
};

struct RadicalNotFinitelyGenerated : VerdictError {
  RadicalNotFinitelyGenerated()
      : VerdictError("radical is not finitely generated: cozero closure is not open") {}
};

struct NotContinuous : VerdictError {
  NotContinuous()
      : VerdictError("ideal function is not continuous: no radical factorization") {}
};

struct NoSection : InputError {
  NoSection() : InputError("model declares no section lifts for this layer") {}
};

struct MembershipRequired : InputError {
  MembershipRequired()
      : InputError("operation requires a membership certificate for the input") {}
};

struct DescriptorOverflow : InputError {
  DescriptorOverflow()
      : InputError("descriptor operation would materialize too many exceptions") {}
};

struct UnsupportedRestriction : InputError {
  explicit UnsupportedRestriction(const std::string& what)
      : InputError("cannot restrict to this closed set: " + what) {}
};

struct CoherenceError : std::logic_error {
  CoherenceError()
      : std::logic_error("chain re-encoding disagrees on a shared prefix") {}
};

}  // namespace invx
