#pragma once

#include <stdexcept>
#include <string>

namespace sl2lab {

// Bad argument to a total operation (inverse of zero, index out of range, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// The caller's input does not satisfy a lemma's hypotheses.
class HypothesisError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Two sets built over different primes were combined.
class ContextMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Something that a proved statement guarantees did not happen. Always a bug.
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// A computation hit a configured size or depth cap.
class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace sl2lab
