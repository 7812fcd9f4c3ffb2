#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace girp {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A response value is outside the domain of the loss (e.g. a != +-1 for
// logistic/hinge), or extended-real arithmetic hit -inf + inf.
class DomainError : public Error {
 public:
  using Error::Error;
};

class EmptySubset : public Error {
 public:
  EmptySubset() : Error("operation requires a nonempty subset") {}
};

class CycleError : public Error {
 public:
  explicit CycleError(std::vector<int> cycle);
  const std::vector<int>& cycle() const noexcept { return cycle_; }

 private:
  std::vector<int> cycle_;
};

// The summed loss has no minimizer on the subset (separable logistic data).
class NoMinimizer : public Error {
 public:
  explicit NoMinimizer(std::vector<int> subset = {});
  const std::vector<int>& subset() const noexcept { return subset_; }

 private:
  std::vector<int> subset_;
};

class DuplicatePoint : public Error {
 public:
  DuplicatePoint(int first, int second);
  int first, second;
};

class TooLarge : public Error {
 public:
  using Error::Error;
};

class NotAChain : public Error {
 public:
  NotAChain() : Error("partial order is not a total order") {}
};

class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace girp
