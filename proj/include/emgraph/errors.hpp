#pragma once

#include <stdexcept>
#include <string>

namespace emgraph {

struct NotInvertible : std::domain_error {
  using std::domain_error::domain_error;
};
struct ModuliNotCoprime : std::domain_error {
  using std::domain_error::domain_error;
};
struct TupleTooLong : std::length_error {
  using std::length_error::length_error;
};
struct InvalidTuple : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct NotSquarefree : std::domain_error {
  using std::domain_error::domain_error;
};
struct IncompleteFactorization : std::domain_error {
  using std::domain_error::domain_error;
};
struct TooManyFactors : std::length_error {
  using std::length_error::length_error;
};
struct BlockCongruenceFailed : std::domain_error {
  using std::domain_error::domain_error;
};
struct FormatError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace emgraph
