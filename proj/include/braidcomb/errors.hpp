#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace braidcomb {

// Base class for every domain error thrown by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A generator index pair that violates 1 <= i < j, or a letter outside the
// generator set of the surface it is used with.
class InvalidLetter : public Error {
 public:
  using Error::Error;
};

// Attempt to rewrite a pair of letters whose second indices are not in the
// order required by the conjugation table.
class NotSwappable : public Error {
 public:
  using Error::Error;
};

class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& what, std::size_t position)
      : Error(what + " (at position " + std::to_string(position) + ")"),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

// An exponential-path operation ran past its caller-supplied work budget.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

// Decompression refused: the exact evaluation length exceeds the cap.
// The length is carried as a decimal string since it routinely overflows
// 64 bits.
class TooLong : public Error {
 public:
  explicit TooLong(std::string exact_length)
      : Error("evaluation length " + exact_length + " exceeds the cap"),
        exact_length_(std::move(exact_length)) {}

  const std::string& exact_length() const noexcept { return exact_length_; }

 private:
  std::string exact_length_;
};

class AlphabetMismatch : public Error {
 public:
  using Error::Error;
};

// A letter that moves the first strand appeared where only kernel
// generators (second index >= j_2) are allowed.
class NotKernel : public Error {
 public:
  using Error::Error;
};

// The relator-replacement loop could not find a half-relator subword in a
// nonempty word that still has to be eliminated.
class ReductionStuck : public Error {
 public:
  using Error::Error;
};

}  // namespace braidcomb
