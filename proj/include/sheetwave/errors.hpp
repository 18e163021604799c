#pragma once

#include <stdexcept>
#include <string>

namespace sheetwave {

/// Events that mark the edge of the admissible state set.  They are raised by
/// curve reconstruction and kernel evaluation, and continuation maps them to
/// branch outcomes instead of treating them as faults.
enum class DomainEvent {
  NotGraphlike,               // mean(cos theta) <= h_min
  SelfIntersecting,           // two curve nodes coincide (mod the period)
  InnerCurveSelfIntersecting, // same, for the curve built from Theta
  TooCloseToCurve,            // off-curve evaluation point on the sheet
};

const char* to_string(DomainEvent event);

class DomainError : public std::runtime_error {
 public:
  DomainError(DomainEvent event, const std::string& what)
      : std::runtime_error(what), event_(event) {}
  DomainEvent event() const noexcept { return event_; }

 private:
  DomainEvent event_;
};

/// Input to the inverse second derivative was not mean-zero.
class NonZeroMean : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Both densities zero; the Atwood number is undefined.
class BothDensitiesZero : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Eigenvector of the linearization has the speed in a denominator.
class ZeroSpeed : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace sheetwave
