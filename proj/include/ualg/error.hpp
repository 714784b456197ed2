#pragma once

#include <algorithm>
#include <chrono>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace ualg {

  //! Raised for malformed input: bad tables, unknown symbols, broken
  //! preconditions supplied by the caller.
  class InputError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
  };

  //! Raised when a computation would materialize more than the configured
  //! universe cap. Searches that can return a partial answer never throw
  //! this; they report an incomplete outcome instead.
  class BudgetExceeded : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
  };

  //! An internal consistency check failed. Always a bug.
  class InvariantViolation : public std::logic_error {
   public:
    using std::logic_error::logic_error;
  };

  //! Default upper bound on the number of elements of any materialized
  //! universe (direct powers, function domains).
  inline constexpr std::size_t kDefaultUniverseCap = std::size_t{1} << 20;

  //! Resource limits for closure computations.
  //!
  //! `max_elements` bounds the number of distinct members a closure may
  //! collect and `max_rounds` the number of frontier rounds. The optional
  //! deadline turns wall-clock exhaustion into the same "incomplete" outcome.
  struct ClosureBudget {
    std::size_t max_elements = 4'000'000;
    std::size_t max_rounds   = 10'000;
    std::optional<std::chrono::steady_clock::time_point> deadline;

    static ClosureBudget with_seconds(double seconds) {
      ClosureBudget b;
      b.deadline = std::chrono::steady_clock::now()
                   + std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                       std::chrono::duration<double>(seconds));
      return b;
    }

    //! A copy whose deadline is at most `seconds` from now.
    [[nodiscard]] ClosureBudget slice(double seconds) const {
      ClosureBudget b = *this;
      auto          t = with_seconds(seconds).deadline;
      b.deadline      = deadline ? std::min(*deadline, *t) : t;
      return b;
    }

    [[nodiscard]] bool expired() const {
      return deadline && std::chrono::steady_clock::now() > *deadline;
    }

    void validate() const {
      if (max_elements == 0 || max_rounds == 0) {
        throw InputError("closure budget limits must be positive");
      }
    }
  };

  //! Three-valued outcome of a budgeted search.
  enum class Verdict { yes, no, unknown };

  inline char const* to_string(Verdict v) {
    switch (v) {
      case Verdict::yes: return "yes";
      case Verdict::no: return "no";
      default: return "unknown";
    }
  }

}  // namespace ualg
