#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace rfc {

// Status values shared with the C API and the CLI exit codes.
enum class Status : int {
  ok = 0,
  verify_failed = 1,
  budget_exhausted = 2,
  input_error = 3,
  internal_error = 4,
};

class Error : public std::runtime_error {
public:
  Error(Status s, const std::string& msg) : std::runtime_error(msg), status_(s) {}
  Status status() const { return status_; }

private:
  Status status_;
};

[[noreturn]] inline void fail_input(const std::string& msg) {
  throw Error(Status::input_error, msg);
}

[[noreturn]] inline void fail_budget(const std::string& msg) {
  throw Error(Status::budget_exhausted, msg);
}

[[noreturn]] inline void fail_internal(const std::string& msg) {
  throw Error(Status::internal_error, msg);
}

// Search and enumeration budget. `candidates` counts candidate objects tried
// by search loops (homomorphism schedules, subgroup searches); `max_cosets`
// caps coset table rows during enumeration.
struct Budget {
  std::uint64_t candidates = 1000000;
  std::uint64_t max_cosets = 100000;
};

// Running counter checked against a Budget.
class BudgetMeter {
public:
  explicit BudgetMeter(const Budget& b) : budget_(b) {}

  void spend(std::uint64_t n, const char* where) {
    used_ += n;
    if (used_ > budget_.candidates) {
      fail_budget(std::string("search budget exhausted in ") + where + " after " +
                  std::to_string(used_ - n) + " candidates");
    }
  }

  std::uint64_t used() const { return used_; }
  const Budget& limits() const { return budget_; }

private:
  Budget budget_;
  std::uint64_t used_ = 0;
};

}  // namespace rfc
