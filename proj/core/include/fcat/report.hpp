#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace fcat {

/// A single failed check, with a human-readable witness.
struct Issue {
  std::string check;
  std::string witness;
};

/// Collection of failed checks. An empty report means every check passed.
class Report {
 public:
  void add(std::string check, std::string witness) {
    issues_.push_back({std::move(check), std::move(witness)});
  }
  void merge(const Report& other, const std::string& prefix = {}) {
    for (const auto& i : other.issues_)
      issues_.push_back({prefix.empty() ? i.check : prefix + "/" + i.check, i.witness});
  }

  bool ok() const { return issues_.empty(); }
  bool has(const std::string& check) const {
    for (const auto& i : issues_)
      if (i.check == check) return true;
    return false;
  }
  /// First witness recorded for `check`, or empty.
  std::string witness(const std::string& check) const {
    for (const auto& i : issues_)
      if (i.check == check) return i.witness;
    return {};
  }
  const std::vector<Issue>& issues() const { return issues_; }
  std::string summary() const;

 private:
  std::vector<Issue> issues_;
};

/// Base error for precondition violations and malformed input.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when a structure fails validation; carries the failing report.
class ValidationError : public Error {
 public:
  ValidationError(const std::string& what, Report report)
      : Error(what + ": " + report.summary()), report_(std::move(report)) {}
  const Report& report() const { return report_; }

 private:
  Report report_;
};

inline std::string Report::summary() const {
  if (issues_.empty()) return "ok";
  std::string s;
  for (const auto& i : issues_) {
    if (!s.empty()) s += "; ";
    s += i.check + " (" + i.witness + ")";
  }
  return s;
}

}  // namespace fcat
