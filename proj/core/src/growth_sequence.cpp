#include "specapprox/growth_sequence.hpp"

#include <cmath>

#include <fmt/format.h>

#include "specapprox/error.hpp"

namespace specapprox {

GrowthSequence GrowthSequence::factorial() { return {Kind::Factorial, 0.0, {}}; }

GrowthSequence GrowthSequence::gevrey(double beta) {
  if (!(beta > 0.0) || !std::isfinite(beta)) {
    throw ValidationError(fmt::format("gevrey sequence needs beta > 0, got {}", beta));
  }
  return {Kind::Gevrey, beta, {}};
}

GrowthSequence GrowthSequence::tabulated(const std::vector<double>& values) {
  std::vector<double> logs;
  logs.reserve(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!(values[i] > 0.0)) {
      throw ValidationError(fmt::format("tabulated sequence entry {} is not positive", i));
    }
    logs.push_back(std::log(values[i]));
  }
  return tabulated_log(std::move(logs));
}

GrowthSequence GrowthSequence::tabulated_log(std::vector<double> log_values) {
  if (log_values.empty()) {
    throw ValidationError("tabulated sequence is empty");
  }
  if (log_values.front() != 0.0) {
    throw ValidationError("tabulated sequence must start with m_0 = 1");
  }
  for (std::size_t i = 1; i < log_values.size(); ++i) {
    if (!std::isfinite(log_values[i])) {
      throw ValidationError(fmt::format("tabulated sequence entry {} is not finite", i));
    }
    if (log_values[i] < log_values[i - 1]) {
      throw ValidationError(fmt::format("tabulated sequence decreases at index {}", i));
    }
  }
  return {Kind::Tabulated, 0.0, std::move(log_values)};
}

double GrowthSequence::log_value(std::size_t n) const {
  switch (kind_) {
    case Kind::Factorial:
      return std::lgamma(static_cast<double>(n) + 1.0);
    case Kind::Gevrey: {
      if (n == 0) return 0.0;
      const auto x = static_cast<double>(n);
      return x * beta_ * std::log(x);
    }
    case Kind::Tabulated:
      if (n >= log_table_.size()) {
        throw ValidationError(
            fmt::format("index {} beyond tabulated sequence of length {}", n, log_table_.size()));
      }
      return log_table_[n];
  }
  return 0.0;
}

std::optional<std::size_t> GrowthSequence::length() const noexcept {
  if (kind_ == Kind::Tabulated) return log_table_.size();
  return std::nullopt;
}

bool GrowthSequence::has_index(std::size_t n) const noexcept {
  return kind_ != Kind::Tabulated || n < log_table_.size();
}

std::string GrowthSequence::describe() const {
  switch (kind_) {
    case Kind::Factorial:
      return "factorial";
    case Kind::Gevrey:
      return fmt::format("gevrey(beta={})", beta_);
    case Kind::Tabulated:
      return fmt::format("tabulated(n={})", log_table_.size());
  }
  return "unknown";
}

}  // namespace specapprox
