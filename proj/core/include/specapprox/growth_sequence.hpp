#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace specapprox {

/// Nondecreasing weight sequence {m_n} with m_0 = 1 that defines a smoothness
/// scale. Values are kept in log-space because n! and n^{n beta} leave the
/// double range near n = 170.
class GrowthSequence {
 public:
  enum class Kind { Factorial, Gevrey, Tabulated };

  /// m_n = n!
  static GrowthSequence factorial();
  /// m_n = n^{n beta}, m_0 = 1. Requires beta > 0.
  static GrowthSequence gevrey(double beta);
  /// Finite table of m_n. Requires m_0 = 1, positive, nondecreasing entries.
  static GrowthSequence tabulated(const std::vector<double>& values);
  /// Finite table given as ln m_n; same requirements in log form.
  static GrowthSequence tabulated_log(std::vector<double> log_values);

  Kind kind() const noexcept { return kind_; }
  double beta() const noexcept { return beta_; }

  /// ln m_n. Throws ValidationError past the end of a tabulated sequence.
  double log_value(std::size_t n) const;

  /// Number of available terms; nullopt for the closed-form kinds.
  std::optional<std::size_t> length() const noexcept;
  bool has_index(std::size_t n) const noexcept;

  std::string describe() const;

 private:
  GrowthSequence(Kind kind, double beta, std::vector<double> log_table)
      : kind_(kind), beta_(beta), log_table_(std::move(log_table)) {}

  Kind kind_;
  double beta_ = 0.0;
  std::vector<double> log_table_;
};

}  // namespace specapprox
