#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qplane/mode_function.hpp"

namespace qplane {

enum class Suite { Measure, Calculus, Forms, Fq, Fourier };

inline constexpr Suite kAllSuites[] = {Suite::Measure, Suite::Calculus, Suite::Forms, Suite::Fq,
                                       Suite::Fourier};

std::string_view to_string(Suite s);
/// Throws ConfigError on an unknown name.
Suite parse_suite(std::string_view name);

struct VerifyConfig {
  double q = 0.5;
  int kmin = -8;
  int kmax = 8;
  int lmax = 12;
  int n_theta = 256;
  double tol_exact = 1e-12;
  double tol_quad = 1e-3;
  std::vector<Suite> suites{std::begin(kAllSuites), std::end(kAllSuites)};
  std::uint64_t seed = 1;
  /// Number of seeded random functions used by the exact suites.
  int n_random = 50;
  /// Half-width of the Fourier kernel radial window; defaults to
  /// 2·max(|kmin|, |kmax|).
  std::optional<int> kernel_kmax;

  /// Throws ConfigError when an invariant is violated.
  void validate() const;

  int kernel_half_width() const;
  IndexWindow k_window() const { return {kmin, kmax}; }
  IndexWindow l_window() const { return {-lmax, lmax}; }
};

enum class Compare {
  AtMost,   // pass iff residual ≤ threshold
  AtLeast,  // pass iff residual ≥ threshold (probes that must detect a failure)
};

struct CheckRecord {
  std::string id;
  std::string anchor;
  double residual = 0.0;
  double threshold = 0.0;
  Compare compare = Compare::AtMost;
  bool pass = false;
  /// Unseen-mass estimate for truncated checks.
  std::optional<double> tail;
  /// Check-specific parameters echoed into the report.
  std::vector<std::pair<std::string, double>> params;
  /// Residual sequence for convergence checks.
  std::vector<double> series;
  /// Non-empty when the check could not run (window, aliasing ...).
  std::string error;
};

struct Report {
  VerifyConfig config;
  std::vector<CheckRecord> records;  // sorted by id
  double wall_time = 0.0;

  int passed() const;
  int failed() const;
  bool all_pass() const { return failed() == 0; }
};

/// Runs the selected suites. Checks that throw are recorded as failures with
/// the error text; only an invalid config throws.
Report run_verify(const VerifyConfig& config);

enum class ReportFormat { Json, Csv, Text };
ReportFormat parse_report_format(std::string_view name);

/// Serializes a report. JSON keys keep a fixed order and numbers carry 17
/// significant digits; wall_time is the only field that varies between runs.
std::string format_report(const Report& report, ReportFormat format, bool include_wall_time = true);

enum class SweepAxis { NTheta, KWindow };
SweepAxis parse_sweep_axis(std::string_view name);

struct ConvergenceSweep {
  SweepAxis axis = SweepAxis::KWindow;
  std::vector<int> values;
  std::vector<std::string> families;
  std::vector<std::vector<double>> rows;  // rows[i][family]
  /// Per family: strictly decreasing over the sweep. Empty with a single row.
  std::vector<bool> monotone;
};

/// Residual families (relation totals, Plancherel, unitarity, kernel Parseval)
/// as one parameter varies: the kernel radial half-width (kwindow) or the
/// angular sample count (ntheta). Other parameters come from `config`.
ConvergenceSweep run_convergence(const VerifyConfig& config, SweepAxis axis, const std::vector<int>& values);

std::string format_sweep(const ConvergenceSweep& sweep, ReportFormat format);

}  // namespace qplane
