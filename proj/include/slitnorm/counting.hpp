#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "slitnorm/rational.hpp"
#include "slitnorm/torus.hpp"

namespace slitnorm {

/// Sum of phi(b)/b for b = 1 .. floor(1/rho).
Rational totient_sum(const Rational& rho);

/// Signed counts h and -h separately; UpToSign counts the pair once.
enum class SignConvention { kSigned, kUpToSign };
const char* sign_convention_name(SignConvention c);

/// Stable norms of the simple (primitive, vertex-direction) classes up to a
/// bound, with the multiplicity each first-quadrant class stands for.
class SimpleClassNorms {
 public:
  /// workers == 0 uses the available hardware threads. The result does not
  /// depend on the worker count.
  SimpleClassNorms(const VerticalSlitTorus& t, double max_norm, SignConvention convention,
                   unsigned workers = 0);

  double max_norm() const { return max_norm_; }
  /// Number of simple classes with norm <= x; x must not exceed max_norm.
  std::int64_t count(double x) const;

 private:
  double max_norm_;
  std::vector<double> norms_;           // sorted
  std::vector<std::int64_t> prefix_;    // prefix_[i] = weight of norms_[0..i)
};

/// Counts the simple classes of stable norm <= x (x >= 1).
std::int64_t count_simple(const VerticalSlitTorus& t, double x,
                          SignConvention convention = SignConvention::kSigned, unsigned workers = 0);

/// 4 * copies * totient_sum(rho) * x * ln x.
double asymptotic_estimate(const Rational& rho, double x, int glued_copies = 1);

/// Leading coefficient the counts should approach: the estimate's, doubled
/// for signed counts.
double expected_coefficient(const Rational& rho, int glued_copies, SignConvention convention);

struct CountRow {
  double x = 0.0;
  std::int64_t p = 0;
};

struct CountTable {
  std::vector<CountRow> rows;
  double a = 0.0, b = 0.0, residual = 0.0;
  bool fitted = false;
};

/// Rows for the given thresholds from a single enumeration. Glued copies
/// multiply the counts, since glued vertices are a disjoint union of the
/// component vertices.
CountTable count_table(const VerticalSlitTorus& t, const std::vector<double>& xs,
                       SignConvention convention = SignConvention::kSigned, int glued_copies = 1,
                       unsigned workers = 0);

/// Thresholds xmin, xmin + step, ... up to xmax inclusive (within 1e-9).
std::vector<double> threshold_range(double xmin, double xmax, double step);

struct Fit {
  double a = 0.0;
  double b = 0.0;
  double residual = 0.0;  // |p - fit| / |p|
};

/// Least squares for p(x) ~ A x ln x + B x. Throws kInsufficientData for
/// fewer than 10 rows or a range narrower than a decade, kIllConditioned
/// when the two columns are numerically dependent.
Fit fit_coefficient(const std::vector<CountRow>& rows);
Fit fit_coefficient(const std::vector<double>& xs, const std::vector<double>& ps);

}  // namespace slitnorm
