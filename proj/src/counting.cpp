#include "slitnorm/counting.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include <Eigen/Dense>

#include "slitnorm/errors.hpp"
#include "slitnorm/farey.hpp"

namespace slitnorm {

namespace {

std::int64_t totient(std::int64_t n) {
  std::int64_t result = n;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    while (n % p == 0) n /= p;
    result -= result / p;
  }
  if (n > 1) result -= result / n;
  return result;
}

struct Weighted {
  double norm;
  std::int64_t weight;
};

// Same canonical-parent preference as the vertex enumeration.
bool parent_preferred(const HClass& a, const HClass& b) {
  if (a.m != b.m) return a.m < b.m;
  return static_cast<__int128>(a.n) * b.m < static_cast<__int128>(b.n) * a.m;
}

std::vector<HClass> chain_bases(const HClass& v) {
  if (v.m == 0) return {};
  if (v.m == 1) return {{1, v.n - 1}, {1, v.n + 1}};
  ClassParents p = class_parents(v.m, v.n);
  return {{p.low_m, p.low_n}, {p.high_m, p.high_n}};
}

// Visible parent that owns c when c sits on chains of two visible classes.
HClass owner(const VerticalSlitTorus& t, const HClass& c) {
  ClassParents p = class_parents(c.m, c.n);
  HClass lo{p.low_m, p.low_n}, hi{p.high_m, p.high_n};
  bool lv = t.column_visible(lo.m), hv = t.column_visible(hi.m);
  if (lv && hv) return parent_preferred(lo, hi) ? lo : hi;
  return lv ? lo : hi;
}

}  // namespace

Rational totient_sum(const Rational& rho) {
  if (rho.sign() <= 0 || rho >= Rational(1)) {
    throw Error(ErrorCode::kInvalidTorus, "rho must lie in (0,1), got " + rho.str());
  }
  const std::int64_t top = to_int64((Rational(1) / rho).floor());
  Rational sum;
  for (std::int64_t b = 1; b <= top; ++b) sum += Rational(BigInt(totient(b)), BigInt(b));
  return sum;
}

const char* sign_convention_name(SignConvention c) {
  return c == SignConvention::kSigned ? "signed" : "up-to-sign";
}

SimpleClassNorms::SimpleClassNorms(const VerticalSlitTorus& t, double max_norm,
                                   SignConvention convention, unsigned workers)
    : max_norm_(max_norm) {
  if (!(max_norm >= 1.0)) throw Error(ErrorCode::kPreconditionViolated, "x must be >= 1");
  // First-quadrant classes off the axes stand for four sign images, the two
  // axis classes for two.
  const std::int64_t inner = convention == SignConvention::kSigned ? 4 : 2;
  const std::int64_t axis = convention == SignConvention::kSigned ? 2 : 1;

  std::vector<HClass> visible;
  for (std::int64_t m = 1; t.column_visible(m); ++m) {
    for (std::int64_t n = 1; std::hypot(m, n) <= max_norm; ++n) {
      if (HClass{m, n}.is_primitive()) visible.push_back({m, n});
    }
  }
  std::vector<Weighted> all{{1.0, axis}, {1.0, axis}};
  for (const HClass& v : visible) all.push_back({std::hypot(double(v.m), double(v.n)), inner});
  // Chains hang off (1,0) and the visible classes off the axes.
  std::vector<HClass> roots{{1, 0}};
  roots.insert(roots.end(), visible.begin(), visible.end());
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, static_cast<unsigned>(roots.size()));

  std::vector<std::vector<Weighted>> parts(workers);
  auto run = [&](unsigned w) {
    for (std::size_t i = w; i < roots.size(); i += workers) {
      const HClass& v = roots[i];
      for (const HClass& base : chain_bases(v)) {
        for (std::int64_t k = 1;; ++k) {
          HClass c = k * v + base;
          if (c.m < 0 || c.n < 0) break;
          if (std::hypot(static_cast<double>(c.m), static_cast<double>(c.n)) > max_norm) break;
          if (t.column_visible(c.m) || owner(t, c) != v) continue;
          if (classify_direction(t, c) != DirectionKind::kVertex) continue;
          double norm = stable_norm(t, c).value;
          if (norm <= max_norm) parts[w].push_back({norm, inner});
        }
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(run, w);
  run(0);
  for (auto& th : pool) th.join();
  for (auto& p : parts) all.insert(all.end(), p.begin(), p.end());

  std::sort(all.begin(), all.end(), [](const Weighted& a, const Weighted& b) { return a.norm < b.norm; });
  norms_.reserve(all.size());
  prefix_.reserve(all.size() + 1);
  prefix_.push_back(0);
  for (const Weighted& e : all) {
    norms_.push_back(e.norm);
    prefix_.push_back(prefix_.back() + e.weight);
  }
}

std::int64_t SimpleClassNorms::count(double x) const {
  if (x > max_norm_) {
    throw Error(ErrorCode::kPreconditionViolated, "threshold beyond the enumerated range");
  }
  auto it = std::upper_bound(norms_.begin(), norms_.end(), x);
  return prefix_[static_cast<std::size_t>(it - norms_.begin())];
}

std::int64_t count_simple(const VerticalSlitTorus& t, double x, SignConvention convention,
                          unsigned workers) {
  return SimpleClassNorms(t, x, convention, workers).count(x);
}

double asymptotic_estimate(const Rational& rho, double x, int glued_copies) {
  if (!(x > 1.0)) throw Error(ErrorCode::kPreconditionViolated, "x must be > 1");
  return 4.0 * glued_copies * totient_sum(rho).to_double() * x * std::log(x);
}

double expected_coefficient(const Rational& rho, int glued_copies, SignConvention convention) {
  const double base = 4.0 * glued_copies * totient_sum(rho).to_double();
  return convention == SignConvention::kSigned ? 2.0 * base : base;
}

CountTable count_table(const VerticalSlitTorus& t, const std::vector<double>& xs,
                       SignConvention convention, int glued_copies, unsigned workers) {
  if (xs.empty()) throw Error(ErrorCode::kPreconditionViolated, "no thresholds");
  if (glued_copies < 1) throw Error(ErrorCode::kPreconditionViolated, "copies must be >= 1");
  std::vector<double> sorted = xs;
  std::sort(sorted.begin(), sorted.end());
  SimpleClassNorms norms(t, sorted.back(), convention, workers);
  CountTable table;
  for (double x : sorted) {
    if (!(x >= 1.0)) throw Error(ErrorCode::kPreconditionViolated, "thresholds must be >= 1");
    table.rows.push_back({x, glued_copies * norms.count(x)});
  }
  return table;
}

std::vector<double> threshold_range(double xmin, double xmax, double step) {
  if (!(step > 0.0) || !(xmax >= xmin)) {
    throw Error(ErrorCode::kPreconditionViolated, "need step > 0 and xmax >= xmin");
  }
  std::vector<double> xs;
  for (std::int64_t i = 0;; ++i) {
    double x = xmin + static_cast<double>(i) * step;
    if (x > xmax + 1e-9) break;
    xs.push_back(x);
  }
  return xs;
}

Fit fit_coefficient(const std::vector<CountRow>& rows) {
  std::vector<double> xs, ps;
  for (const CountRow& r : rows) {
    xs.push_back(r.x);
    ps.push_back(static_cast<double>(r.p));
  }
  return fit_coefficient(xs, ps);
}

Fit fit_coefficient(const std::vector<double>& xs, const std::vector<double>& ps) {
  if (xs.size() != ps.size()) throw Error(ErrorCode::kPreconditionViolated, "x and p differ in length");
  if (xs.size() < 10) {
    throw Error(ErrorCode::kInsufficientData, "need at least 10 rows, got " + std::to_string(xs.size()));
  }
  const auto n = static_cast<Eigen::Index>(xs.size());
  Eigen::MatrixXd design(n, 2);
  Eigen::VectorXd p(n);
  double lo = xs[0], hi = xs[0];
  for (Eigen::Index i = 0; i < n; ++i) {
    const double x = xs[static_cast<std::size_t>(i)];
    if (!(x > 0.0)) throw Error(ErrorCode::kPreconditionViolated, "thresholds must be positive");
    design(i, 0) = x * std::log(x);
    design(i, 1) = x;
    p(i) = ps[static_cast<std::size_t>(i)];
    lo = std::min(lo, x);
    hi = std::max(hi, x);
  }
  Eigen::Vector2d scale = design.colwise().norm().transpose();
  if (scale.minCoeff() == 0.0) throw Error(ErrorCode::kIllConditioned, "zero design column");
  Eigen::MatrixXd scaled = design * scale.cwiseInverse().asDiagonal();
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(scaled);
  qr.setThreshold(1e-10);
  if (qr.rank() < 2) throw Error(ErrorCode::kIllConditioned, "x ln x and x are numerically dependent");
  if (hi < 10.0 * lo) throw Error(ErrorCode::kInsufficientData, "thresholds span less than a decade");
  Eigen::Vector2d coef = qr.solve(p).cwiseQuotient(scale);
  Fit f;
  f.a = coef(0);
  f.b = coef(1);
  const double pn = p.norm();
  f.residual = pn == 0.0 ? 0.0 : (design * coef - p).norm() / pn;
  return f;
}

}  // namespace slitnorm
