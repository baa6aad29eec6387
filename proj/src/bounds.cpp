#include "mvpb/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <unordered_map>

namespace mvpb {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kBisectionIters = 100;
constexpr double kBisectionTol = 1e-10;

double clamp01(double x) { return std::min(1.0, std::max(0.0, x)); }

void check_prob(double x, const char* name) {
  if (!(x >= 0.0 && x <= 1.0))
    throw DomainError(std::string(name) + " must lie in [0,1], got " + std::to_string(x));
}

void check_delta(double delta) {
  if (!(delta > 0.0 && delta <= 1.0))
    throw DomainError("delta must lie in (0,1], got " + std::to_string(delta));
}

double complexity_log_term(std::size_t m, double delta, ComplexityTerm term) {
  const double numerator = term == ComplexityTerm::XiM
                               ? xi(static_cast<std::int64_t>(m))
                               : 2.0 * std::sqrt(static_cast<double>(m));
  return std::log(numerator / delta);
}

double empirical_gibbs(const BoundInputs& in) {
  return 0.5 * in.profile.disagreement + in.profile.joint_error;
}

}  // namespace

double binary_kl(double a, double b) {
  check_prob(a, "kl first argument");
  check_prob(b, "kl second argument");
  if (b == 0.0) return a == 0.0 ? 0.0 : kInf;
  if (b == 1.0) return a == 1.0 ? 0.0 : kInf;
  double kl = 0.0;
  if (a > 0.0) kl += a * std::log(a / b);
  if (a < 1.0) kl += (1.0 - a) * std::log((1.0 - a) / (1.0 - b));
  return kl;
}

double binary_kl_inverse_upper(double a, double c) {
  check_prob(a, "kl inverse first argument");
  if (c < 0.0) throw DomainError("kl inverse budget must be non-negative");
  if (a >= 1.0 || std::isinf(c)) return 1.0;
  if (c == 0.0) return a;
  double lo = a, hi = 1.0;
  for (int it = 0; it < kBisectionIters && hi - lo > kBisectionTol; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (binary_kl(a, mid) > c)
      hi = mid;
    else
      lo = mid;
  }
  return lo;
}

double binary_kl_inverse_lower(double a, double c) {
  check_prob(a, "kl inverse first argument");
  if (c < 0.0) throw DomainError("kl inverse budget must be non-negative");
  if (a <= 0.0 || std::isinf(c)) return 0.0;
  if (c == 0.0) return a;
  if (binary_kl(a, 0.0) <= c) return 0.0;
  double lo = 0.0, hi = a;
  for (int it = 0; it < kBisectionIters && hi - lo > kBisectionTol; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (binary_kl(a, mid) > c)
      lo = mid;
    else
      hi = mid;
  }
  return hi;
}

double xi(std::int64_t m) {
  if (m < 1) throw DomainError("xi(m) requires m >= 1");

  static std::mutex cache_mutex;
  static std::unordered_map<std::int64_t, double> cache;
  std::lock_guard<std::mutex> lock(cache_mutex);
  auto it = cache.find(m);
  if (it != cache.end()) return it->second;

  // The binomial sum collapses to 1 + Q(m) with Q(m) = sum_k (m)_k / m^k
  // (Ramanujan's Q-function); every partial product lies in (0,1], so the
  // recurrence term_{k+1} = term_k (m-k)/m is stable with no log/exp work.
  // Terms decay like exp(-k^2/2m); truncating below 1e-18 leaves a tail
  // under term * m/k, far below one ulp of the result.
  const double md = static_cast<double>(m);
  double term = 1.0;  // k = 1
  double q = 0.0;
  for (std::int64_t k = 1; k <= m && term > 1e-18; ++k) {
    q += term;
    term *= (md - static_cast<double>(k)) / md;
  }
  const double value = 1.0 + q;

  cache.emplace(m, value);
  return value;
}

double mcallester_bound(const BoundInputs& in) {
  check_delta(in.delta);
  if (in.m < 1) throw DomainError("bound requires m >= 1");
  const double complexity =
      (in.kl.total + complexity_log_term(in.m, in.delta, ComplexityTerm::TwoSqrtM)) /
      (2.0 * static_cast<double>(in.m));
  return clamp01(empirical_gibbs(in) + std::sqrt(complexity));
}

double catoni_bound(const BoundInputs& in, double c) {
  check_delta(in.delta);
  if (in.m < 1) throw DomainError("bound requires m >= 1");
  if (!(c > 0.0)) throw DomainError("Catoni bound requires C > 0");
  const double inner = c * empirical_gibbs(in) +
                       (in.kl.total + std::log(1.0 / in.delta)) / static_cast<double>(in.m);
  const double value = -std::expm1(-inner) / -std::expm1(-c);
  return clamp01(value);
}

std::pair<double, double> catoni_bound_best_c(const BoundInputs& in,
                                              const std::vector<double>& grid) {
  if (grid.empty()) throw DomainError("Catoni grid must be non-empty");
  double best = kInf, best_c = kInf;
  for (double c : grid) {
    const double value = catoni_bound(in, c);
    if (value < best || (value == best && c < best_c)) {
      best = value;
      best_c = c;
    }
  }
  return {best, best_c};
}

double seeger_bound(const BoundInputs& in, ComplexityTerm term) {
  check_delta(in.delta);
  if (in.m < 1) throw DomainError("bound requires m >= 1");
  const double budget =
      (in.kl.total + complexity_log_term(in.m, in.delta, term)) / static_cast<double>(in.m);
  return binary_kl_inverse_upper(empirical_gibbs(in), budget);
}

std::pair<double, double> disagreement_interval(double d_emp, const KlBudget& kl, std::size_t m,
                                                double delta) {
  check_prob(d_emp, "empirical disagreement");
  check_delta(delta);
  if (m < 1) throw DomainError("bound requires m >= 1");
  const double budget = 2.0 *
                        (kl.total + complexity_log_term(m, delta, ComplexityTerm::TwoSqrtM)) /
                        static_cast<double>(m);
  return {binary_kl_inverse_lower(d_emp, budget), binary_kl_inverse_upper(d_emp, budget)};
}

CBoundValue cbound_mv(double gibbs_upper, double disagreement_upper) {
  check_prob(gibbs_upper, "Gibbs risk bound");
  check_prob(disagreement_upper, "disagreement bound");
  CBoundValue out;
  if (gibbs_upper >= 0.5 || disagreement_upper >= 0.5) return out;  // vacuous
  const double numerator = 1.0 - 2.0 * gibbs_upper;
  out.value = clamp01(1.0 - numerator * numerator / (1.0 - 2.0 * disagreement_upper));
  out.vacuous = false;
  return out;
}

CBoundValue cbound_mv_per_view(const Eigen::VectorXd& per_view_gibbs,
                               const Eigen::VectorXd& per_view_disagreement,
                               const Categorical& rho) {
  if (per_view_gibbs.size() != rho.w.size() || per_view_disagreement.size() != rho.w.size())
    throw ShapeMismatch("per-view vectors must match the hyper distribution length");
  const double mean_gibbs = rho.w.dot(per_view_gibbs);
  const double mean_dis = rho.w.dot(per_view_disagreement);
  return cbound_mv(clamp01(mean_gibbs), clamp01(mean_dis));
}

std::vector<double> default_catoni_grid() {
  const double lo = 0.05, hi = 20.0;
  const int count = 20;
  std::vector<double> grid(count);
  const double step = std::log(hi / lo) / (count - 1);
  for (int i = 0; i < count; ++i) grid[static_cast<std::size_t>(i)] = lo * std::exp(step * i);
  return grid;
}

BoundReport full_report(const BoundInputs& in, const std::vector<double>& catoni_grid,
                        ComplexityTerm term) {
  BoundReport report;
  report.mcallester = mcallester_bound(in);
  const auto [catoni, catoni_c] = catoni_bound_best_c(in, catoni_grid);
  report.catoni = catoni;
  report.catoni_c = catoni_c;
  report.seeger = seeger_bound(in, term);
  report.gibbs_upper = std::min({report.mcallester, report.catoni, report.seeger});
  report.mv_factor2_upper = std::min(1.0, 2.0 * report.gibbs_upper);
  const auto [d_lower, d_upper] = disagreement_interval(in.profile.disagreement, in.kl, in.m, in.delta);
  // 1 - (1-2R)^2/(1-2d) falls as d grows, so the lower confidence limit of
  // the disagreement is the conservative plug-in.
  report.cbound = cbound_mv(report.gibbs_upper, d_lower);

  report.intermediates["empirical_gibbs"] = empirical_gibbs(in);
  report.intermediates["kl_expected_view"] = in.kl.expected_view_kl;
  report.intermediates["kl_hyper"] = in.kl.hyper_kl;
  report.intermediates["kl_total"] = in.kl.total;
  report.intermediates["complexity_log_term"] = complexity_log_term(in.m, in.delta, term);
  if (term == ComplexityTerm::XiM)
    report.intermediates["xi_m"] = xi(static_cast<std::int64_t>(in.m));
  else
    report.intermediates["two_sqrt_m"] = 2.0 * std::sqrt(static_cast<double>(in.m));
  report.intermediates["seeger_kl_inverse"] = report.seeger;
  report.intermediates["catoni_best_c"] = report.catoni_c;
  report.intermediates["disagreement_lower"] = d_lower;
  report.intermediates["disagreement_upper"] = d_upper;
  return report;
}

}  // namespace mvpb
