#ifndef MVPB_BOUNDS_HPP
#define MVPB_BOUNDS_HPP

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "mvpb/estimators.hpp"

namespace mvpb {

struct BoundInputs {
  RiskProfile profile;
  KlBudget kl;
  std::size_t m = 0;
  double delta = 0.05;  // in (0,1]; delta = 1 gives the pure plug-in reading
};

// Which complexity constant enters the Seeger-style bound: the closed-form
// 2*sqrt(m) majorant (default) or the exact binomial sum xi(m), which is
// never larger.
enum class ComplexityTerm { TwoSqrtM, XiM };

// A C-bound evaluation; vacuous means a 1/2 precondition failed and the
// reported value is the trivial 1.
struct CBoundValue {
  double value = 1.0;
  bool vacuous = true;
};

struct BoundReport {
  double mcallester = 1.0;
  double catoni = 1.0;
  double catoni_c = 0.0;
  double seeger = 1.0;
  double gibbs_upper = 1.0;       // min of the three
  double mv_factor2_upper = 1.0;  // min(1, 2 * gibbs_upper)
  CBoundValue cbound;
  std::map<std::string, double> intermediates;
};

// kl(a,b) between Bernoulli(a) and Bernoulli(b), 0 ln 0 = 0. Returns +inf at
// b in {0,1} unless a matches the endpoint. Throws DomainError outside [0,1].
double binary_kl(double a, double b);

// sup{ b in [a,1) : kl(a,b) <= c }, bisection to width 1e-10 (<= 100 steps).
double binary_kl_inverse_upper(double a, double c);
// inf{ b in [0,a] : kl(a,b) <= c }, same method on the lower branch.
double binary_kl_inverse_lower(double a, double c);

// xi(m) = sum_k C(m,k) (k/m)^k (1-k/m)^(m-k), evaluated in the log domain
// (cumulative log-factorials + log-sum-exp). Always <= 2*sqrt(m). Memoized.
double xi(std::int64_t m);

double mcallester_bound(const BoundInputs& in);
double catoni_bound(const BoundInputs& in, double c);
// Minimum over the grid and the argmin; ties go to the smaller C.
std::pair<double, double> catoni_bound_best_c(const BoundInputs& in,
                                              const std::vector<double>& grid);
double seeger_bound(const BoundInputs& in, ComplexityTerm term = ComplexityTerm::TwoSqrtM);

// Two-sided kl ball around the empirical disagreement; the budget carries the
// doubled KL terms of the disagreement bound.
std::pair<double, double> disagreement_interval(double d_emp, const KlBudget& kl, std::size_t m,
                                                double delta);

CBoundValue cbound_mv(double gibbs_upper, double disagreement_upper);
CBoundValue cbound_mv_per_view(const Eigen::VectorXd& per_view_gibbs,
                               const Eigen::VectorXd& per_view_disagreement,
                               const Categorical& rho);

// 20 log-spaced points in [0.05, 20].
std::vector<double> default_catoni_grid();

BoundReport full_report(const BoundInputs& in, const std::vector<double>& catoni_grid,
                        ComplexityTerm term = ComplexityTerm::TwoSqrtM);

}  // namespace mvpb

#endif
