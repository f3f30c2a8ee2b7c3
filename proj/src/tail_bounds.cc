// Copyright 2026 The ifair Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ifair/tail_bounds.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "ifair/error.h"

namespace ifair {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kInvPhi = 0.6180339887498949;

// sup and inf over a block's groups of p(y|a_t), per label.
struct BlockRange {
  std::vector<double> sup;
  std::vector<double> inf;
};

std::vector<BlockRange> BlockRanges(const JointPMF& pmf, const Partition& q) {
  if (q.num_attributes() != pmf.schema().num_attributes()) {
    throw Error(ErrorCode::kStructural,
                "partition does not match the schema's attribute count");
  }
  const std::size_t labels = pmf.schema().label_card();
  std::vector<BlockRange> out;
  for (const Block& t : q.blocks()) {
    const std::vector<double> rates = ConditionalRates(MarginalPmf(pmf, t));
    BlockRange r{std::vector<double>(labels, 0.0),
                 std::vector<double>(labels, kInf)};
    for (std::size_t c = 0; c < rates.size(); ++c) {
      r.sup[c % labels] = std::max(r.sup[c % labels], rates[c]);
      r.inf[c % labels] = std::min(r.inf[c % labels], rates[c]);
    }
    out.push_back(std::move(r));
  }
  return out;
}

void CheckDelta(double delta, bool allow_one) {
  const bool ok = delta > 0.0 && (allow_one ? delta <= 1.0 : delta < 1.0);
  if (!ok) {
    throw Error(ErrorCode::kInvalidArgument,
                std::string("delta must lie in (0, 1") + (allow_one ? "]" : ")"));
  }
}

Score MaxOver(const std::vector<Score>& v) {
  Score best = Score::Finite(0.0);
  for (const Score& s : v) {
    if (best < s) best = s;
  }
  return best;
}

}  // namespace

RateFunction::RateFunction(const LogRatioLaw& law, Tail tail,
                           const SolverConfig& config)
    : tail_(tail),
      sign_(tail == Tail::kUpper ? 1.0 : -1.0),
      config_(config),
      weights_(law.weights) {
  if (config.t_grid_points < 2 || !(config.t_min > 0.0) ||
      !(config.t_max > config.t_min)) {
    throw Error(ErrorCode::kInvalidArgument, "invalid solver t-grid");
  }
  CompensatedSum mean;
  extreme_ = -kInf;
  for (std::size_t i = 0; i < law.values.size(); ++i) {
    values_.push_back(sign_ * law.values[i]);
    mean.Add(weights_[i] * values_.back());
    extreme_ = std::max(extreme_, values_.back());
  }
  mean_ = mean.Value();
  const double lo = std::log(config.t_min);
  const double step =
      (std::log(config.t_max) - lo) / (config.t_grid_points - 1);
  for (int i = 0; i < config.t_grid_points; ++i) {
    t_grid_.push_back(i + 1 == config.t_grid_points ? config.t_max
                                                    : std::exp(lo + i * step));
    kappa_grid_.push_back(Kappa(t_grid_.back()));
    slope_grid_.push_back(KappaSlope(t_grid_.back()));
  }
}

double RateFunction::Kappa(double t) const {
  double top = -kInf;
  for (double v : values_) top = std::max(top, t * v);
  CompensatedSum s;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    s.Add(weights_[i] * std::exp(t * values_[i] - top));
  }
  return top + std::log(s.Value());
}

double RateFunction::KappaSlope(double t) const {
  double top = -kInf;
  for (double v : values_) top = std::max(top, t * v);
  CompensatedSum num;
  CompensatedSum den;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    const double w = weights_[i] * std::exp(t * values_[i] - top);
    num.Add(w * values_[i]);
    den.Add(w);
  }
  return num.Value() / den.Value();
}

double RateFunction::Rate(double lambda, double stop_at) const {
  std::size_t best = 0;
  double value = -kInf;
  for (std::size_t i = 0; i < t_grid_.size(); ++i) {
    const double f = t_grid_[i] * lambda - kappa_grid_[i];
    if (f > value) {
      value = f;
      best = i;
    }
  }
  if (value >= stop_at) return value;
  const std::size_t last = t_grid_.size() - 1;
  if (std::isfinite(stop_at) && best > 0 && best < last) {
    // Tangents at the neighbouring grid points bound the concave objective
    // from above; their intersection caps the refined maximum.
    const double t1 = t_grid_[best - 1];
    const double t2 = t_grid_[best + 1];
    const double f1 = t1 * lambda - kappa_grid_[best - 1];
    const double f2 = t2 * lambda - kappa_grid_[best + 1];
    const double s1 = lambda - slope_grid_[best - 1];
    const double s2 = lambda - slope_grid_[best + 1];
    if (s1 >= 0.0 && s2 <= 0.0) {
      double cap = std::max(f1, f2);
      if (s1 - s2 > 0.0) {
        const double t = (f2 - f1 + s1 * t1 - s2 * t2) / (s1 - s2);
        cap = f1 + s1 * (t - t1);
      }
      cap += 1e-12 * (1.0 + std::abs(cap));
      if (cap < stop_at) return std::max(0.0, value);
    }
  }
  // t * lambda - kappa(t) is concave in t, so the maximum lies between the
  // neighbours of the best grid point.
  double a = t_grid_[best == 0 ? 0 : best - 1];
  double b = t_grid_[std::min(best + 1, t_grid_.size() - 1)];
  auto f = [&](double t) { return t * lambda - Kappa(t); };
  double x1 = b - kInvPhi * (b - a);
  double x2 = a + kInvPhi * (b - a);
  double f1 = f(x1);
  double f2 = f(x2);
  while (b - a > config_.refine_tol) {
    value = std::max(value, std::max(f1, f2));
    if (value >= stop_at) return value;
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kInvPhi * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kInvPhi * (b - a);
      f1 = f(x1);
    }
  }
  value = std::max(value, std::max(f1, f2));
  return std::max(0.0, value);
}

double RateFunction::Bound(double lambda) const {
  if (lambda >= extreme_) return 0.0;
  return std::min(1.0, std::exp(-Rate(lambda, kInf)));
}

double RateFunction::operator()(double lambda) const {
  return Rate(sign_ * lambda, kInf);
}

double RateFunction::TailBound(double lambda) const {
  return Bound(sign_ * lambda);
}

double RateFunction::Quantile(double delta) const {
  if (!(delta > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "tail budget must be positive");
  }
  const double need = -std::log(delta);
  auto feasible = [&](double l) {
    return l >= extreme_ || Rate(l, need) >= need;
  };
  double lo = std::min(mean_, extreme_);
  double hi = extreme_;
  if (feasible(lo)) return sign_ * lo;
  while (hi - lo > config_.lambda_tol * std::max(1.0, std::abs(hi))) {
    const double mid = 0.5 * (lo + hi);
    if (feasible(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return sign_ * hi;
}

Score MarginalTerm(const JointPMF& pmf, const Partition& q) {
  const std::vector<BlockRange> ranges = BlockRanges(pmf, q);
  const std::vector<double> py = pmf.LabelMarginal();
  const double m = static_cast<double>(q.size());
  std::vector<Score> per_label;
  for (std::size_t y = 0; y < py.size(); ++y) {
    double s = 0.0;
    for (const BlockRange& r : ranges) {
      if (!(r.inf[y] > 0.0)) return Score::Infinite();
      s += (1.0 - 1.0 / m) * std::log(py[y]) - std::log(r.inf[y]);
    }
    per_label.push_back(Score::Finite(s));
  }
  // Unlike the unfairness functionals this term can be negative.
  Score best = per_label.front();
  for (const Score& s : per_label) {
    if (best < s) best = s;
  }
  return best;
}

BoundReport ChebyshevBounds(const JointPMF& pmf, const Partition& q,
                            double delta, MetricVariant variant) {
  CheckDelta(delta, true);
  BoundReport r;
  r.variant = variant;
  r.delta = delta;
  r.q = q;
  r.moments = ComputeMoments(pmf, q);
  r.u_ind = IndependentApprox(pmf, q, variant);
  r.marginal_term = MarginalTerm(pmf, q);
  const double s = r.moments.s_star / std::sqrt(delta);
  const double gamma = r.moments.gamma;
  const std::vector<BlockRange> ranges = BlockRanges(pmf, q);
  const std::vector<double> py = pmf.LabelMarginal();

  switch (variant) {
    case MetricVariant::kRatioLog:
      r.eps1 = Score::Finite(2.0 * std::sqrt(2.0) * s) + r.u_ind;
      r.eps1_prime = Score::Finite(s + gamma) + r.marginal_term;
      break;
    case MetricVariant::kRatioLogVsAverage: {
      std::vector<Score> per_label;
      for (std::size_t y = 0; y < py.size(); ++y) {
        double below = gamma;
        double above = -gamma;
        bool zero_rate = false;
        for (const BlockRange& b : ranges) {
          zero_rate = zero_rate || !(b.inf[y] > 0.0);
          below += std::log(py[y] / b.inf[y]);
          above += std::log(b.sup[y] / py[y]);
        }
        per_label.push_back(zero_rate ? Score::Infinite()
                                      : Score::Finite(s + std::max(below, above)));
      }
      r.eps1 = MaxOver(per_label);
      break;
    }
    case MetricVariant::kAbsDiff:
    case MetricVariant::kAbsDiffVsAverage: {
      // Bounds on p(y|a) = exp(L_y - L) p(y)^(1-m) prod_t p(y|a_t) on the
      // event |L - mu| + |L_y - mu_y| <= s.
      double best = 0.0;
      for (std::size_t y = 0; y < py.size(); ++y) {
        if (!(py[y] > 0.0)) continue;
        double prod_sup = py[y];
        double prod_inf = py[y];
        for (const BlockRange& b : ranges) {
          prod_sup *= b.sup[y] / py[y];
          prod_inf *= b.inf[y] / py[y];
        }
        const double upper = std::exp(-gamma + s) * prod_sup;
        const double lower = std::exp(-gamma - s) * prod_inf;
        best = std::max(best, variant == MetricVariant::kAbsDiff
                                  ? upper - lower
                                  : std::max(upper - py[y], py[y] - lower));
      }
      r.eps1 = Score::Finite(best);
      break;
    }
  }
  return r;
}

void AddChernoffBound(const JointPMF& pmf, BoundReport& report,
                      const SolverConfig& config) {
  CheckDelta(report.delta, false);
  if (report.variant != MetricVariant::kRatioLog) {
    throw Error(ErrorCode::kInvalidArgument,
                "the Chernoff bound is available for ratio-log only");
  }
  if (config.split_points < 1) {
    throw Error(ErrorCode::kInvalidArgument, "split_points must be positive");
  }
  const LogRatioLaw l = LawOfL(pmf, report.q);
  const LogRatioLaw ly = LawOfLy(pmf, report.q);
  const bool conditional_upper =
      config.pairing == TailPairing::kConditionalUpper;
  const RateFunction upper(conditional_upper ? ly : l,
                           RateFunction::Tail::kUpper, config);
  const RateFunction lower(conditional_upper ? l : ly,
                           RateFunction::Tail::kLower, config);

  const double delta = report.delta;
  const double log_lo = std::log(delta * 1e-4);
  const double log_hi = std::log(delta * (1.0 - 1e-4));
  const int n = config.split_points;
  SolverDiagnostics diag;
  double best = kInf;
  for (int i = 0; i < n; ++i) {
    const double d1 =
        n == 1 ? std::exp(log_hi)
               : std::exp(log_lo + (log_hi - log_lo) * i / (n - 1));
    const double lu = upper.Quantile(d1);
    const double ll = lower.Quantile(delta - d1);
    if (lu - ll < best) {
      best = lu - ll;
      diag.delta_upper = d1;
      diag.lambda_upper = lu;
      diag.lambda_lower = ll;
    }
  }
  diag.split_points = n;
  diag.t_grid_points = config.t_grid_points;
  diag.t_min = config.t_min;
  diag.t_max = config.t_max;
  diag.refine_tol = config.refine_tol;
  diag.pairing = config.pairing;
  diag.slack = upper.TailBound(diag.lambda_upper) +
               lower.TailBound(diag.lambda_lower) - delta;
  report.eps2 = Score::Finite(best) + report.marginal_term;
  report.solver = diag;
}

BoundReport ChernoffBound(const JointPMF& pmf, const Partition& q,
                          double delta, const SolverConfig& config) {
  CheckDelta(delta, false);
  BoundReport r = ChebyshevBounds(pmf, q, delta, MetricVariant::kRatioLog);
  AddChernoffBound(pmf, r, config);
  return r;
}

}  // namespace ifair
