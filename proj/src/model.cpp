#include "bd/model.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "bd/logsum.hpp"

namespace bd {

namespace {

constexpr double kCriticalRelTol = 1e-12;

bool positive_finite(double x) { return std::isfinite(x) && x > 0.0; }

}  // namespace

RateModel::RateModel(Family f, Params p, std::vector<double> ta,
                     std::vector<double> tb, TailRule tail, double z,
                     int i_max_hint)
    : family_(f),
      params_(p),
      tab_a_(std::move(ta)),
      tab_b_(std::move(tb)),
      tail_(tail),
      z_(z),
      log_z_(std::log(z)),
      i_max_hint_(i_max_hint) {
  validate_and_seed();
}

RateModel::RateModel(const RateModel& other)
    : family_(other.family_),
      params_(other.params_),
      tab_a_(other.tab_a_),
      tab_b_(other.tab_b_),
      tail_(other.tail_),
      z_(other.z_),
      log_z_(other.log_z_),
      i_max_hint_(other.i_max_hint_),
      sat_(other.sat_),
      base_(other.base_),
      base_top_(other.base_top_) {
  std::lock_guard<std::mutex> lk(other.ext_mu_);
  ext_ = other.ext_;
}

RateModel RateModel::constant(double a, double b, double z, int i_max_hint) {
  Params p;
  p.a = a;
  p.b = b;
  return RateModel(Family::Constant, p, {}, {}, TailRule::Error, z, i_max_hint);
}

RateModel RateModel::power_law(double big_a, double alpha, double big_b,
                               double beta, double z, int i_max_hint) {
  Params p;
  p.big_a = big_a;
  p.alpha = alpha;
  p.big_b = big_b;
  p.beta = beta;
  return RateModel(Family::PowerLaw, p, {}, {}, TailRule::Error, z, i_max_hint);
}

RateModel RateModel::metastable(double big_a, double alpha, double zs, double q,
                                double gamma, double z, int i_max_hint) {
  Params p;
  p.big_a = big_a;
  p.alpha = alpha;
  p.zs = zs;
  p.q = q;
  p.gamma = gamma;
  return RateModel(Family::Metastable, p, {}, {}, TailRule::Error, z,
                   i_max_hint);
}

RateModel RateModel::tabulated(std::vector<double> a, std::vector<double> b,
                               TailRule tail, double z, int i_max_hint) {
  return RateModel(Family::Tabulated, Params{}, std::move(a), std::move(b),
                   tail, z, i_max_hint);
}

void RateModel::validate_and_seed() {
  if (!positive_finite(z_)) throw ConfigError("z must be a positive real");
  if (i_max_hint_ < 2) throw ConfigError("i_max_hint must be >= 2");

  switch (family_) {
    case Family::Constant:
      if (!positive_finite(params_.a) || !positive_finite(params_.b))
        throw ConfigError("constant family requires a > 0 and b > 0");
      sat_ = Saturation{params_.b / params_.a, true};
      break;
    case Family::PowerLaw:
      if (!positive_finite(params_.big_a) || !positive_finite(params_.big_b))
        throw ConfigError("power_law family requires A > 0 and B > 0");
      if (!std::isfinite(params_.alpha) || !std::isfinite(params_.beta))
        throw ConfigError("power_law exponents must be finite");
      if (params_.beta == params_.alpha)
        sat_ = Saturation{params_.big_b / params_.big_a, true};
      break;
    case Family::Metastable:
      if (!positive_finite(params_.big_a) || !positive_finite(params_.zs) ||
          !positive_finite(params_.q))
        throw ConfigError("metastable family requires A, zs, q > 0");
      if (!(params_.alpha >= 0.0 && params_.alpha <= 1.0))
        throw ConfigError("metastable family requires alpha in [0, 1]");
      if (!(params_.gamma > 0.0 && params_.gamma < 1.0))
        throw ConfigError("metastable family requires gamma in (0, 1)");
      sat_ = Saturation{params_.zs, true};
      break;
    case Family::Tabulated: {
      if (tab_a_.empty() || tab_b_.empty())
        throw ConfigError("tabulated family requires nonempty a and b tables");
      for (double v : tab_a_)
        if (!positive_finite(v))
          throw ConfigError("tabulated a entries must be positive reals");
      for (double v : tab_b_)
        if (!positive_finite(v))
          throw ConfigError("tabulated b entries must be positive reals");
      if (tail_ == TailRule::Error) {
        if (static_cast<int>(tab_a_.size()) < i_max_hint_ ||
            static_cast<int>(tab_b_.size()) < i_max_hint_ - 1)
          throw ConfigError(
              "tabulated tables must cover i_max_hint when tail rule is error");
      }
      const int top =
          std::min<int>(static_cast<int>(tab_a_.size()),
                        static_cast<int>(tab_b_.size()) + 1);
      sat_ = Saturation{rate_b(top) / rate_a(top), false};
      break;
    }
  }

  if (sat_) {
    const double gap = std::abs(z_ - sat_->zs);
    if (gap <= kCriticalRelTol * std::max(z_, sat_->zs))
      throw CriticalZ("z coincides with the saturation concentration z_s");
  }

  base_top_ = std::max(i_max_hint_, 64);
  if (family_ == Family::Tabulated && tail_ == TailRule::Error) {
    const int coverage = std::min<int>(static_cast<int>(tab_a_.size()) + 1,
                                       static_cast<int>(tab_b_.size()) + 1);
    base_top_ = std::min(base_top_, coverage);
  }
  base_.assign(base_top_ + 1, 0.0);
  for (int i = 2; i <= base_top_; ++i)
    base_[i] = base_[i - 1] + log_rate_a(i - 1) - log_rate_b(i);
}

double RateModel::rate_a(int i) const {
  if (i < 1) throw InvalidIndex("rate_a requires i >= 1");
  switch (family_) {
    case Family::Constant:
      return params_.a;
    case Family::PowerLaw:
      return params_.big_a * std::pow(i, params_.alpha);
    case Family::Metastable:
      return params_.big_a * std::pow(i, params_.alpha);
    case Family::Tabulated:
      if (i <= static_cast<int>(tab_a_.size())) return tab_a_[i - 1];
      if (tail_ == TailRule::HoldLastRatio) return tab_a_.back();
      throw IndexBeyondTable("rate_a beyond tabulated range");
  }
  return 0.0;
}

double RateModel::rate_b(int i) const {
  if (i < 2) throw InvalidIndex("rate_b requires i >= 2");
  switch (family_) {
    case Family::Constant:
      return params_.b;
    case Family::PowerLaw:
      return params_.big_b * std::pow(i, params_.beta);
    case Family::Metastable:
      return params_.big_a * std::pow(i, params_.alpha) * params_.zs *
             std::exp(params_.q * std::pow(i, -params_.gamma));
    case Family::Tabulated:
      if (i - 2 < static_cast<int>(tab_b_.size())) return tab_b_[i - 2];
      if (tail_ == TailRule::HoldLastRatio) return tab_b_.back();
      throw IndexBeyondTable("rate_b beyond tabulated range");
  }
  return 0.0;
}

double RateModel::log_rate_a(int i) const {
  if (i < 1) throw InvalidIndex("rate_a requires i >= 1");
  switch (family_) {
    case Family::Constant:
      return std::log(params_.a);
    case Family::PowerLaw:
    case Family::Metastable:
      return std::log(params_.big_a) + params_.alpha * std::log(i);
    case Family::Tabulated:
      return std::log(rate_a(i));
  }
  return 0.0;
}

double RateModel::log_rate_b(int i) const {
  if (i < 2) throw InvalidIndex("rate_b requires i >= 2");
  switch (family_) {
    case Family::PowerLaw:
      return std::log(params_.big_b) + params_.beta * std::log(i);
    case Family::Metastable:
      return std::log(params_.big_a) + params_.alpha * std::log(i) +
             std::log(params_.zs) + params_.q * std::pow(i, -params_.gamma);
    default:
      return std::log(rate_b(i));
  }
}

double RateModel::log_q(int i) const {
  if (i < 1) throw InvalidIndex("log_q requires i >= 1");
  if (i <= base_top_) return base_[i];
  std::lock_guard<std::mutex> lk(ext_mu_);
  const int have = base_top_ + static_cast<int>(ext_.size());
  if (i > have) {
    ext_.reserve(i - base_top_ + 64);
    double last = ext_.empty() ? base_[base_top_] : ext_.back();
    for (int j = have + 1; j <= i + 64; ++j) {
      last += log_rate_a(j - 1) - log_rate_b(j);
      ext_.push_back(last);
    }
  }
  return ext_[i - base_top_ - 1];
}

Saturation RateModel::saturation() const {
  if (!sat_)
    throw HypothesisViolation(
        "no saturation limit: power_law with beta != alpha has no z_s");
  return *sat_;
}

Regime RateModel::regime() const {
  return z_ < saturation().zs ? Regime::Subcritical : Regime::Supercritical;
}

std::string RateModel::digest() const {
  char buf[256];
  switch (family_) {
    case Family::Constant:
      std::snprintf(buf, sizeof buf, "constant(a=%.17g,b=%.17g),z=%.17g",
                    params_.a, params_.b, z_);
      break;
    case Family::PowerLaw:
      std::snprintf(buf, sizeof buf,
                    "power_law(A=%.17g,alpha=%.17g,B=%.17g,beta=%.17g),z=%.17g",
                    params_.big_a, params_.alpha, params_.big_b, params_.beta,
                    z_);
      break;
    case Family::Metastable:
      std::snprintf(
          buf, sizeof buf,
          "metastable(A=%.17g,alpha=%.17g,zs=%.17g,q=%.17g,gamma=%.17g),z=%.17g",
          params_.big_a, params_.alpha, params_.zs, params_.q, params_.gamma,
          z_);
      break;
    case Family::Tabulated:
      std::snprintf(buf, sizeof buf,
                    "tabulated(n_a=%zu,n_b=%zu,tail=%s,a1=%.17g,bend=%.17g),z=%.17g",
                    tab_a_.size(), tab_b_.size(),
                    tail_ == TailRule::Error ? "error" : "hold_last_ratio",
                    tab_a_.front(), tab_b_.back(), z_);
      break;
  }
  return buf;
}

ReuterResult check_reuter(const RateModel& model, int n_terms, double blowup) {
  if (n_terms < 4) throw ConfigError("check_reuter requires n_terms >= 4");
  if (!(blowup > 0)) throw ConfigError("check_reuter requires blowup > 0");

  ReuterResult out;
  const int N = n_terms;
  // Suffix sums T_n = ln sum_{k=n..N} w_k folded into the outer sum on the fly.
  double log_inner = kNegInf;
  double log_outer = kNegInf;
  for (int n = N; n >= 2; --n) {
    log_inner = logaddexp(log_inner, model.log_w(n));
    log_outer = logaddexp(log_outer, model.log_qz(n) + log_inner);
  }
  out.log_partial_sum = log_outer;
  if (log_outer > std::log(blowup)) {
    out.status = ReuterStatus::NonExplosive;
    return out;
  }
  if (model.family() != Family::Tabulated) {
    // (H1) holds by construction for the built-in families (power_law only
    // when a saturation limit exists) and z != z_s is a model invariant.
    bool analytic = model.family() != Family::PowerLaw ||
                    model.params().beta == model.params().alpha;
    if (analytic) {
      out.status = ReuterStatus::NonExplosive;
      out.analytic = true;
      return out;
    }
  }
  out.status = ReuterStatus::Undetermined;
  return out;
}

namespace {

HypothesisReport check_hypotheses_tabulated(const RateModel& m, int i_lo,
                                            int i_hi) {
  HypothesisReport rep;
  const int cover = std::min<int>(static_cast<int>(m.table_a().size()),
                                  static_cast<int>(m.table_b().size()) + 1);
  const int lo = std::max(2, i_lo);
  const int hi = std::min(i_hi, cover);
  if (hi - lo + 1 < 8)
    throw ConfigError("tabulated hypothesis check needs a range of >= 8 sizes");
  rep.i_lo = lo;
  rep.i_hi = hi;

  std::vector<double> r(hi + 1, 0.0);
  for (int i = lo; i <= hi; ++i) r[i] = m.rate_b(i) / m.rate_a(i);
  const int q_lo = hi - (hi - lo) / 4;  // last quarter of the range

  // (H1): ratio stabilization and b_{i+1}/b_i -> 1 over the last quarter.
  {
    double rmax = r[q_lo], rmin = r[q_lo];
    int w_spread = q_lo;
    for (int i = q_lo; i <= hi; ++i) {
      if (r[i] > rmax) rmax = r[i];
      if (r[i] < rmin) {
        rmin = r[i];
        w_spread = i;
      }
    }
    double worst_b = 0.0;
    int w_b = q_lo;
    for (int i = std::max(q_lo, lo); i < hi; ++i) {
      const double d = std::abs(m.rate_b(i + 1) / m.rate_b(i) - 1.0);
      if (d > worst_b) {
        worst_b = d;
        w_b = i;
      }
    }
    if ((rmax - rmin) / r[hi] > 0.05)
      rep.h1 = {HypStatus::Fail, w_spread,
                "b_i/a_i spread above 5% over the last quarter of the range"};
    else if (worst_b > 0.05)
      rep.h1 = {HypStatus::Fail, w_b,
                "b_{i+1}/b_i deviates from 1 by more than 5%"};
    else
      rep.h1 = {HypStatus::EmpiricalPass, 0,
                "ratio limits certified on the checked range only"};
  }

  // (H2): growth-clause proxies on the checked range.
  {
    double g_head = 0.0, g_tail = 0.0;
    int w_g = q_lo;
    for (int i = lo; i <= hi; ++i) {
      const double g = m.rate_a(i) / i;
      if (i < q_lo)
        g_head = std::max(g_head, g);
      else if (g > g_tail) {
        g_tail = g;
        w_g = i;
      }
    }
    double worst_sm = 0.0;
    int w_sm = lo;
    for (int i = lo; i < hi; ++i) {
      const double d = i * std::abs(m.rate_a(i + 1) / m.rate_a(i) - 1.0);
      if (d > worst_sm) {
        worst_sm = d;
        w_sm = i;
      }
    }
    if (g_tail > 1.25 * g_head)
      rep.h2 = {HypStatus::Fail, w_g, "a_i/i grows along the range: not O(i)"};
    else if (worst_sm > 8.0)
      rep.h2 = {HypStatus::Fail, w_sm,
                "i |a_{i+1}/a_i - 1| exceeds 8 on the range"};
    else if (m.rate_a(hi) < 1.05 * m.rate_a(lo))
      rep.h2 = {HypStatus::Fail, hi,
                "no attachment-rate growth over the range: lim a_i = +inf "
                "unsupported"};
    else
      rep.h2 = {HypStatus::EmpiricalPass, 0,
                "growth clauses certified on the checked range only"};
  }

  // (H3): strict ratio decrease; the sandwich and kappa/i^nu clauses are
  // existentially satisfiable on any finite strictly decreasing range.
  {
    rep.h3 = {HypStatus::EmpiricalPass, 0,
              "strict ratio decrease certified on the checked range only"};
    for (int i = lo; i < hi; ++i) {
      if (!(r[i + 1] < r[i])) {
        rep.h3 = {HypStatus::Fail, i + 1, "b_i/a_i not strictly decreasing"};
        break;
      }
    }
  }
  return rep;
}

}  // namespace

HypothesisReport check_hypotheses(const RateModel& model, int i_lo, int i_hi) {
  HypothesisReport rep;
  rep.i_lo = std::max(2, i_lo);
  rep.i_hi = i_hi;
  const auto& p = model.params();
  switch (model.family()) {
    case Family::Constant:
      rep.h1 = {HypStatus::AnalyticPass, 0,
                "b_i/a_i = b/a and b_{i+1}/b_i = 1 for all i"};
      rep.h2 = {HypStatus::Fail, 0, "a_i is constant: lim a_i = +inf fails"};
      rep.h3 = {HypStatus::Fail, 0,
                "b_i/a_i equals z_s for all i: strict lower bound fails"};
      break;
    case Family::PowerLaw:
      if (p.beta == p.alpha)
        rep.h1 = {HypStatus::AnalyticPass, 0, "b_i/a_i = B/A for all i"};
      else
        rep.h1 = {HypStatus::Fail, 0,
                  "beta != alpha: b_i/a_i tends to 0 or +inf, no z_s > 0"};
      if (p.alpha > 1.0)
        rep.h2 = {HypStatus::Fail, 0, "a_i = A i^alpha with alpha > 1: not O(i)"};
      else if (p.alpha <= 0.0)
        rep.h2 = {HypStatus::Fail, 0, "alpha <= 0: lim a_i = +inf fails"};
      else
        rep.h2 = {HypStatus::AnalyticPass, 0,
                  "ratio clauses and linear growth bound hold for i^alpha"};
      rep.h3 = {HypStatus::Fail, 0,
                p.beta == p.alpha
                    ? "b_i/a_i equals z_s for all i: strict lower bound fails"
                    : "no saturation limit"};
      break;
    case Family::Metastable:
      rep.h1 = {HypStatus::AnalyticPass, 0,
                "b_i/a_i = z_s exp(q i^-gamma) -> z_s; b_{i+1}/b_i -> 1"};
      if (p.alpha > 1.0)
        rep.h2 = {HypStatus::Fail, 0, "alpha > 1: not O(i)"};
      else if (p.alpha <= 0.0)
        rep.h2 = {HypStatus::Fail, 0, "alpha = 0: lim a_i = +inf fails"};
      else
        rep.h2 = {HypStatus::AnalyticPass, 0,
                  "ratio clauses and linear growth bound hold for i^alpha"};
      if (p.alpha < 1.0)
        rep.h3 = {HypStatus::AnalyticPass, 0,
                  "sandwich holds with G = G' = q, gamma' = gamma; ratio "
                  "decrease has nu = gamma + 1"};
      else
        rep.h3 = {HypStatus::Fail, 0,
                  "alpha = 1: attachment growth not sub-linear"};
      break;
    case Family::Tabulated:
      return check_hypotheses_tabulated(model, i_lo, i_hi);
  }
  return rep;
}

CriticalSize critical_size(const RateModel& model) {
  const Saturation sat = model.saturation();
  if (model.z() <= sat.zs)
    throw NoNucleus("z <= z_s: no finite critical cluster size");
  const auto ratio = [&](long i) {
    return std::exp(model.log_rate_b(static_cast<int>(i)) -
                    model.log_rate_a(static_cast<int>(i)));
  };
  const double z = model.z();
  double r_lo = ratio(2);
  if (r_lo <= z) return {1, true};

  constexpr long kCap = 100'000'000;
  long lo = 2, hi = 4;
  while (true) {
    if (hi > kCap)
      throw NoConvergence("critical size search exceeded the index cap");
    const double r_hi = ratio(hi);
    if (r_hi > r_lo * (1.0 + 1e-12))
      throw NonMonotone("b_i/a_i increased along the critical size search");
    if (r_hi <= z) break;
    lo = hi;
    r_lo = r_hi;
    hi *= 2;
  }
  while (hi - lo > 1) {
    const long mid = lo + (hi - lo) / 2;
    const double r_mid = ratio(mid);
    if (r_mid > r_lo * (1.0 + 1e-12))
      throw NonMonotone("b_i/a_i increased along the critical size search");
    if (r_mid <= z) {
      hi = mid;
    } else {
      lo = mid;
      r_lo = r_mid;
    }
  }
  return {static_cast<int>(lo), false};
}

}  // namespace bd
