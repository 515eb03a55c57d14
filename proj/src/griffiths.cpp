#include "cnumlab/griffiths.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace cnumlab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double logsumexp_terms(const std::vector<double>& terms) {
  double peak = -kInf;
  for (double t : terms) peak = std::max(peak, t);
  if (!std::isfinite(peak)) return -kInf;
  double acc = 0.0;
  for (double t : terms) acc += std::exp(t - peak);
  return peak + std::log(acc);
}

}  // namespace

void MeasureSequence::validate() const {
  if (entries.empty())
    throw std::invalid_argument("MeasureSequence: no entries");
  double prev_n = 0.0;
  for (const auto& e : entries) {
    if (e.n <= 0.0)
      throw std::invalid_argument("MeasureSequence: entry size n must be > 0");
    if (e.n <= prev_n)
      throw std::invalid_argument("MeasureSequence: sizes must be distinct ascending");
    prev_n = e.n;
    if (e.points.size() != e.masses.size() || e.points.empty())
      throw std::invalid_argument("MeasureSequence: points/masses length mismatch");
    double total = 0.0;
    for (double m : e.masses) {
      if (m < 0.0)
        throw std::invalid_argument("MeasureSequence: negative mass");
      total += m;
    }
    if (std::abs(total - 1.0) > 1e-12)
      throw std::invalid_argument("MeasureSequence: masses must sum to 1");
  }
}

void MeasureSequence::sort_by_n() {
  std::sort(entries.begin(), entries.end(),
            [](const Measure& a, const Measure& b) { return a.n < b.n; });
}

MeasureSequence MeasureSequence::from_json(const nlohmann::json& j) {
  MeasureSequence seq;
  if (!j.contains("entries") || !j["entries"].is_array())
    throw std::invalid_argument("MeasureSequence: missing entries array");
  for (const auto& e : j["entries"]) {
    Measure m;
    m.n = e.at("n").get<double>();
    m.points = e.at("points").get<std::vector<double>>();
    m.masses = e.at("masses").get<std::vector<double>>();
    seq.entries.push_back(std::move(m));
  }
  seq.sort_by_n();
  seq.validate();
  return seq;
}

nlohmann::json MeasureSequence::to_json() const {
  nlohmann::json j;
  j["entries"] = nlohmann::json::array();
  for (const auto& e : entries)
    j["entries"].push_back(
        {{"n", e.n}, {"points", e.points}, {"masses", e.masses}});
  return j;
}

RateFunctionEstimate rate_function(const MeasureSequence& seq,
                                   const std::vector<double>& y_grid) {
  seq.validate();
  if (y_grid.size() < 3)
    throw std::invalid_argument("rate_function: need at least 3 grid points");
  if (!std::is_sorted(y_grid.begin(), y_grid.end()))
    throw std::invalid_argument("rate_function: y grid must be ascending");

  RateFunctionEstimate est;
  est.y = y_grid;
  est.convex = true;
  std::vector<double> terms;
  for (const auto& e : seq.entries) {
    est.sizes.push_back(e.n);
    std::vector<double> f(y_grid.size());
    for (std::size_t yi = 0; yi < y_grid.size(); ++yi) {
      terms.clear();
      for (std::size_t i = 0; i < e.points.size(); ++i) {
        if (e.masses[i] == 0.0) continue;
        terms.push_back(std::log(e.masses[i]) + y_grid[yi] * e.points[i]);
      }
      f[yi] = logsumexp_terms(terms) / e.n;
    }
    // convexity of the finite-size rate function: divided differences of f
    // must be nondecreasing along the grid
    bool convex = true;
    for (std::size_t i = 0; i + 2 < y_grid.size(); ++i) {
      const double s0 = (f[i + 1] - f[i]) / (y_grid[i + 1] - y_grid[i]);
      const double s1 = (f[i + 2] - f[i + 1]) / (y_grid[i + 2] - y_grid[i + 1]);
      if (s1 < s0 - 1e-9 * (1.0 + std::abs(s0))) {
        convex = false;
        break;
      }
    }
    est.convex_per_entry.push_back(convex);
    est.convex = est.convex && convex;
    est.f_n.push_back(std::move(f));
  }

  // n -> infinity: least squares of f_n = f + b/n over the three largest n
  const std::size_t k = std::min<std::size_t>(3, seq.entries.size());
  const std::size_t first = seq.entries.size() - k;
  est.f.resize(y_grid.size());
  if (k == 1) {
    est.f = est.f_n.back();
    return est;
  }
  double s11 = 0.0, s1x = 0.0, sxx = 0.0;
  for (std::size_t e = first; e < seq.entries.size(); ++e) {
    const double x = 1.0 / seq.entries[e].n;
    s11 += 1.0;
    s1x += x;
    sxx += x * x;
  }
  const double det = s11 * sxx - s1x * s1x;
  for (std::size_t yi = 0; yi < y_grid.size(); ++yi) {
    double sy = 0.0, sxy = 0.0;
    for (std::size_t e = first; e < seq.entries.size(); ++e) {
      const double x = 1.0 / seq.entries[e].n;
      sy += est.f_n[e][yi];
      sxy += x * est.f_n[e][yi];
    }
    est.f[yi] = (sxx * sy - s1x * sxy) / det;  // intercept at 1/n = 0
  }
  return est;
}

OneSidedDerivatives one_sided_derivatives(const RateFunctionEstimate& est,
                                          const std::vector<double>& h_ladder) {
  if (h_ladder.size() < 2)
    throw std::invalid_argument("one_sided_derivatives: need at least 2 h values");
  for (std::size_t i = 0; i + 1 < h_ladder.size(); ++i)
    if (h_ladder[i + 1] >= h_ladder[i] || h_ladder[i + 1] <= 0.0)
      throw std::invalid_argument("one_sided_derivatives: h must decrease toward 0");

  auto value_at = [&](double y) {
    for (std::size_t i = 0; i < est.y.size(); ++i)
      if (std::abs(est.y[i] - y) <= 1e-12 * (1.0 + std::abs(y)))
        return est.f[i];
    throw std::invalid_argument(
        "one_sided_derivatives: h ladder values must be grid nodes");
  };

  OneSidedDerivatives out;
  out.h = h_ladder;
  const double f0 = value_at(0.0);
  for (double h : h_ladder) {
    out.q_plus.push_back((value_at(h) - f0) / h);
    out.q_minus.push_back((f0 - value_at(-h)) / h);
  }
  out.a_plus = out.q_plus.back();
  out.a_minus = out.q_minus.back();
  const std::size_t last = h_ladder.size() - 1;
  out.err_plus = std::abs(out.q_plus[last] - out.q_plus[last - 1]);
  out.err_minus = std::abs(out.q_minus[last] - out.q_minus[last - 1]);

  // convexity: right quotients shrink and left quotients grow as h -> 0
  out.monotone_plus = true;
  out.monotone_minus = true;
  for (std::size_t i = 0; i + 1 < h_ladder.size(); ++i) {
    const double tol_p = 1e-9 * (1.0 + std::abs(out.q_plus[i]));
    const double tol_m = 1e-9 * (1.0 + std::abs(out.q_minus[i]));
    if (out.q_plus[i + 1] > out.q_plus[i] + tol_p) out.monotone_plus = false;
    if (out.q_minus[i + 1] < out.q_minus[i] - tol_m) out.monotone_minus = false;
  }
  return out;
}

ConcentrationReport concentration_check(const MeasureSequence& seq,
                                        double a_minus, double a_plus,
                                        double eps) {
  seq.validate();
  if (eps <= 0.0)
    throw std::invalid_argument("concentration_check: eps must be > 0");
  ConcentrationReport rep;
  rep.eps = eps;
  for (const auto& e : seq.entries) {
    const double lo = (a_minus - eps) * e.n;
    const double hi = (a_plus + eps) * e.n;
    double tail = 0.0;
    for (std::size_t i = 0; i < e.points.size(); ++i)
      if (e.points[i] < lo || e.points[i] > hi) tail += e.masses[i];
    rep.sizes.push_back(e.n);
    rep.tail_mass.push_back(tail);
  }

  // least squares ln(tail) = intercept + slope * n over the positive tails
  double s11 = 0.0, s1n = 0.0, snn = 0.0, sy = 0.0, sny = 0.0;
  int positive = 0;
  for (std::size_t i = 0; i < rep.sizes.size(); ++i) {
    if (rep.tail_mass[i] <= 0.0) continue;
    const double n = rep.sizes[i], y = std::log(rep.tail_mass[i]);
    ++positive;
    s11 += 1.0;
    s1n += n;
    snn += n * n;
    sy += y;
    sny += n * y;
  }
  if (positive >= 2) {
    rep.slope = (s11 * sny - s1n * sy) / (s11 * snn - s1n * s1n);
    rep.c_fit = std::exp(rep.slope);
    rep.decaying = rep.slope < 0.0;
  } else {
    // tails (essentially) identically zero decay faster than any exponential
    rep.slope = -kInf;
    rep.c_fit = 0.0;
    rep.decaying = true;
  }
  return rep;
}

Measure coin_measure(int n) {
  if (n < 1) throw std::invalid_argument("coin_measure: n must be >= 1");
  Measure m;
  m.n = n;
  // binomial masses by symmetric recursion, exact in double for n <= ~1000
  std::vector<double> logc(n + 1);
  for (int k = 1; k <= n; ++k)
    logc[k] = logc[k - 1] + std::log(double(n - k + 1)) - std::log(double(k));
  double total = 0.0;
  for (int k = 0; k <= n; ++k) {
    m.points.push_back(2.0 * k - n);
    const double mass = std::exp(logc[k] - n * std::log(2.0));
    m.masses.push_back(mass);
    total += mass;
  }
  for (double& mass : m.masses) mass /= total;
  return m;
}

Measure two_point_measure(int n) {
  if (n < 1) throw std::invalid_argument("two_point_measure: n must be >= 1");
  Measure m;
  m.n = n;
  m.points = {-double(n), double(n)};
  m.masses = {0.5, 0.5};
  return m;
}

Measure tilted_coin_measure(int n, double field) {
  Measure m = coin_measure(n);
  std::vector<double> logmass(m.masses.size());
  for (std::size_t i = 0; i < m.masses.size(); ++i)
    logmass[i] = std::log(m.masses[i]) + field * m.points[i];
  const double lz = logsumexp_terms(logmass);
  for (std::size_t i = 0; i < m.masses.size(); ++i)
    m.masses[i] = std::exp(logmass[i] - lz);
  return m;
}

}  // namespace cnumlab
