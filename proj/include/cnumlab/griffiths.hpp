#ifndef CNUMLAB_GRIFFITHS_HPP
#define CNUMLAB_GRIFFITHS_HPP

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace cnumlab {

// One finite-size probability measure: point masses on the real line,
// produced by experiments (magnetization sectors, coin sums) or loaded
// from JSON {"n": ..., "points": [...], "masses": [...]}.
struct Measure {
  double n = 0.0;  // size parameter of the sequence entry
  std::vector<double> points;
  std::vector<double> masses;
};

struct MeasureSequence {
  std::vector<Measure> entries;  // kept sorted ascending in n

  // throws unless every entry has matching array lengths, nonnegative
  // masses summing to 1 within 1e-12, and n values positive and distinct
  void validate() const;
  void sort_by_n();

  static MeasureSequence from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
};

// Finite-size rate functions f_n(y) = n^-1 ln integral e^{x y} dmu_n(x)
// on a fixed y grid, plus the n -> infinity value extrapolated with a
// f + b/n fit over the three largest sizes.
struct RateFunctionEstimate {
  std::vector<double> y;
  std::vector<double> sizes;                // n per entry
  std::vector<std::vector<double>> f_n;     // [entry][y index]
  std::vector<double> f;                    // extrapolated limit
  std::vector<bool> convex_per_entry;       // finite-size convexity check
  bool convex = false;                      // all entries convex on the grid
};

RateFunctionEstimate rate_function(const MeasureSequence& seq,
                                   const std::vector<double>& y_grid);

// One-sided derivatives of the limiting rate function at 0:
//   a_plus  = lim (f(+h) - f(0)) / h,   a_minus = lim (f(0) - f(-h)) / h,
// estimated from a decreasing ladder of h values that must be y-grid nodes.
// Convexity makes the a_plus quotients nonincreasing (a_minus mirrored) as
// h shrinks; the spread of the last two rungs is the quoted error bar.
struct OneSidedDerivatives {
  std::vector<double> h;         // decreasing
  std::vector<double> q_plus, q_minus;
  double a_plus = 0.0, a_minus = 0.0;
  double err_plus = 0.0, err_minus = 0.0;
  bool monotone_plus = false, monotone_minus = false;
};

OneSidedDerivatives one_sided_derivatives(const RateFunctionEstimate& est,
                                          const std::vector<double>& h_ladder);

// Mass outside [(a_minus - eps) n, (a_plus + eps) n] per entry, with a
// least-squares fit of ln(tail) against n.  The fitted decay constant is
// c_fit = exp(slope); tails identically zero report c_fit = 0.
struct ConcentrationReport {
  double eps = 0.0;
  std::vector<double> sizes;
  std::vector<double> tail_mass;
  double slope = 0.0;
  double c_fit = 0.0;
  bool decaying = false;
};

ConcentrationReport concentration_check(const MeasureSequence& seq,
                                        double a_minus, double a_plus,
                                        double eps);

// Reference sequences used for calibration.
Measure coin_measure(int n);                       // fair +-1 coin sums
Measure two_point_measure(int n);                  // mass 1/2 at +-n
Measure tilted_coin_measure(int n, double field);  // masses ~ e^{field x}

}  // namespace cnumlab

#endif
