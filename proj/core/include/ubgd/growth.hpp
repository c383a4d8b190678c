#pragma once

#include <functional>
#include <string>
#include <vector>

namespace ubgd {

// Cap on how far a step size may grow above delta0, as a function of the
// gradient norm t. Admissible caps must satisfy t * h(t) -> 0 as t -> 0;
// that is exactly what keeps the step *displacement* delta * ||g|| vanishing
// even though delta itself is unbounded. h(t) = 1/t is the canonical
// inadmissible rate (t * h(t) == 1) and is rejected at construction.
class GrowthFunction {
  public:
    enum class Kind { PowerLaw, Constant, Custom };

    // C * t^(-gamma) with C > 0, gamma in (0,1).
    static GrowthFunction power_law(double C, double gamma);

    // h == c with c > 0.
    static GrowthFunction constant(double c);

    // Arbitrary positive map. The caller must declare a threshold t_star,
    // with t_star >= 1e-12, below which t * h(t) <= 1e-6; the constructor
    // verifies that claim on the grid t = 1e-1 .. 1e-12 and rejects
    // violators.
    static GrowthFunction custom(std::function<double(double)> fn, double t_star,
                                 std::string description = "custom");

    Kind kind() const { return kind_; }
    const std::string& description() const { return description_; }

    // Largest t at which the vanishing-product bound t*h(t) <= 1e-6 is certified.
    double vanishing_threshold() const { return t_star_; }

    double operator()(double t) const;  // pre: t > 0

  private:
    GrowthFunction(Kind kind, std::function<double(double)> fn, double t_star, std::string description)
        : kind_(kind), fn_(std::move(fn)), t_star_(t_star), description_(std::move(description)) {}

    Kind kind_;
    std::function<double(double)> fn_;
    double t_star_;
    std::string description_;
};

double h_eval(const GrowthFunction& h, double t);

// Feasibility clamp: the backtracking step delta(x) is always <= delta0, so
// capping growth at max(h(t), delta0) keeps delta(x) <= delta_hat(x) <= cap
// satisfiable for every gradient norm t while preserving t * cap(t) -> 0.
double h_effective(const GrowthFunction& h, double t, double delta0);

// Evidence for the vanishing product on the standard grid: pairs
// (t, t * h_effective(t, delta0)) for t = 1e-1 .. 1e-12.
std::vector<std::pair<double, double>> vanishing_product_grid(const GrowthFunction& h, double delta0);

// True when every grid point t <= h.vanishing_threshold() satisfies
// t * h(t) <= 1e-6 (with roundoff slack) and at least one such point exists.
bool passes_vanishing_product_test(const GrowthFunction& h);

}  // namespace ubgd
