#include "ubgd/growth.hpp"

#include <cmath>
#include <stdexcept>

namespace ubgd {

namespace {

constexpr double kVanishingBound = 1e-6;
// Roundoff slack: PowerLaw(1, 0.5) sits exactly on the bound at t = 1e-12.
constexpr double kVanishingSlack = 1.0 + 1e-9;
constexpr int kGridMinExp = 1;   // t = 1e-1
constexpr int kGridMaxExp = 12;  // t = 1e-12

double grid_point(int k) { return std::pow(10.0, -k); }

void check_positive_on_grid(const std::function<double(double)>& fn, const std::string& what) {
    for (int k = kGridMinExp; k <= kGridMaxExp; ++k) {
        const double t = grid_point(k);
        const double v = fn(t);
        if (!(v > 0.0) || !std::isfinite(v)) {
            throw std::invalid_argument("GrowthFunction: " + what + " must be finite and > 0 on (0, inf)");
        }
    }
}

}  // namespace

GrowthFunction GrowthFunction::power_law(double C, double gamma) {
    if (!(C > 0.0)) throw std::invalid_argument("GrowthFunction::power_law: C must be > 0");
    if (!(gamma > 0.0 && gamma < 1.0)) throw std::invalid_argument("GrowthFunction::power_law: gamma must be in (0,1)");
    // t * h(t) = C * t^(1-gamma) <= 1e-6  iff  t <= (1e-6/C)^(1/(1-gamma)).
    const double t_star = std::pow(kVanishingBound / C, 1.0 / (1.0 - gamma));
    auto fn = [C, gamma](double t) { return C * std::pow(t, -gamma); };
    return GrowthFunction(Kind::PowerLaw, std::move(fn), t_star,
                          "power_law(C=" + std::to_string(C) + ", gamma=" + std::to_string(gamma) + ")");
}

GrowthFunction GrowthFunction::constant(double c) {
    if (!(c > 0.0)) throw std::invalid_argument("GrowthFunction::constant: c must be > 0");
    const double t_star = kVanishingBound / c;
    auto fn = [c](double) { return c; };
    return GrowthFunction(Kind::Constant, std::move(fn), t_star, "constant(c=" + std::to_string(c) + ")");
}

GrowthFunction GrowthFunction::custom(std::function<double(double)> fn, double t_star, std::string description) {
    if (!fn) throw std::invalid_argument("GrowthFunction::custom: fn must be callable");
    if (!(t_star > 0.0)) throw std::invalid_argument("GrowthFunction::custom: t_star must be > 0");
    if (t_star < grid_point(kGridMaxExp)) {
        throw std::invalid_argument(
            "GrowthFunction::custom: t_star below 1e-12 cannot be verified on the grid");
    }
    check_positive_on_grid(fn, "custom h");
    // Verify the declared vanishing product on every grid point at or below t_star.
    bool witnessed = false;
    for (int k = kGridMinExp; k <= kGridMaxExp; ++k) {
        const double t = grid_point(k);
        if (t > t_star) continue;
        witnessed = true;
        if (t * fn(t) > kVanishingBound * kVanishingSlack) {
            throw std::invalid_argument(
                "GrowthFunction::custom: t*h(t) exceeds 1e-6 at t=" + std::to_string(t) +
                "; the growth rate is inadmissible (t*h(t) must vanish as t -> 0)");
        }
    }
    if (!witnessed) {
        throw std::invalid_argument("GrowthFunction::custom: no grid point witnesses t_star");
    }
    return GrowthFunction(Kind::Custom, std::move(fn), t_star, std::move(description));
}

double GrowthFunction::operator()(double t) const {
    if (!(t > 0.0)) throw std::invalid_argument("GrowthFunction: t must be > 0");
    return fn_(t);
}

double h_eval(const GrowthFunction& h, double t) { return h(t); }

double h_effective(const GrowthFunction& h, double t, double delta0) {
    if (!(delta0 > 0.0)) throw std::invalid_argument("h_effective: delta0 must be > 0");
    return std::max(h(t), delta0);
}

std::vector<std::pair<double, double>> vanishing_product_grid(const GrowthFunction& h, double delta0) {
    std::vector<std::pair<double, double>> grid;
    grid.reserve(kGridMaxExp - kGridMinExp + 1);
    for (int k = kGridMinExp; k <= kGridMaxExp; ++k) {
        const double t = grid_point(k);
        grid.emplace_back(t, t * h_effective(h, t, delta0));
    }
    return grid;
}

bool passes_vanishing_product_test(const GrowthFunction& h) {
    bool witnessed = false;
    for (int k = kGridMinExp; k <= kGridMaxExp; ++k) {
        const double t = grid_point(k);
        if (t > h.vanishing_threshold()) continue;
        witnessed = true;
        if (t * h(t) > kVanishingBound * kVanishingSlack) return false;
    }
    return witnessed;
}

}  // namespace ubgd
