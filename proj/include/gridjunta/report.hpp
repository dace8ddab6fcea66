#pragma once

// Measured-vs-bound report rows and the absolute constants used in them.

#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace gridjunta {

namespace constants {

// Junta theorem constant for the discrete cube.
inline const double C0 = 2.0 + std::sqrt(3.0 * std::log(2.0));
// Grid junta theorem constant (= 8 * C0).
inline const double C1 = 16.0 + 8.0 * std::sqrt(3.0 * std::log(2.0));
// Torus Lipschitz constant.
inline const double C2 = 4.0 * C1;
// Grid Lipschitz constant.
inline const double C3 = 2.0 * C1;
// Refined theorem constant, power-of-two side length.
inline const double C4_pow2 = 24.0 * C0;
// Refined theorem constant for general side length, reconstructed from the
// eps/2 split (factor 2) and the 9/2 fibre-cost transfer factor.
inline const double C4_general = 2.0 * 4.5 * 24.0 * C0;

} // namespace constants

struct BoundReport {
    std::string label;
    double measured = 0.0;
    double bound = 0.0;
    std::map<std::string, double> constants;
    std::vector<std::string> flags;

    double ratio() const {
        if (bound > 0.0) return measured / bound;
        return measured == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    }
    bool holds() const { return measured <= bound || (measured == 0.0 && bound == 0.0); }
};

// Deterministic numeric formatting for CSV/JSON artifacts: integers print as
// integers, other values with 12 significant digits.
std::string fmt_value(double v);

std::string csv_escape(const std::string& s);
std::string join_flags(const std::vector<std::string>& flags);

} // namespace gridjunta
