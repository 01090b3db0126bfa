#ifndef FRECTIFY_TYPES_HPP
#define FRECTIFY_TYPES_HPP

#include <Eigen/Dense>

#include <stdexcept>
#include <string>
#include <vector>

namespace frectify {

using Vec3 = Eigen::Vector3d;

struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    double width() const noexcept { return hi - lo; }
    bool contains(double x, double slack = 0.0) const noexcept { return x >= lo - slack && x <= hi + slack; }
};

/// Bad input: malformed files, out-of-range parameters, functions that do not
/// meet a precondition. The CLI maps these to exit code 2.
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A numerical precondition failed on otherwise valid input (vanishing
/// curvature, singularity guard, inversion out of range). Exit code 3.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace frectify

#endif // FRECTIFY_TYPES_HPP
